//! Combine decompositions without touching matrix entries.
//!
//! Every operation here works purely on coefficient maps: assembling the
//! corresponding dense matrices and re-decomposing would give the same
//! result (the tests check exactly that), but these run in time proportional
//! to the number of stored terms instead of 4^n. Missing keys read as zero
//! and outputs never store exact zeros; no tolerance-based pruning happens
//! here, so tiny-but-nonzero coefficients survive.

use num_complex::Complex64;

use crate::compose::MAX_OPERATOR_QUBITS;
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::pauli::PauliLetter;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn check_same_size(a: &Decomposition, b: &Decomposition) -> Result<usize> {
    if a.qubit_count() != b.qubit_count() {
        return Err(Error::QubitCountMismatch {
            left: a.qubit_count(),
            right: b.qubit_count(),
        });
    }
    Ok(a.qubit_count())
}

fn check_grown_size(n: usize, extra: usize) -> Result<usize> {
    let grown = n + extra;
    if grown > MAX_OPERATOR_QUBITS {
        return Err(Error::TooManyQubits {
            n: grown,
            max: MAX_OPERATOR_QUBITS,
        });
    }
    Ok(grown)
}

/// Decomposition of the block matrix `[[A, 0], [0, B]]` from those of A and
/// B. The new most significant qubit contributes I with `(α_s + β_s)/2` and
/// Z with `(α_s − β_s)/2` for every string s appearing in either input.
pub fn direct_sum(a: &Decomposition, b: &Decomposition) -> Result<Decomposition> {
    let n = check_same_size(a, b)?;
    let grown = check_grown_size(n, 1)?;
    let mut out = Decomposition::new(grown);
    for s in union_of_keys(a, b) {
        let alpha = a.coefficient(s);
        let beta = b.coefficient(s);
        let half_sum = (alpha + beta) * 0.5;
        let half_diff = (alpha - beta) * 0.5;
        if half_sum != ZERO {
            out.set_term(s.with_leading(PauliLetter::I), half_sum)?;
        }
        if half_diff != ZERO {
            out.set_term(s.with_leading(PauliLetter::Z), half_diff)?;
        }
    }
    Ok(out)
}

/// Decomposition of `diag(A_1, …, A_M)` from the blocks' decompositions.
/// The list is padded to the next power of two with zero blocks and folded
/// by pairwise [`direct_sum`], so the output has `n + log2(padded M)`
/// qubits. A single block is returned unchanged.
pub fn block_diagonal(blocks: &[Decomposition]) -> Result<Decomposition> {
    let first = blocks.first().ok_or(Error::EmptyBlockList)?;
    let n = first.qubit_count();
    for b in blocks {
        check_same_size(first, b)?;
    }
    if blocks.len() == 1 {
        return Ok(first.clone());
    }
    let padded = blocks.len().next_power_of_two();
    check_grown_size(n, padded.trailing_zeros() as usize)?;
    let mut layer: Vec<Decomposition> = blocks.to_vec();
    layer.resize_with(padded, || Decomposition::new(n));
    while layer.len() > 1 {
        layer = layer
            .chunks_exact(2)
            .map(|pair| direct_sum(&pair[0], &pair[1]))
            .collect::<Result<_>>()?;
    }
    Ok(layer.pop().expect("folding a power of two ends at one"))
}

/// Decomposition of `μ·A + B`: termwise `μα_s + β_s` over the union of
/// keys.
pub fn linear_combination(
    mu: Complex64,
    a: &Decomposition,
    b: &Decomposition,
) -> Result<Decomposition> {
    let n = check_same_size(a, b)?;
    let mut out = Decomposition::new(n);
    for s in union_of_keys(a, b) {
        let combined = mu * a.coefficient(s) + b.coefficient(s);
        if combined != ZERO {
            out.set_term(s.clone(), combined)?;
        }
    }
    Ok(out)
}

/// Decomposition of the matrix product `A·B`: every key pair multiplies via
/// the string product with its ±1/±i phase folded into the coefficient, and
/// like terms accumulate. Costs one map update per term pair.
pub fn product(a: &Decomposition, b: &Decomposition) -> Result<Decomposition> {
    let n = check_same_size(a, b)?;
    let mut out = Decomposition::new(n);
    for (p, &alpha) in a.iter() {
        for (q, &beta) in b.iter() {
            let (phase, s) = p.string_product(q)?;
            out.add_term(s, phase.apply(alpha * beta))?;
        }
    }
    out.prune(0.0);
    Ok(out)
}

/// Decomposition of the Hermitian embedding `[[0, A†], [A, 0]]` from that
/// of A. The new most significant qubit contributes X with `Re(α_s)` and Y
/// with `Im(α_s)`, so the output's coefficients are exactly real — this is
/// the standard preparation step before block-encoding a non-Hermitian
/// matrix.
pub fn hermitian_augment(a: &Decomposition) -> Result<Decomposition> {
    let grown = check_grown_size(a.qubit_count(), 1)?;
    let mut out = Decomposition::new(grown);
    for (s, &alpha) in a.iter() {
        if alpha.re != 0.0 {
            out.set_term(s.with_leading(PauliLetter::X), Complex64::new(alpha.re, 0.0))?;
        }
        if alpha.im != 0.0 {
            out.set_term(s.with_leading(PauliLetter::Y), Complex64::new(alpha.im, 0.0))?;
        }
    }
    Ok(out)
}

/// Keys of either input, deduplicated, in canonical order.
fn union_of_keys<'a>(
    a: &'a Decomposition,
    b: &'a Decomposition,
) -> impl Iterator<Item = &'a crate::pauli::PauliString> {
    let mut keys: Vec<_> = a.keys().chain(b.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
}
