//! Block-encoding circuits built from a Pauli decomposition.
//!
//! A decomposition `A = Σ α_i P_i` with real α turns into a
//! linear-combination-of-unitaries circuit on `m = ⌈log2(terms)⌉` ancilla
//! qubits: prepare the ancillas in the state whose amplitudes are
//! `√(|α_i|/λ)` with `λ = Σ|α_i|`, apply each `sign(α_i)·P_i` to the data
//! register controlled on the ancilla pattern `i`, and undo the
//! preparation. Projecting the ancillas back onto zero leaves `A/λ` in the
//! top-left block of the overall unitary — the circuit is a block encoding
//! of A with subnormalization λ.
//!
//! Everything here is verified by dense simulation: [`simulate`] multiplies
//! the gates out structurally (never forming a 4^(m+n) controlled matrix)
//! and [`verify_block_encoding`] measures how far the block is from A and
//! how far the product is from unitary.

use num_complex::Complex64;

use crate::compose::compose;
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::pauli::PauliString;
use crate::source::MatrixSource;

/// Dense simulation ceiling on data + ancilla qubits.
pub const MAX_SIMULATION_QUBITS: usize = 12;

/// Largest imaginary part tolerated (and discarded) when a decomposition is
/// treated as real. Beyond this the input is genuinely complex and must be
/// Hermitian-augmented first.
pub const REAL_COEFF_TOLERANCE: f64 = 1e-12;

/// One gate of a block-encoding circuit.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    /// Ancilla state preparation: a 2^m × 2^m unitary whose first column is
    /// the normalized amplitude vector.
    Prep(CMatrix),
    /// `sign·pauli` on the data register, applied when the ancillas are in
    /// the computational state `pattern`.
    ControlledPauli {
        pattern: u64,
        pauli: PauliString,
        sign: i8,
    },
    /// Inverse of the preparation; simulates as the adjoint of the circuit's
    /// `Prep` matrix.
    Unprep,
}

/// An ordered gate list over a data register and an ancilla register.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_data: usize,
    n_ancilla: usize,
    lambda: f64,
    gates: Vec<Gate>,
}

impl Circuit {
    /// Assemble a circuit from parts. Gate-level consistency (matrix sizes,
    /// pattern ranges, string lengths) is checked by [`simulate`], so
    /// that externally loaded circuits fail with a useful error at use time.
    pub fn from_parts(
        n_data: usize,
        n_ancilla: usize,
        lambda: f64,
        gates: Vec<Gate>,
    ) -> Result<Self> {
        if n_data == 0 {
            return Err(Error::ZeroQubitMatrix);
        }
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::MalformedCircuit(format!(
                "subnormalization must be a non-negative finite number, got {lambda}"
            )));
        }
        Ok(Circuit {
            n_data,
            n_ancilla,
            lambda,
            gates,
        })
    }

    pub fn n_data(&self) -> usize {
        self.n_data
    }

    pub fn n_ancilla(&self) -> usize {
        self.n_ancilla
    }

    /// Subnormalization λ: the verified block is `A/λ`.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn controlled_gate_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::ControlledPauli { .. }))
            .count()
    }
}

/// Verification measurements of one circuit against one matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockEncodingReport {
    pub n_data: usize,
    pub n_ancilla: usize,
    /// Subnormalization λ = Σ|α_i|.
    pub lambda: f64,
    /// Spectral norm of `A − λ·(top-left block of the simulated unitary)`.
    pub residual: f64,
    /// Spectral norm of `U†U − I` for the simulated product U.
    pub unitarity_defect: f64,
    pub prep_gates: usize,
    pub controlled_gates: usize,
}

/// Build the block-encoding circuit of a decomposition with real
/// coefficients.
///
/// Terms are assigned control patterns in canonical key order, so the
/// construction is deterministic. Imaginary parts up to
/// [`REAL_COEFF_TOLERANCE`] are discarded as numerical dust; anything larger
/// is rejected — apply the Hermitian embedding first to encode a genuinely
/// complex decomposition.
pub fn build_lcu_circuit(dec: &Decomposition) -> Result<Circuit> {
    if dec.is_empty() {
        return Err(Error::EmptyDecomposition);
    }
    let max_imag = dec.max_imag_abs();
    if max_imag > REAL_COEFF_TOLERANCE {
        return Err(Error::NonRealCoefficients { max_imag });
    }
    let terms = dec.term_count();
    let n_ancilla = terms.next_power_of_two().trailing_zeros() as usize;
    let lambda: f64 = dec.iter().map(|(_, a)| a.re.abs()).sum();

    let mut amplitudes = vec![0.0f64; 1 << n_ancilla];
    for (i, (_, alpha)) in dec.iter().enumerate() {
        amplitudes[i] = alpha.re.abs().sqrt();
    }
    let mut gates = Vec::with_capacity(terms + 2);
    gates.push(Gate::Prep(prep_unitary(&amplitudes)?));
    for (i, (s, alpha)) in dec.iter().enumerate() {
        gates.push(Gate::ControlledPauli {
            pattern: i as u64,
            pauli: s.clone(),
            sign: if alpha.re < 0.0 { -1 } else { 1 },
        });
    }
    gates.push(Gate::Unprep);
    Circuit::from_parts(dec.qubit_count(), n_ancilla, lambda, gates)
}

/// Real orthogonal matrix whose first column is `amplitudes` normalized to
/// unit length. Built as the Householder reflection exchanging the first
/// basis vector with the target column (identity when they already agree).
///
/// `amplitudes` must have power-of-two length with non-negative finite
/// entries, at least one of them positive.
pub fn prep_unitary(amplitudes: &[f64]) -> Result<CMatrix> {
    let dim = amplitudes.len();
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::BadAmplitudeLength(dim));
    }
    if amplitudes.iter().any(|&a| !a.is_finite() || a < 0.0) {
        return Err(Error::InvalidAmplitude);
    }
    let norm = amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroAmplitudes);
    }
    let v: Vec<f64> = amplitudes.iter().map(|a| a / norm).collect();

    // Householder H = I − w wᵀ/h with w = e0 − v. Using
    // |w|²/2 = (1 − v0) = Σ_{i>0} v_i² / (1 + v0) avoids cancellation for
    // v close to e0 and makes column 0 equal v exactly: w0 = h by
    // construction, so H[i][0] = δ_{i0} − w_i.
    let rest: f64 = v[1..].iter().map(|x| x * x).sum();
    if rest == 0.0 {
        return Ok(CMatrix::identity(dim));
    }
    let h = rest / (1.0 + v[0]);
    let mut w = vec![0.0f64; dim];
    w[0] = h;
    for i in 1..dim {
        w[i] = -v[i];
    }
    Ok(CMatrix::from_fn(dim, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        Complex64::new(delta - w[i] * w[j] / h, 0.0)
    }))
}

/// Multiply the circuit's gates into one dense `2^(m+n) × 2^(m+n)` unitary,
/// with the ancilla register as the more significant tensor factor (basis
/// index `a·2^n + d`).
///
/// Gates are applied structurally: a preparation mixes 2^m ancilla
/// components per column, and a controlled Pauli permutes and rescales the
/// 2^n rows of a single ancilla block, so no full-size gate matrix is ever
/// formed.
pub fn simulate(circuit: &Circuit) -> Result<CMatrix> {
    let n = circuit.n_data();
    let m = circuit.n_ancilla();
    let total = n + m;
    if total > MAX_SIMULATION_QUBITS {
        return Err(Error::SimulationTooLarge {
            total,
            max: MAX_SIMULATION_QUBITS,
        });
    }
    let data_dim = 1usize << n;
    let anc_dim = 1usize << m;
    let dim = 1usize << total;
    let mut u = CMatrix::identity(dim);
    let mut last_prep: Option<&CMatrix> = None;

    for (index, gate) in circuit.gates().iter().enumerate() {
        match gate {
            Gate::Prep(p) => {
                if p.dim() != anc_dim {
                    return Err(Error::MalformedCircuit(format!(
                        "gate {index}: preparation is {}×{} but the circuit has {m} ancilla qubits",
                        p.dim(),
                        p.dim()
                    )));
                }
                apply_ancilla_mixing(&mut u, p, data_dim, false);
                last_prep = Some(p);
            }
            Gate::Unprep => {
                let p = last_prep.ok_or_else(|| {
                    Error::MalformedCircuit(format!(
                        "gate {index}: un-preparation with no preceding preparation"
                    ))
                })?;
                apply_ancilla_mixing(&mut u, p, data_dim, true);
            }
            Gate::ControlledPauli {
                pattern,
                pauli,
                sign,
            } => {
                if *pattern >= anc_dim as u64 {
                    return Err(Error::MalformedCircuit(format!(
                        "gate {index}: control pattern {pattern} needs more than {m} ancilla qubits"
                    )));
                }
                if pauli.qubit_count() != n {
                    return Err(Error::MalformedCircuit(format!(
                        "gate {index}: Pauli string {pauli} does not act on {n} data qubits"
                    )));
                }
                if *sign != 1 && *sign != -1 {
                    return Err(Error::MalformedCircuit(format!(
                        "gate {index}: sign must be ±1, got {sign}"
                    )));
                }
                apply_controlled_pauli(&mut u, *pattern as usize, pauli, *sign, data_dim)?;
            }
        }
    }
    Ok(u)
}

/// Left-multiply `u` by `P ⊗ I` (or `P† ⊗ I` when `adjoint`): for each data
/// index and column, mix the ancilla components through P.
fn apply_ancilla_mixing(u: &mut CMatrix, p: &CMatrix, data_dim: usize, adjoint: bool) {
    let anc_dim = p.dim();
    let dim = u.dim();
    let mut column = vec![Complex64::new(0.0, 0.0); anc_dim];
    for col in 0..dim {
        for d in 0..data_dim {
            for (a, slot) in column.iter_mut().enumerate() {
                *slot = u.get(a * data_dim + d, col);
            }
            for a_out in 0..anc_dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for (a_in, &value) in column.iter().enumerate() {
                    let weight = if adjoint {
                        p.get(a_in, a_out).conj()
                    } else {
                        p.get(a_out, a_in)
                    };
                    acc += weight * value;
                }
                u.set(a_out * data_dim + d, col, acc);
            }
        }
    }
}

/// Left-multiply `u` by the block-diagonal gate that applies `sign·pauli`
/// on the ancilla block `pattern` and the identity elsewhere. The Pauli has
/// one entry per row, so the block's rows are permuted and rescaled.
fn apply_controlled_pauli(
    u: &mut CMatrix,
    pattern: usize,
    pauli: &PauliString,
    sign: i8,
    data_dim: usize,
) -> Result<()> {
    let op = compose(pauli)?;
    let dim = u.dim();
    let base = pattern * data_dim;
    let mut block = vec![Complex64::new(0.0, 0.0); data_dim * dim];
    for d in 0..data_dim {
        for col in 0..dim {
            block[d * dim + col] = u.get(base + d, col);
        }
    }
    for d in 0..data_dim {
        let (source, mut value) = op
            .entry(d as u64)
            .expect("row within the operator dimension");
        if sign < 0 {
            value = -value;
        }
        for col in 0..dim {
            u.set(base + d, col, value * block[source as usize * dim + col]);
        }
    }
    Ok(())
}

/// Simulate the circuit and measure it against `src`: the residual
/// `‖A − λ·block‖₂` (block = top-left `2^n` corner, i.e. ancillas in and
/// out of state zero) and the unitarity defect `‖U†U − I‖₂`. Norms are
/// computed by power iteration; a block that matches exactly reports a
/// residual of exactly zero.
pub fn verify_block_encoding<S: MatrixSource + ?Sized>(
    circuit: &Circuit,
    src: &S,
) -> Result<BlockEncodingReport> {
    if src.qubit_count() != circuit.n_data() {
        return Err(Error::QubitCountMismatch {
            left: circuit.n_data(),
            right: src.qubit_count(),
        });
    }
    let u = simulate(circuit)?;
    let data_dim = 1usize << circuit.n_data();
    let lambda = circuit.lambda();
    let difference = CMatrix::from_fn(data_dim, |r, c| {
        src.entry(r as u64, c as u64) - lambda * u.get(r, c)
    });
    let residual = difference.spectral_norm();
    let unitarity_defect = unitarity_defect(&u);
    Ok(BlockEncodingReport {
        n_data: circuit.n_data(),
        n_ancilla: circuit.n_ancilla(),
        lambda,
        residual,
        unitarity_defect,
        prep_gates: circuit
            .gates()
            .iter()
            .filter(|g| matches!(g, Gate::Prep(_) | Gate::Unprep))
            .count(),
        controlled_gates: circuit.controlled_gate_count(),
    })
}

/// Spectral norm of `U†U − I` without materializing the product: power
/// iteration with the defect applied as two matrix-vector products and a
/// subtraction. The defect is Hermitian, so iterating it twice per step
/// converges to the squared norm.
fn unitarity_defect(u: &CMatrix) -> f64 {
    let dim = u.dim();
    let defect_apply = |v: &[Complex64]| -> Vec<Complex64> {
        let mut w = u.adjoint_matvec(&u.matvec(v));
        for (wi, vi) in w.iter_mut().zip(v) {
            *wi -= vi;
        }
        w
    };
    let mut v: Vec<Complex64> = (0..dim)
        .map(|i| Complex64::new(1.0, i as f64 / (dim as f64 + 1.0)))
        .collect();
    normalize(&mut v);
    let mut estimate = 0.0f64;
    for _ in 0..160 {
        let mut w = defect_apply(&defect_apply(&v));
        let next = l2_norm(&w).sqrt();
        if w.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
            return 0.0;
        }
        normalize(&mut w);
        v = w;
        if (next - estimate).abs() <= 1e-15 * next.max(1.0) {
            return next;
        }
        estimate = next;
    }
    estimate
}

fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let norm = l2_norm(v);
    if norm > 0.0 {
        for z in v.iter_mut() {
            *z /= norm;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hermitian_augment;
    use crate::decompose::decompose_general;
    use crate::source::DenseSource;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn single(term: &str, coeff: Complex64) -> Decomposition {
        let s: PauliString = term.parse().unwrap();
        let n = s.qubit_count();
        let mut d = Decomposition::new(n);
        d.set_term(s, coeff).unwrap();
        d
    }

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> DenseSource {
        let dim = 1usize << n;
        let mut a = CMatrix::zeros(dim);
        for r in 0..dim {
            for col in 0..=r {
                let v = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                if r == col {
                    a.set(r, col, c(v.re, 0.0));
                } else {
                    a.set(r, col, v);
                    a.set(col, r, v.conj());
                }
            }
        }
        DenseSource::from_vec(n, a.data().to_vec()).unwrap()
    }

    #[test]
    fn prep_identity_for_basis_vector() {
        let p = prep_unitary(&[1.0, 0.0]).unwrap();
        assert_eq!(p, CMatrix::identity(2));
    }

    #[test]
    fn prep_equal_superposition() {
        let p = prep_unitary(&[1.0, 1.0]).unwrap();
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        assert!((p.get(0, 0).re - inv_sqrt2).abs() <= 1e-15);
        assert!((p.get(1, 0).re - inv_sqrt2).abs() <= 1e-15);
        assert!(p.adjoint().mul(&p).max_abs_diff(&CMatrix::identity(2)) <= 1e-15);
    }

    #[test]
    fn prep_random_vector_is_unitary_with_correct_column() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xb10c_0001);
        let amplitudes: Vec<f64> = (0..8).map(|_| rng.random_range(0.0..1.0)).collect();
        let norm = amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt();
        let p = prep_unitary(&amplitudes).unwrap();
        for (i, a) in amplitudes.iter().enumerate() {
            assert!((p.get(i, 0).re - a / norm).abs() <= 1e-14, "column 0 row {i}");
            assert_eq!(p.get(i, 0).im, 0.0);
        }
        assert!(p.adjoint().mul(&p).max_abs_diff(&CMatrix::identity(8)) <= 1e-12);
    }

    #[test]
    fn prep_rejects_bad_inputs() {
        assert_eq!(
            prep_unitary(&[1.0, 1.0, 1.0]).unwrap_err(),
            Error::BadAmplitudeLength(3)
        );
        assert_eq!(prep_unitary(&[]).unwrap_err(), Error::BadAmplitudeLength(0));
        assert_eq!(
            prep_unitary(&[1.0, -0.5]).unwrap_err(),
            Error::InvalidAmplitude
        );
        assert_eq!(
            prep_unitary(&[0.0, 0.0, 0.0, 0.0]).unwrap_err(),
            Error::ZeroAmplitudes
        );
    }

    #[test]
    fn build_single_term() {
        let circuit = build_lcu_circuit(&single("X", c(1.0, 0.0))).unwrap();
        assert_eq!(circuit.n_ancilla(), 0);
        assert_eq!(circuit.lambda(), 1.0);
        assert_eq!(circuit.gates().len(), 3);
        assert!(matches!(
            &circuit.gates()[1],
            Gate::ControlledPauli { pattern: 0, sign: 1, .. }
        ));
        // The 2×2 unitary is exactly X.
        let u = simulate(&circuit).unwrap();
        assert_eq!(u.get(0, 1), c(1.0, 0.0));
        assert_eq!(u.get(1, 0), c(1.0, 0.0));
        assert_eq!(u.get(0, 0), c(0.0, 0.0));
    }

    #[test]
    fn build_two_terms() {
        let mut dec = Decomposition::new(1);
        dec.set_term("X".parse().unwrap(), c(0.5, 0.0)).unwrap();
        dec.set_term("Z".parse().unwrap(), c(0.5, 0.0)).unwrap();
        let circuit = build_lcu_circuit(&dec).unwrap();
        assert_eq!(circuit.n_ancilla(), 1);
        assert_eq!(circuit.lambda(), 1.0);
        match &circuit.gates()[0] {
            Gate::Prep(p) => {
                let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
                assert!((p.get(0, 0).re - inv_sqrt2).abs() <= 1e-15);
                assert!((p.get(1, 0).re - inv_sqrt2).abs() <= 1e-15);
            }
            other => panic!("expected preparation first, found {other:?}"),
        }
        // Canonical key order: X before Z.
        match (&circuit.gates()[1], &circuit.gates()[2]) {
            (
                Gate::ControlledPauli { pattern: 0, pauli: p0, .. },
                Gate::ControlledPauli { pattern: 1, pauli: p1, .. },
            ) => {
                assert_eq!(p0.to_string(), "X");
                assert_eq!(p1.to_string(), "Z");
            }
            other => panic!("unexpected gate pair {other:?}"),
        }
    }

    #[test]
    fn build_rejects_bad_decompositions() {
        assert_eq!(
            build_lcu_circuit(&Decomposition::new(2)).unwrap_err(),
            Error::EmptyDecomposition
        );
        let err = build_lcu_circuit(&single("Y", c(0.0, 1.0))).unwrap_err();
        assert!(matches!(err, Error::NonRealCoefficients { .. }));
        assert!(err.to_string().contains("hermitian_augment"), "{err}");
    }

    #[test]
    fn simulate_empty_circuit_is_identity() {
        let circuit = Circuit::from_parts(1, 0, 1.0, Vec::new()).unwrap();
        assert_eq!(simulate(&circuit).unwrap(), CMatrix::identity(2));
    }

    #[test]
    fn simulate_controlled_x_is_cnot() {
        let gate = Gate::ControlledPauli {
            pattern: 1,
            pauli: "X".parse().unwrap(),
            sign: 1,
        };
        let circuit = Circuit::from_parts(1, 1, 1.0, vec![gate]).unwrap();
        let u = simulate(&circuit).unwrap();
        let cnot = CMatrix::from_vec(
            4,
            vec![
                c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0),
                c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0),
                c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0),
                c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0),
            ],
        );
        assert_eq!(u, cnot);
    }

    #[test]
    fn simulate_prep_unprep_cancels() {
        let p = prep_unitary(&[0.2, 0.3, 0.1, 0.9]).unwrap();
        let circuit =
            Circuit::from_parts(1, 2, 1.0, vec![Gate::Prep(p), Gate::Unprep]).unwrap();
        let u = simulate(&circuit).unwrap();
        assert!(u.max_abs_diff(&CMatrix::identity(8)) <= 1e-12);
    }

    #[test]
    fn simulate_validates_gates() {
        let bad = Circuit::from_parts(1, 1, 1.0, vec![Gate::Unprep]).unwrap();
        assert!(matches!(
            simulate(&bad).unwrap_err(),
            Error::MalformedCircuit(_)
        ));
        let bad = Circuit::from_parts(
            1,
            1,
            1.0,
            vec![Gate::ControlledPauli {
                pattern: 2,
                pauli: "X".parse().unwrap(),
                sign: 1,
            }],
        )
        .unwrap();
        assert!(matches!(
            simulate(&bad).unwrap_err(),
            Error::MalformedCircuit(_)
        ));
        let bad = Circuit::from_parts(
            2,
            0,
            1.0,
            vec![Gate::ControlledPauli {
                pattern: 0,
                pauli: "X".parse().unwrap(),
                sign: 1,
            }],
        )
        .unwrap();
        assert!(matches!(
            simulate(&bad).unwrap_err(),
            Error::MalformedCircuit(_)
        ));
        let too_big = Circuit::from_parts(8, 5, 1.0, Vec::new()).unwrap();
        assert_eq!(
            simulate(&too_big).unwrap_err(),
            Error::SimulationTooLarge { total: 13, max: 12 }
        );
    }

    #[test]
    fn verify_two_term_sum() {
        let mut dec = Decomposition::new(1);
        dec.set_term("X".parse().unwrap(), c(0.5, 0.0)).unwrap();
        dec.set_term("Z".parse().unwrap(), c(0.5, 0.0)).unwrap();
        let circuit = build_lcu_circuit(&dec).unwrap();
        // (X + Z)/2 densely.
        let a = DenseSource::from_vec(
            1,
            vec![c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(-0.5, 0.0)],
        )
        .unwrap();
        let report = verify_block_encoding(&circuit, &a).unwrap();
        assert_eq!(report.lambda, 1.0);
        assert!(report.residual <= 1e-10, "residual {}", report.residual);
        assert!(
            report.unitarity_defect <= 1e-12,
            "defect {}",
            report.unitarity_defect
        );
    }

    #[test]
    fn verify_bare_pauli_is_exact() {
        let dec = single("XZY", c(1.0, 0.0));
        let circuit = build_lcu_circuit(&dec).unwrap();
        let dense = dec.reconstruct_dense().unwrap();
        let src = DenseSource::from_vec(3, dense.data().to_vec()).unwrap();
        let report = verify_block_encoding(&circuit, &src).unwrap();
        assert_eq!(report.residual, 0.0, "bare Pauli must be exact");
        assert_eq!(report.unitarity_defect, 0.0);
    }

    #[test]
    fn verify_cnot_pipeline() {
        let cnot = DenseSource::from_vec(
            2,
            vec![
                c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0),
                c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0),
                c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0),
                c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0),
            ],
        )
        .unwrap();
        let dec = decompose_general(&cnot).unwrap();
        let circuit = build_lcu_circuit(&dec).unwrap();
        assert_eq!(circuit.n_ancilla(), 2);
        assert_eq!(circuit.lambda(), 2.0);
        let report = verify_block_encoding(&circuit, &cnot).unwrap();
        assert!(report.residual <= 1e-10, "residual {}", report.residual);
        assert!(report.unitarity_defect <= 1e-12);
        assert_eq!(report.controlled_gates, 4);
    }

    #[test]
    fn verify_random_hermitian_pipeline() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xb10c_0002);
        for n in 1..=3usize {
            let src = random_hermitian(n, &mut rng);
            let dec = decompose_general(&src).unwrap();
            let circuit = build_lcu_circuit(&dec).unwrap();
            let report = verify_block_encoding(&circuit, &src).unwrap();
            assert!(
                report.residual <= 1e-10,
                "n={n} residual {}",
                report.residual
            );
            assert!(
                report.unitarity_defect <= 1e-12,
                "n={n} defect {}",
                report.unitarity_defect
            );
        }
    }

    #[test]
    fn verify_augmented_non_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xb10c_0003);
        let dim = 2usize;
        let data: Vec<Complex64> = (0..dim * dim)
            .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let src = DenseSource::from_vec(1, data.clone()).unwrap();
        let dec = decompose_general(&src).unwrap();
        assert!(build_lcu_circuit(&dec).is_err(), "complex input must be rejected");

        let augmented = hermitian_augment(&dec).unwrap();
        let circuit = build_lcu_circuit(&augmented).unwrap();
        // Assemble [[0, A†], [A, 0]] directly.
        let mut embedded = CMatrix::zeros(2 * dim);
        for r in 0..dim {
            for col in 0..dim {
                embedded.set(r, dim + col, data[col * dim + r].conj());
                embedded.set(dim + r, col, data[r * dim + col]);
            }
        }
        let target = DenseSource::from_vec(2, embedded.data().to_vec()).unwrap();
        let report = verify_block_encoding(&circuit, &target).unwrap();
        assert!(report.residual <= 1e-10, "residual {}", report.residual);
        assert!(report.unitarity_defect <= 1e-12);
    }
}
