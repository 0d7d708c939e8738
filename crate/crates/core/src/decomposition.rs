//! The result map of a decomposition: Pauli strings and their coefficients.

use std::collections::btree_map;
use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::compose::{compose, MAX_DENSE_QUBITS};
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::pauli::PauliString;

/// Weighted sum of n-letter Pauli strings representing a matrix
/// `A = Σ coeff · P`.
///
/// Terms are kept in canonical ascending string order (I < X < Y < Z,
/// lexicographic), so iteration, serialization and comparison are
/// deterministic. An absent key means a zero coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    n: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl Decomposition {
    /// Empty decomposition over `n >= 1` qubits.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a decomposition needs at least one qubit");
        Decomposition {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// Collect `(string, coefficient)` pairs, accumulating duplicates, then
    /// drop exact zeros.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (PauliString, Complex64)>,
    ) -> Result<Self> {
        let mut d = Decomposition::new(n);
        for (s, c) in terms {
            d.add_term(s, c)?;
        }
        d.prune(0.0);
        Ok(d)
    }

    pub fn qubit_count(&self) -> usize {
        self.n
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `s`, zero when absent.
    pub fn coefficient(&self, s: &PauliString) -> Complex64 {
        self.terms
            .get(s)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn contains(&self, s: &PauliString) -> bool {
        self.terms.contains_key(s)
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> btree_map::Iter<'_, PauliString, Complex64> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &PauliString> {
        self.terms.keys()
    }

    /// Add `coeff` to the stored coefficient of `s` (keeping exact zeros;
    /// call [`prune`](Self::prune) to drop them).
    pub fn add_term(&mut self, s: PauliString, coeff: Complex64) -> Result<()> {
        if s.qubit_count() != self.n {
            return Err(Error::QubitCountMismatch {
                left: self.n,
                right: s.qubit_count(),
            });
        }
        *self
            .terms
            .entry(s)
            .or_insert(Complex64::new(0.0, 0.0)) += coeff;
        Ok(())
    }

    /// Insert or overwrite the coefficient of `s`.
    pub fn set_term(&mut self, s: PauliString, coeff: Complex64) -> Result<()> {
        if s.qubit_count() != self.n {
            return Err(Error::QubitCountMismatch {
                left: self.n,
                right: s.qubit_count(),
            });
        }
        self.terms.insert(s, coeff);
        Ok(())
    }

    /// Drop every term whose coefficient magnitude is at most `tol`.
    /// A tolerance of zero removes exact zeros only.
    pub fn prune(&mut self, tol: f64) {
        self.terms.retain(|_, c| c.norm() > tol);
    }

    /// Largest coefficient magnitude.
    pub fn max_coefficient_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest imaginary part magnitude over all coefficients.
    pub fn max_imag_abs(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.im.abs())
            .fold(0.0, f64::max)
    }

    /// Sum of coefficient magnitudes (the subnormalization of an encoding).
    pub fn coefficient_norm_sum(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// Materialize `Σ coeff · P` as a dense matrix; limited to
    /// [`MAX_DENSE_QUBITS`].
    pub fn reconstruct_dense(&self) -> Result<CMatrix> {
        self.reconstruct_dense_with_limit(MAX_DENSE_QUBITS)
    }

    /// Like [`reconstruct_dense`](Self::reconstruct_dense) with a
    /// caller-chosen qubit ceiling, for callers that knowingly accept the
    /// 16·4^n-byte allocation of a larger dense matrix.
    pub fn reconstruct_dense_with_limit(&self, max_qubits: usize) -> Result<CMatrix> {
        if self.n > max_qubits {
            return Err(Error::DenseTooLarge {
                n: self.n,
                max: max_qubits,
            });
        }
        let dim = 1usize << self.n;
        let mut out = CMatrix::zeros(dim);
        for (s, &coeff) in &self.terms {
            let op = compose(s)?;
            for row in 0..dim {
                let (col, value) = op.entry(row as u64).expect("row in range");
                out.add_to(row, col as usize, coeff * value);
            }
        }
        Ok(out)
    }
}

impl<'a> IntoIterator for &'a Decomposition {
    type Item = (&'a PauliString, &'a Complex64);
    type IntoIter = btree_map::Iter<'a, PauliString, Complex64>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}
