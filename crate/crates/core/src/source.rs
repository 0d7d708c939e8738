//! Read-only matrix entry oracles and the structure classes that select a
//! pruned walk.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Structure class a matrix is claimed (or detected) to have.
///
/// `Band(s)` means all nonzero entries satisfy `|row - col| <= s`;
/// `Tridiagonal` is exactly `Band(1)` and the two behave identically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureClass {
    General,
    Diagonal,
    AntiDiagonal,
    Tridiagonal,
    Band(u64),
}

impl StructureClass {
    /// Band half-width for the banded classes, `None` otherwise.
    pub fn band_width(self) -> Option<u64> {
        match self {
            StructureClass::Tridiagonal => Some(1),
            StructureClass::Band(s) => Some(s),
            _ => None,
        }
    }

    /// Check that the class makes sense for an n-qubit matrix.
    pub fn validate(self, n: usize) -> Result<()> {
        if let StructureClass::Band(s) = self {
            if s == 0 || (n < 64 && s >= 1u64 << n) {
                return Err(Error::InvalidBandWidth { s, n });
            }
        }
        Ok(())
    }

    /// True when an entry at `(row, col)` of a 2^n matrix is allowed to be
    /// nonzero under this class.
    pub fn allows_entry(self, row: u64, col: u64, n: usize) -> bool {
        let dim = 1u64 << n;
        match self {
            StructureClass::General => true,
            StructureClass::Diagonal => row == col,
            StructureClass::AntiDiagonal => row + col == dim - 1,
            StructureClass::Tridiagonal => row.abs_diff(col) <= 1,
            StructureClass::Band(s) => row.abs_diff(col) <= s,
        }
    }
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureClass::General => write!(f, "general"),
            StructureClass::Diagonal => write!(f, "diagonal"),
            StructureClass::AntiDiagonal => write!(f, "antidiagonal"),
            StructureClass::Tridiagonal => write!(f, "tridiagonal"),
            StructureClass::Band(s) => write!(f, "band({s})"),
        }
    }
}

/// Read-only oracle for the entries of a 2^n × 2^n complex matrix.
///
/// Implementations must be pure — repeated calls with the same indices return
/// the same value — and safely callable from multiple threads (`Sync`).
/// Callers only pass indices below the dimension.
pub trait MatrixSource: Sync {
    fn qubit_count(&self) -> usize;

    /// Entry at `(row, col)`.
    fn entry(&self, row: u64, col: u64) -> Complex64;

    /// Structure the source claims; picks the pruned walk under `auto`
    /// selection. Claims are trusted, not checked (see [`matches_structure`]).
    fn structure_hint(&self) -> StructureClass {
        StructureClass::General
    }

    fn dimension(&self) -> u64 {
        1u64 << self.qubit_count()
    }
}

impl<S: MatrixSource + ?Sized> MatrixSource for &S {
    fn qubit_count(&self) -> usize {
        (**self).qubit_count()
    }

    fn entry(&self, row: u64, col: u64) -> Complex64 {
        (**self).entry(row, col)
    }

    fn structure_hint(&self) -> StructureClass {
        (**self).structure_hint()
    }
}

/// Matrix stored as a dense row-major array.
#[derive(Debug, Clone)]
pub struct DenseSource {
    n: usize,
    data: Vec<Complex64>,
    hint: StructureClass,
}

impl DenseSource {
    /// `data` is row-major of length 4^n.
    pub fn from_vec(n: usize, data: Vec<Complex64>) -> Result<Self> {
        let expected = 1usize
            .checked_shl(2 * n as u32)
            .ok_or(Error::TooManyQubits { n, max: 31 })?;
        if data.len() != expected {
            return Err(Error::DimensionMismatch {
                n,
                expected,
                got: data.len(),
            });
        }
        Ok(DenseSource {
            n,
            data,
            hint: StructureClass::General,
        })
    }

    pub fn with_hint(mut self, hint: StructureClass) -> Result<Self> {
        hint.validate(self.n)?;
        self.hint = hint;
        Ok(self)
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }
}

impl MatrixSource for DenseSource {
    fn qubit_count(&self) -> usize {
        self.n
    }

    #[inline]
    fn entry(&self, row: u64, col: u64) -> Complex64 {
        self.data[(row << self.n | col) as usize]
    }

    fn structure_hint(&self) -> StructureClass {
        self.hint
    }
}

/// Matrix defined by a pure function of the indices; nothing is stored, so
/// arbitrarily large matrices can be decomposed without materializing them.
pub struct FnSource<F: Fn(u64, u64) -> Complex64 + Sync> {
    n: usize,
    f: F,
    hint: StructureClass,
}

impl<F: Fn(u64, u64) -> Complex64 + Sync> FnSource<F> {
    pub fn new(n: usize, hint: StructureClass, f: F) -> Result<Self> {
        hint.validate(n)?;
        Ok(FnSource { n, f, hint })
    }
}

impl<F: Fn(u64, u64) -> Complex64 + Sync> MatrixSource for FnSource<F> {
    fn qubit_count(&self) -> usize {
        self.n
    }

    #[inline]
    fn entry(&self, row: u64, col: u64) -> Complex64 {
        (self.f)(row, col)
    }

    fn structure_hint(&self) -> StructureClass {
        self.hint
    }
}

/// Diagonal matrix stored as its diagonal.
#[derive(Debug, Clone)]
pub struct DiagonalSource {
    n: usize,
    diag: Vec<Complex64>,
}

impl DiagonalSource {
    pub fn from_diagonal(n: usize, diag: Vec<Complex64>) -> Result<Self> {
        let expected = 1usize << n;
        if diag.len() != expected {
            return Err(Error::DimensionMismatch {
                n,
                expected,
                got: diag.len(),
            });
        }
        Ok(DiagonalSource { n, diag })
    }
}

impl MatrixSource for DiagonalSource {
    fn qubit_count(&self) -> usize {
        self.n
    }

    #[inline]
    fn entry(&self, row: u64, col: u64) -> Complex64 {
        if row == col {
            self.diag[row as usize]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    fn structure_hint(&self) -> StructureClass {
        StructureClass::Diagonal
    }
}

/// Banded matrix stored by diagonals: `diagonals[d]` holds the entries with
/// `col - row = d - s`, indexed by `min(row, col)`.
#[derive(Debug, Clone)]
pub struct BandSource {
    n: usize,
    s: u64,
    diagonals: Vec<Vec<Complex64>>,
}

impl BandSource {
    /// Sample the in-band entries of `f` into diagonal storage.
    pub fn from_fn(n: usize, s: u64, f: impl Fn(u64, u64) -> Complex64) -> Result<Self> {
        StructureClass::Band(s).validate(n)?;
        let dim = 1u64 << n;
        let mut diagonals = Vec::with_capacity(2 * s as usize + 1);
        for d in 0..=2 * s {
            let offset = d as i64 - s as i64;
            let len = dim - offset.unsigned_abs();
            let mut diag = Vec::with_capacity(len as usize);
            for t in 0..len {
                let (row, col) = if offset >= 0 {
                    (t, t + offset as u64)
                } else {
                    (t + offset.unsigned_abs(), t)
                };
                diag.push(f(row, col));
            }
            diagonals.push(diag);
        }
        Ok(BandSource { n, s, diagonals })
    }

    pub fn half_width(&self) -> u64 {
        self.s
    }
}

impl MatrixSource for BandSource {
    fn qubit_count(&self) -> usize {
        self.n
    }

    #[inline]
    fn entry(&self, row: u64, col: u64) -> Complex64 {
        if row.abs_diff(col) > self.s {
            return Complex64::new(0.0, 0.0);
        }
        let d = (col as i64 - row as i64 + self.s as i64) as usize;
        self.diagonals[d][row.min(col) as usize]
    }

    fn structure_hint(&self) -> StructureClass {
        if self.s == 1 {
            StructureClass::Tridiagonal
        } else {
            StructureClass::Band(self.s)
        }
    }
}

/// Scan every entry and report whether the source satisfies `class`.
/// Costs O(4^n) oracle calls; intended for validating explicit structure
/// claims on small matrices, not for hot paths.
pub fn matches_structure<S: MatrixSource + ?Sized>(src: &S, class: StructureClass) -> bool {
    let n = src.qubit_count();
    let dim = src.dimension();
    for row in 0..dim {
        for col in 0..dim {
            if !class.allows_entry(row, col, n)
                && src.entry(row, col) != Complex64::new(0.0, 0.0)
            {
                return false;
            }
        }
    }
    true
}
