//! Small dense complex matrix helper.
//!
//! Used for reconstruction, circuit simulation and verification at modest
//! sizes; this is deliberately not a general-purpose linear-algebra type.

use num_complex::Complex64;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Build from row-major data; panics unless `data.len() == dim * dim`.
    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), dim * dim, "row-major data length mismatch");
        CMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] += v;
    }

    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let dim = self.dim;
        let mut out = CMatrix::zeros(dim);
        for i in 0..dim {
            for t in 0..dim {
                let a = self.get(i, t);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..dim {
                    out.data[i * dim + j] += a * rhs.data[t * dim + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMatrix {
        let dim = self.dim;
        CMatrix::from_fn(dim, |i, j| self.get(j, i).conj())
    }

    pub fn add(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> CMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    /// Kronecker product; `self` becomes the more significant factor.
    pub fn kron(&self, rhs: &CMatrix) -> CMatrix {
        let (da, db) = (self.dim, rhs.dim);
        let dim = da * db;
        let mut out = CMatrix::zeros(dim);
        for i1 in 0..da {
            for j1 in 0..da {
                let a = self.get(i1, j1);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for i2 in 0..db {
                    for j2 in 0..db {
                        out.set(i1 * db + i2, j1 * db + j2, a * rhs.get(i2, j2));
                    }
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        let dim = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for i in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            let row = &self.data[i * dim..(i + 1) * dim];
            for (a, x) in row.iter().zip(v) {
                acc += a * x;
            }
            out[i] = acc;
        }
        out
    }

    pub fn adjoint_matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        let dim = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for i in 0..dim {
            let x = v[i];
            if x == Complex64::new(0.0, 0.0) {
                continue;
            }
            let row = &self.data[i * dim..(i + 1) * dim];
            for (o, a) in out.iter_mut().zip(row) {
                *o += a.conj() * x;
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, rhs: &CMatrix) -> f64 {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Spectral norm (largest singular value) by power iteration on AᴴA with a
    /// deterministic start vector. Exact small-matrix accuracy is not needed by
    /// callers: verification thresholds sit orders of magnitude above the
    /// iteration error, and an exactly zero matrix short-circuits to 0.
    pub fn spectral_norm(&self) -> f64 {
        if self.dim == 0 || self.frobenius_norm() == 0.0 {
            return 0.0;
        }
        let dim = self.dim;
        let mut v: Vec<Complex64> = (0..dim)
            .map(|i| Complex64::new(1.0 + (i as f64) / (dim as f64 + 1.0), 0.0))
            .collect();
        normalize(&mut v);
        let mut sigma = 0.0f64;
        for _ in 0..160 {
            let w = self.matvec(&v);
            let new_sigma = l2_norm(&w);
            let mut u = self.adjoint_matvec(&w);
            let nu = l2_norm(&u);
            if nu == 0.0 {
                return new_sigma;
            }
            for x in u.iter_mut() {
                *x /= nu;
            }
            let converged = (new_sigma - sigma).abs() <= 1e-15 * new_sigma.max(1e-300);
            sigma = new_sigma;
            v = u;
            if converged {
                break;
            }
        }
        sigma
    }
}

fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let n = l2_norm(v);
    if n > 0.0 {
        for x in v.iter_mut() {
            *x /= n;
        }
    }
}
