//! Dense square matrices over ℂ.
//!
//! [`HermitianMatrix`] stores the upper triangle only, so `m[i][j] =
//! conj(m[j][i])` holds by construction. [`DenseMatrix`] is the unconstrained
//! carrier used for raw entrywise images that may have lost symmetry.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("entries ({row}, {col}) and ({col}, {row}) are not conjugate")]
    NotHermitian { row: usize, col: usize },
    #[error("index ({row}, {col}) out of range for dimension {n}")]
    OutOfRange { row: usize, col: usize, n: usize },
    #[error("minor indices must be distinct, got rows {rows:?} cols {cols:?}")]
    RepeatedIndex {
        rows: (usize, usize),
        cols: (usize, usize),
    },
}

/// Read access shared by the two matrix carriers.
pub trait Entries {
    fn dim(&self) -> usize;
    fn entry(&self, row: usize, col: usize) -> Complex64;
}

/// `M[i][k]·M[j][l] − M[i][l]·M[j][k]` for rows `(i, j)` and cols `(k, l)`.
pub fn minor2<M: Entries + ?Sized>(
    m: &M,
    rows: (usize, usize),
    cols: (usize, usize),
) -> Result<Complex64, MatrixError> {
    let n = m.dim();
    for (r, c) in [(rows.0, cols.0), (rows.1, cols.1)] {
        if r >= n || c >= n {
            return Err(MatrixError::OutOfRange { row: r, col: c, n });
        }
    }
    if rows.0 == rows.1 || cols.0 == cols.1 {
        return Err(MatrixError::RepeatedIndex { rows, cols });
    }
    let (i, j) = rows;
    let (k, l) = cols;
    Ok(m.entry(i, k) * m.entry(j, l) - m.entry(i, l) * m.entry(j, k))
}

#[inline]
fn packed_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    i * n - i * (i + 1) / 2 + j
}

fn check_finite(z: Complex64, row: usize, col: usize) -> Result<(), MatrixError> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(MatrixError::NonFinite { row, col })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermitianMatrix {
    n: usize,
    upper: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Builds the matrix from `f(i, j)` for `i <= j`. Diagonal values must be
    /// real.
    pub fn from_upper_fn<F>(n: usize, mut f: F) -> Result<Self, MatrixError>
    where
        F: FnMut(usize, usize) -> Complex64,
    {
        if n == 0 {
            return Err(MatrixError::EmptyMatrix);
        }
        let mut upper = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                let z = f(i, j);
                check_finite(z, i, j)?;
                if i == j && z.im != 0.0 {
                    return Err(MatrixError::NotHermitian { row: i, col: i });
                }
                upper.push(z);
            }
        }
        Ok(Self { n, upper })
    }

    /// From row-major complex entries; rejects anything not exactly Hermitian.
    pub fn from_rows(n: usize, entries: &[Complex64]) -> Result<Self, MatrixError> {
        if entries.len() != n * n {
            return Err(MatrixError::Shape {
                expected: n * n,
                got: entries.len(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                check_finite(entries[i * n + j], i, j)?;
                if entries[i * n + j] != entries[j * n + i].conj() {
                    return Err(MatrixError::NotHermitian { row: i, col: j });
                }
            }
        }
        Self::from_upper_fn(n, |i, j| entries[i * n + j])
    }

    pub fn from_real_rows(n: usize, entries: &[f64]) -> Result<Self, MatrixError> {
        let c: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_rows(n, &c)
    }

    pub fn zeros(n: usize) -> Result<Self, MatrixError> {
        Self::from_upper_fn(n, |_, _| Complex64::new(0.0, 0.0))
    }

    pub fn identity(n: usize) -> Result<Self, MatrixError> {
        Self::from_upper_fn(n, |i, j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
    }

    pub fn ones(n: usize) -> Result<Self, MatrixError> {
        Self::from_upper_fn(n, |_, _| Complex64::new(1.0, 0.0))
    }

    /// The rank-one matrix `v v*`.
    pub fn outer(v: &[Complex64]) -> Result<Self, MatrixError> {
        for (i, z) in v.iter().enumerate() {
            check_finite(*z, i, i)?;
        }
        Self::from_upper_fn(v.len(), |i, j| {
            if i == j {
                Complex64::new(v[i].norm_sqr(), 0.0)
            } else {
                v[i] * v[j].conj()
            }
        })
    }

    pub fn outer_real(v: &[f64]) -> Result<Self, MatrixError> {
        let c: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::outer(&c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        if i <= j {
            self.upper[packed_index(self.n, i, j)]
        } else {
            self.upper[packed_index(self.n, j, i)].conj()
        }
    }

    pub fn is_real(&self) -> bool {
        self.upper.iter().all(|z| z.im == 0.0)
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i).re).sum()
    }

    /// Row-major copy of all `n²` entries.
    pub fn to_rows(&self) -> Vec<Complex64> {
        let n = self.n;
        (0..n * n).map(|k| self.get(k / n, k % n)).collect()
    }

    /// Entries `(i, j, value)` of the upper triangle, diagonal included.
    pub fn upper_entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| (i..n).map(move |j| (i, j, self.get(i, j))))
    }

    /// `P M Pᵀ` for the permutation sending index `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, MatrixError> {
        if perm.len() != self.n {
            return Err(MatrixError::Shape {
                expected: self.n,
                got: perm.len(),
            });
        }
        let mut inverse = vec![usize::MAX; self.n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= self.n || inverse[p] != usize::MAX {
                return Err(MatrixError::OutOfRange {
                    row: i,
                    col: p,
                    n: self.n,
                });
            }
            inverse[p] = i;
        }
        Self::from_upper_fn(self.n, |i, j| self.get(inverse[i], inverse[j]))
    }

    pub(crate) fn to_nalgebra_complex(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    pub(crate) fn to_nalgebra_real(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j).re)
    }
}

impl Entries for HermitianMatrix {
    fn dim(&self) -> usize {
        self.n
    }

    fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.get(row, col)
    }
}

/// Unconstrained square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn from_fn<F>(n: usize, mut f: F) -> Result<Self, MatrixError>
    where
        F: FnMut(usize, usize) -> Complex64,
    {
        if n == 0 {
            return Err(MatrixError::EmptyMatrix);
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Ok(Self { n, data })
    }

    pub fn from_real_rows(n: usize, entries: &[f64]) -> Result<Self, MatrixError> {
        if entries.len() != n * n {
            return Err(MatrixError::Shape {
                expected: n * n,
                got: entries.len(),
            });
        }
        Self::from_fn(n, |i, j| Complex64::new(entries[i * n + j], 0.0))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }
}

impl Entries for DenseMatrix {
    fn dim(&self) -> usize {
        self.n
    }

    fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.get(row, col)
    }
}

impl From<&HermitianMatrix> for DenseMatrix {
    fn from(m: &HermitianMatrix) -> Self {
        DenseMatrix {
            n: m.n(),
            data: m.to_rows(),
        }
    }
}
