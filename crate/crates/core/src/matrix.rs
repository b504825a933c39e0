//! Lower-triangular matrices of big integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("diagonal entry {index} is not 1")]
    NonUnitDiagonal { index: usize },
}

/// Square lower-triangular matrix with rows and columns indexed `0..=dim`.
///
/// Only the entries on or below the diagonal are stored; everything above is
/// zero by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl TriangularMatrix {
    /// `rows[n]` must hold exactly `n + 1` entries.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, MatrixError> {
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(MatrixError::Ragged { row: n, len: row.len(), expected: n + 1 });
            }
        }
        Ok(TriangularMatrix { rows })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn identity(dim: usize) -> Self {
        let rows = (0..=dim)
            .map(|n| (0..=n).map(|k| if k == n { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        TriangularMatrix { rows }
    }

    /// Largest row/column index.
    pub fn dim(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    /// Entry `(n, k)`; zero above the diagonal.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        if k > n {
            BigInt::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    /// Entry with signed indices: zero for any negative index or `k > n`.
    /// Panics if `n` is beyond the stored dimension.
    pub fn at(&self, n: i64, k: i64) -> BigInt {
        if n < 0 || k < 0 || k > n {
            return BigInt::zero();
        }
        let n = n as usize;
        assert!(n <= self.dim(), "row {n} beyond dimension {}", self.dim());
        self.rows[n][k as usize].clone()
    }

    /// The leading `(dim + 1) x (dim + 1)` block.
    pub fn truncate(&self, dim: usize) -> Self {
        TriangularMatrix { rows: self.rows[..=dim.min(self.dim())].to_vec() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.dim() != other.dim() {
            return Err(MatrixError::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        let rows = (0..=self.dim())
            .map(|n| {
                (0..=n)
                    .map(|k| (k..=n).map(|i| &self.rows[n][i] * &other.rows[i][k]).sum())
                    .collect()
            })
            .collect();
        Ok(TriangularMatrix { rows })
    }

    pub fn is_unit_diagonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(n, row)| row[n].is_one())
    }

    /// Exact inverse of a unit lower-triangular matrix by forward substitution.
    pub fn inverse_unit_lower(&self) -> Result<Self, MatrixError> {
        if let Some(index) = (0..=self.dim()).find(|&n| !self.rows[n][n].is_one()) {
            return Err(MatrixError::NonUnitDiagonal { index });
        }
        let mut inv: Vec<Vec<BigInt>> = Vec::with_capacity(self.rows.len());
        for n in 0..=self.dim() {
            let mut row = vec![BigInt::zero(); n + 1];
            row[n] = BigInt::one();
            for k in (0..n).rev() {
                // sum_{i=k}^{n} M[n][i] inv[i][k] = 0
                let acc: BigInt = (k..n).map(|i| &self.rows[n][i] * &inv[i][k]).sum();
                row[k] = -acc;
            }
            inv.push(row);
        }
        Ok(TriangularMatrix { rows: inv })
    }

    /// Matrix-vector product; `v` must have `dim + 1` entries.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>, MatrixError> {
        if v.len() != self.rows.len() {
            return Err(MatrixError::DimensionMismatch { left: self.dim(), right: v.len().wrapping_sub(1) });
        }
        Ok(self.rows.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        self.rows.iter().map(|row| row.iter().sum()).collect()
    }

    /// Full square rows, zeros included.
    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let size = self.rows.len();
        self.rows
            .iter()
            .map(|row| {
                let mut full = row.clone();
                full.resize(size, BigInt::zero());
                full
            })
            .collect()
    }
}
