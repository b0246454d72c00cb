//! Determinants of square matrices over the exact and float scalars.
//!
//! - [`det_exact`]: fraction-free Bareiss elimination over Gaussian integers
//!   after clearing denominators column by column.
//! - [`det_float`]: partially pivoted LU returning a [`LogComplex`], so that
//!   values far below the double range stay representable.
//! - [`cofactor_oracle`]: Laplace expansion for `dim <= 6`, kept independent
//!   of both elimination routines.

mod exact;
mod float;
mod oracle;

pub use exact::{det_exact, EXACT_DIM_LIMIT};
pub use float::{
    det_float, hadamard_log_bound, wrap_phase, wrap_phase_abs, LogComplex, FLOAT_DIM_LIMIT,
};
pub use oracle::{cofactor_oracle, ORACLE_DIM_LIMIT};

use crate::error::{Error, Result};

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    dim: usize,
    data: Vec<S>,
}

impl<S> Matrix<S> {
    pub fn from_row_major(dim: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: S) {
        self.data[row * self.dim + col] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.data.chunks(self.dim.max(1))
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = &S> {
        self.data.iter().skip(col).step_by(self.dim.max(1))
    }

    pub fn map<T>(&self, f: impl FnMut(&S) -> T) -> Matrix<T> {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub(crate) fn into_data(self) -> Vec<S> {
        self.data
    }
}

impl<S: crate::scalar::Field> Matrix<S> {
    pub fn identity(dim: usize) -> Self {
        let data = (0..dim * dim)
            .map(|i| if i / dim == i % dim { S::one() } else { S::zero() })
            .collect();
        Self { dim, data }
    }
}
