//! The four `2^(n/2) x 2^(n/2)` arrangements of a state's coefficients.
//!
//! Each layout is a bijection from matrix positions to amplitude indices.
//! The determinant of the arranged matrix is a degree-`2^(n/2)` polynomial
//! in the amplitudes that picks up the factor
//! `(det A_1 ... det A_n)^(2^((n-2)/2))` under local operators `A_i`.

use serde::{Deserialize, Serialize};

use crate::determinant::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Field, FloatScalar};
use crate::state::{check_qubit_count, PureState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InvariantKind {
    /// Columns are consecutive runs of `2^(n/2)` amplitudes.
    TypeI,
    /// Rows alternate between even- and odd-indexed amplitudes.
    TypeII,
    /// Left half from the first half of the vector, right half from the second.
    TypeIII,
    /// Rows in groups of four interleaving even/odd indices, split in halves.
    TypeIV,
}

impl InvariantKind {
    pub const ALL: [InvariantKind; 4] = [
        InvariantKind::TypeI,
        InvariantKind::TypeII,
        InvariantKind::TypeIII,
        InvariantKind::TypeIV,
    ];

    /// 1-based ordinal (`TypeI` = 1).
    pub fn ordinal(self) -> usize {
        match self {
            InvariantKind::TypeI => 1,
            InvariantKind::TypeII => 2,
            InvariantKind::TypeIII => 3,
            InvariantKind::TypeIV => 4,
        }
    }

    pub fn from_ordinal(k: usize) -> Option<Self> {
        Self::ALL.get(k.wrapping_sub(1)).copied()
    }

    /// Short roman-numeral tag used in reports.
    pub fn tag(self) -> &'static str {
        match self {
            InvariantKind::TypeI => "I",
            InvariantKind::TypeII => "II",
            InvariantKind::TypeIII => "III",
            InvariantKind::TypeIV => "IV",
        }
    }
}

impl std::fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(&format!("Type{}", self.tag()))
    }
}

/// Side length `2^(n/2)` of the coefficient matrix.
pub fn matrix_dim(n: usize) -> usize {
    1 << (n / 2)
}

/// Amplitude index stored at `(row, col)` of the `kind` layout for `n` qubits.
pub fn index_map(kind: InvariantKind, n: usize, row: usize, col: usize) -> Result<usize> {
    check_qubit_count(n)?;
    let dim = matrix_dim(n);
    if row >= dim {
        return Err(Error::IndexOutOfRange {
            what: "row",
            value: row,
            bound: dim,
        });
    }
    if col >= dim {
        return Err(Error::IndexOutOfRange {
            what: "col",
            value: col,
            bound: dim,
        });
    }
    Ok(index_unchecked(kind, n, row, col))
}

#[inline]
pub(crate) fn index_unchecked(kind: InvariantKind, n: usize, row: usize, col: usize) -> usize {
    let dim = matrix_dim(n);
    let h = dim / 2;
    let upper = 1usize << (n - 1);
    match kind {
        InvariantKind::TypeI => dim * col + row,
        InvariantKind::TypeII => 2 * dim * (row / 2) + 2 * col + row % 2,
        InvariantKind::TypeIII => {
            if col < h {
                h * row + col
            } else {
                upper + h * row + (col - h)
            }
        }
        // n = 2 has no group-of-four structure; it shares the TypeI layout.
        InvariantKind::TypeIV if n == 2 => dim * col + row,
        InvariantKind::TypeIV => {
            let (g, p) = (row / 4, row % 4);
            let c = col % h;
            let base = if col < h { 0 } else { upper };
            if p < 2 {
                base + dim * (2 * g + p) + 2 * c
            } else {
                base + dim * (2 * g + p - 2) + 2 * c + 1
            }
        }
    }
}

/// Full `dim x dim` grid of amplitude indices, row-major.
pub fn index_grid(kind: InvariantKind, n: usize) -> Result<Vec<Vec<usize>>> {
    check_qubit_count(n)?;
    let dim = matrix_dim(n);
    Ok((0..dim)
        .map(|r| (0..dim).map(|c| index_unchecked(kind, n, r, c)).collect())
        .collect())
}

/// A materialized coefficient matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffMatrix<S> {
    pub kind: InvariantKind,
    pub n: usize,
    pub matrix: Matrix<S>,
}

impl<S: Field> CoeffMatrix<S> {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        self.matrix.get(row, col)
    }

    fn from_amplitudes(kind: InvariantKind, n: usize, amps: &[S]) -> Self {
        let dim = matrix_dim(n);
        debug_assert!(is_bijection(kind, n));
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(amps[index_unchecked(kind, n, r, c)].clone());
            }
        }
        CoeffMatrix {
            kind,
            n,
            matrix: Matrix::from_row_major(dim, data).expect("dim*dim entries"),
        }
    }
}

fn is_bijection(kind: InvariantKind, n: usize) -> bool {
    let dim = matrix_dim(n);
    let mut seen = vec![false; dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            let i = index_unchecked(kind, n, r, c);
            if i >= seen.len() || std::mem::replace(&mut seen[i], true) {
                return false;
            }
        }
    }
    true
}

/// Exact coefficient matrix (float states convert losslessly).
pub fn build_exact(kind: InvariantKind, state: &PureState) -> CoeffMatrix<ExactScalar> {
    match state.exact_amplitudes() {
        Some(a) => CoeffMatrix::from_amplitudes(kind, state.n(), a),
        None => CoeffMatrix::from_amplitudes(kind, state.n(), &state.to_exact()),
    }
}

/// Float coefficient matrix (exact states round to nearest).
pub fn build_float(kind: InvariantKind, state: &PureState) -> CoeffMatrix<FloatScalar> {
    match state.float_amplitudes() {
        Some(a) => CoeffMatrix::from_amplitudes(kind, state.n(), a),
        None => CoeffMatrix::from_amplitudes(kind, state.n(), &state.to_float()),
    }
}
