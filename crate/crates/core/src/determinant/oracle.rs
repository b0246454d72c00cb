use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Field;

pub const ORACLE_DIM_LIMIT: usize = 6;

/// Determinant by Laplace expansion along the first row.
///
/// Shares no code with the elimination routines; exists to check them.
pub fn cofactor_oracle<S: Field>(m: &Matrix<S>) -> Result<S> {
    let dim = m.dim();
    if dim > ORACLE_DIM_LIMIT {
        return Err(Error::OracleTooLarge(dim));
    }
    let rows: Vec<usize> = (0..dim).collect();
    let cols: Vec<usize> = (0..dim).collect();
    Ok(expand(m, &rows, &cols))
}

fn expand<S: Field>(m: &Matrix<S>, rows: &[usize], cols: &[usize]) -> S {
    match rows.len() {
        0 => S::one(),
        1 => m.get(rows[0], cols[0]).clone(),
        _ => {
            let mut acc = S::zero();
            for (j, &c) in cols.iter().enumerate() {
                let entry = m.get(rows[0], c);
                if entry.is_zero() {
                    continue;
                }
                let minor_cols: Vec<usize> =
                    cols.iter().copied().filter(|&x| x != c).collect();
                let term = entry.mul(&expand(m, &rows[1..], &minor_cols));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactScalar;

    #[test]
    fn two_by_two_formula() {
        let a: Vec<ExactScalar> = [3, -1, 7, 2].iter().map(|&v| ExactScalar::from_int(v)).collect();
        // [[a0, a2], [a1, a3]]
        let m = Matrix::from_rows(vec![
            vec![a[0].clone(), a[2].clone()],
            vec![a[1].clone(), a[3].clone()],
        ])
        .unwrap();
        let expected = &(&a[0] * &a[3]) - &(&a[1] * &a[2]);
        assert_eq!(cofactor_oracle(&m).unwrap(), expected);
    }

    #[test]
    fn repeated_row_is_zero() {
        let rows = vec![vec![1, 2, 3], vec![4, 5, 6], vec![4, 5, 6]];
        let m = Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(ExactScalar::from_int).collect())
                .collect(),
        )
        .unwrap();
        assert!(cofactor_oracle(&m).unwrap().is_zero());
    }

    #[test]
    fn too_large() {
        let m = Matrix::<ExactScalar>::identity(7);
        assert_eq!(cofactor_oracle(&m), Err(Error::OracleTooLarge(7)));
    }
}
