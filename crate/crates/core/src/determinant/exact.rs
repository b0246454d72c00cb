use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{denominator_lcm, ExactScalar};

/// Largest matrix side accepted by [`det_exact`] (n <= 16).
pub const EXACT_DIM_LIMIT: usize = 256;

/// Gaussian integer `re + i im`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn zero() -> Self {
        Self {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    fn one() -> Self {
        Self {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Self {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn neg(&self) -> Self {
        Self {
            re: -&self.re,
            im: -&self.im,
        }
    }

    /// `self / d`, where `d` is known to divide `self` in Z[i].
    fn div_exact(&self, d: &Self) -> Self {
        if d.im.is_zero() {
            if d.re.is_one() {
                return self.clone();
            }
            debug_assert!((&self.re % &d.re).is_zero() && (&self.im % &d.re).is_zero());
            return Self {
                re: &self.re / &d.re,
                im: &self.im / &d.re,
            };
        }
        let norm = &d.re * &d.re + &d.im * &d.im;
        // self * conj(d)
        let re = &self.re * &d.re + &self.im * &d.im;
        let im = &self.im * &d.re - &self.re * &d.im;
        debug_assert!((&re % &norm).is_zero() && (&im % &norm).is_zero());
        Self {
            re: re / &norm,
            im: im / norm,
        }
    }
}

/// Exact determinant over the Gaussian rationals.
///
/// Each column is multiplied by the lcm of its denominators, Bareiss
/// elimination runs over `Z[i]`, and the product of the column factors is
/// divided back out at the end.
pub fn det_exact(m: &Matrix<ExactScalar>) -> Result<ExactScalar> {
    let dim = m.dim();
    if dim > EXACT_DIM_LIMIT {
        return Err(Error::CapacityExceeded {
            what: "exact determinant dimension",
            value: dim,
            limit: EXACT_DIM_LIMIT,
        });
    }
    if dim == 0 {
        return Ok(ExactScalar::real(BigRational::one()));
    }

    let mut scale = BigInt::one();
    let mut work = vec![GaussInt::zero(); dim * dim];
    for col in 0..dim {
        let lcm = m
            .column(col)
            .fold(BigInt::one(), |acc, z| acc.lcm(&denominator_lcm(z)));
        for (row, z) in m.column(col).enumerate() {
            work[row * dim + col] = GaussInt {
                re: z.re.numer() * (&lcm / z.re.denom()),
                im: z.im.numer() * (&lcm / z.im.denom()),
            };
        }
        scale *= lcm;
    }

    let Some(det) = bareiss(dim, &mut work) else {
        return Ok(ExactScalar::real(BigRational::zero()));
    };
    Ok(ExactScalar::new(
        BigRational::new(det.re, scale.clone()),
        BigRational::new(det.im, scale),
    ))
}

/// Fraction-free elimination in place; `None` when the matrix is singular.
fn bareiss(dim: usize, a: &mut [GaussInt]) -> Option<GaussInt> {
    let mut prev = GaussInt::one();
    let mut negate = false;
    for k in 0..dim {
        if a[k * dim + k].is_zero() {
            let swap = (k + 1..dim).find(|&r| !a[r * dim + k].is_zero())?;
            for c in k..dim {
                a.swap(k * dim + c, swap * dim + c);
            }
            negate = !negate;
        }
        let pivot = a[k * dim + k].clone();
        for r in k + 1..dim {
            let lead = a[r * dim + k].clone();
            for c in k + 1..dim {
                let v = pivot
                    .mul(&a[r * dim + c])
                    .sub(&lead.mul(&a[k * dim + c]))
                    .div_exact(&prev);
                a[r * dim + c] = v;
            }
            a[r * dim + k] = GaussInt::zero();
        }
        prev = pivot;
    }
    let det = a[dim * dim - 1].clone();
    Some(if negate { det.neg() } else { det })
}
