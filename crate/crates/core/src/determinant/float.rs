use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::FloatScalar;

/// Largest matrix side accepted by [`det_float`] (n <= 20).
pub const FLOAT_DIM_LIMIT: usize = 1024;

/// Complex number as `exp(log_magnitude) * exp(i phase)`.
///
/// Zero is `log_magnitude = -inf`, in which case the phase is meaningless
/// and kept at 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogComplex {
    pub log_magnitude: f64,
    pub phase: f64,
}

impl LogComplex {
    pub const ZERO: LogComplex = LogComplex {
        log_magnitude: f64::NEG_INFINITY,
        phase: 0.0,
    };

    pub const ONE: LogComplex = LogComplex {
        log_magnitude: 0.0,
        phase: 0.0,
    };

    pub fn new(log_magnitude: f64, phase: f64) -> Self {
        if log_magnitude == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        Self {
            log_magnitude,
            phase: wrap_phase(phase),
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return Self::ZERO;
        }
        // hypot does not overflow for large parts
        Self::new(z.re.hypot(z.im).ln(), z.arg())
    }

    pub fn is_zero(&self) -> bool {
        self.log_magnitude == f64::NEG_INFINITY
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.log_magnitude + o.log_magnitude, self.phase + o.phase)
    }

    /// `self^k` for a real exponent applied to both log-magnitude and phase.
    pub fn powf(&self, k: f64) -> Self {
        if self.is_zero() {
            return if k == 0.0 { Self::ONE } else { Self::ZERO };
        }
        Self::new(self.log_magnitude * k, self.phase * k)
    }

    /// Linear value; `None` if it under- or overflows a double.
    pub fn to_complex(&self) -> Option<Complex64> {
        if self.is_zero() {
            return Some(Complex64::new(0.0, 0.0));
        }
        let m = self.log_magnitude.exp();
        if m == 0.0 || !m.is_finite() {
            return None;
        }
        Some(Complex64::from_polar(m, self.phase))
    }
}

/// Maps an angle into `(-pi, pi]`.
pub fn wrap_phase(theta: f64) -> f64 {
    if !theta.is_finite() {
        return theta;
    }
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// `|wrap_phase(theta)|`, the angular distance from 0.
pub fn wrap_phase_abs(theta: f64) -> f64 {
    wrap_phase(theta).abs()
}

/// Log-domain determinant by LU with partial pivoting on magnitude.
///
/// Ties between equal pivot magnitudes go to the lowest row index.
pub fn det_float(m: &Matrix<FloatScalar>) -> Result<LogComplex> {
    let dim = m.dim();
    if dim > FLOAT_DIM_LIMIT {
        return Err(Error::CapacityExceeded {
            what: "float determinant dimension",
            value: dim,
            limit: FLOAT_DIM_LIMIT,
        });
    }
    let mut a: Vec<Complex64> = m.map(|z| z.value()).into_data();
    let mut log_mag = 0.0;
    let mut phase = 0.0;
    for k in 0..dim {
        let mut best = k;
        let mut best_mag = a[k * dim + k].norm();
        for r in k + 1..dim {
            let mag = a[r * dim + k].norm();
            if mag > best_mag {
                best = r;
                best_mag = mag;
            }
        }
        if best_mag == 0.0 {
            return Ok(LogComplex::ZERO);
        }
        if best != k {
            for c in 0..dim {
                a.swap(k * dim + c, best * dim + c);
            }
            phase += PI;
        }
        let pivot = a[k * dim + k];
        log_mag += best_mag.ln();
        phase += pivot.arg();
        // a / pivot without forming |pivot|^2, which underflows for tiny pivots
        let unit = pivot.conj() / best_mag;
        for r in k + 1..dim {
            let factor = a[r * dim + k] / best_mag * unit;
            if factor.re == 0.0 && factor.im == 0.0 {
                continue;
            }
            for c in k + 1..dim {
                let upper = a[k * dim + c];
                a[r * dim + c] -= factor * upper;
            }
        }
    }
    Ok(LogComplex::new(log_mag, phase))
}

/// `ln` of the Hadamard bound `prod_j ||column_j||_2`; `-inf` if any column is zero.
pub fn hadamard_log_bound(m: &Matrix<FloatScalar>) -> f64 {
    (0..m.dim())
        .map(|c| {
            let (scale, sum) = scaled_norm(m.column(c).map(|z| z.value()));
            if scale == 0.0 {
                f64::NEG_INFINITY
            } else {
                scale.ln() + 0.5 * sum.ln()
            }
        })
        .sum()
}

// Column norm as scale * sqrt(sum) without overflow or underflow.
fn scaled_norm(col: impl Iterator<Item = Complex64>) -> (f64, f64) {
    let vals: Vec<Complex64> = col.collect();
    let scale = vals
        .iter()
        .map(|z| z.re.abs().max(z.im.abs()))
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return (0.0, 0.0);
    }
    let sum = vals.iter().map(|z| (z / scale).norm_sqr()).sum();
    (scale, sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(values: &[f64]) -> Matrix<FloatScalar> {
        let d = values.len();
        let data = (0..d * d)
            .map(|i| {
                if i / d == i % d {
                    FloatScalar::real(values[i / d]).unwrap()
                } else {
                    FloatScalar::real(0.0).unwrap()
                }
            })
            .collect();
        Matrix::from_row_major(d, data).unwrap()
    }

    #[test]
    fn identity_is_one() {
        let d = det_float(&diag(&[1.0; 8])).unwrap();
        assert_eq!(d, LogComplex::new(0.0, 0.0));
    }

    #[test]
    fn diagonal_product() {
        let d = det_float(&diag(&[2.0; 4])).unwrap();
        assert!((d.log_magnitude - 4.0 * 2f64.ln()).abs() < 1e-15);
        assert_eq!(d.phase, 0.0);
        let d = det_float(&diag(&[2.0, -3.0])).unwrap();
        assert!((d.log_magnitude - 6f64.ln()).abs() < 1e-15);
        assert!((d.phase - PI).abs() < 1e-15);
    }

    #[test]
    fn swap_contributes_sign() {
        let one = FloatScalar::real(1.0).unwrap();
        let zero = FloatScalar::real(0.0).unwrap();
        let m = Matrix::from_rows(vec![vec![zero, one], vec![one, zero]]).unwrap();
        let d = det_float(&m).unwrap();
        assert_eq!(d.log_magnitude, 0.0);
        assert!((d.phase - PI).abs() < 1e-15);
    }

    #[test]
    fn zero_column_is_exact_zero() {
        let d = det_float(&diag(&[1.0, 0.0, 3.0])).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn tiny_values_do_not_underflow() {
        let d = det_float(&diag(&[1e-200; 8])).unwrap();
        assert!((d.log_magnitude - 8.0 * (1e-200f64).ln()).abs() < 1e-9, "{d:?}");
        assert_eq!(d.to_complex(), None);
    }

    #[test]
    fn phase_wraps_into_half_open_interval() {
        assert!((wrap_phase(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_phase(-PI) - PI).abs() < 1e-12);
        assert!((wrap_phase(-0.5) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn hadamard_bound_of_diagonal() {
        let h = hadamard_log_bound(&diag(&[2.0, 3.0]));
        assert!((h - 6f64.ln()).abs() < 1e-15);
        assert_eq!(hadamard_log_bound(&diag(&[2.0, 0.0])), f64::NEG_INFINITY);
    }
}
