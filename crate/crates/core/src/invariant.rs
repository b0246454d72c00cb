//! Evaluation of the four determinant invariants on a state.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::determinant::{det_exact, det_float, LogComplex};
use crate::error::Result;
use crate::layout::{build_exact, build_float, matrix_dim, InvariantKind};
use crate::scalar::{ExactScalar, Field};
use crate::state::{Backend, NormSquared, PureState};

/// A polynomial value in either arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub enum InvariantScalar {
    Exact(ExactScalar),
    Float(LogComplex),
}

impl InvariantScalar {
    pub fn is_zero(&self) -> bool {
        match self {
            InvariantScalar::Exact(z) => z.is_zero(),
            InvariantScalar::Float(z) => z.is_zero(),
        }
    }

    /// Natural log of the modulus.
    pub fn ln_modulus(&self) -> f64 {
        match self {
            InvariantScalar::Exact(z) => z.ln_modulus(),
            InvariantScalar::Float(z) => z.log_magnitude,
        }
    }

    pub fn as_exact(&self) -> Option<&ExactScalar> {
        match self {
            InvariantScalar::Exact(z) => Some(z),
            InvariantScalar::Float(_) => None,
        }
    }

    pub fn as_float(&self) -> Option<&LogComplex> {
        match self {
            InvariantScalar::Float(z) => Some(z),
            InvariantScalar::Exact(_) => None,
        }
    }
}

/// Value of one invariant on one state.
///
/// `normalized` is `raw / (norm^2)^(degree/2)`, i.e. the polynomial evaluated
/// at the unit-norm rescaling of the state. `degree/2` is an integer for every
/// even `n`, so the exact backend never needs a square root.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantValue {
    pub kind: InvariantKind,
    pub degree: usize,
    pub raw: InvariantScalar,
    pub normalized: InvariantScalar,
    pub backend: Backend,
}

/// Degree `2^(n/2)` of every invariant on `n` qubits.
pub fn degree(n: usize) -> usize {
    matrix_dim(n)
}

/// Exponent `2^((n-2)/2)` of the determinant product in the covariance law.
pub fn covariance_exponent(n: usize) -> BigUint {
    BigUint::one() << ((n - 2) / 2)
}

pub fn raw_exact(kind: InvariantKind, state: &PureState) -> Result<ExactScalar> {
    det_exact(&build_exact(kind, state).matrix)
}

pub fn raw_float(kind: InvariantKind, state: &PureState) -> Result<LogComplex> {
    det_float(&build_float(kind, state).matrix)
}

pub fn evaluate(kind: InvariantKind, state: &PureState, backend: Backend) -> Result<InvariantValue> {
    let degree = degree(state.n());
    let half = degree / 2;
    let (raw, normalized) = match backend {
        Backend::Exact => {
            let raw = raw_exact(kind, state)?;
            let norm = exact_norm_squared(state);
            let denom: BigRational = Pow::pow(&norm, half);
            let normalized = raw.scale(&denom.recip());
            (InvariantScalar::Exact(raw), InvariantScalar::Exact(normalized))
        }
        Backend::Float => {
            let raw = raw_float(kind, state)?;
            let shift = half as f64 * state.norm_squared().ln();
            let normalized = if raw.is_zero() {
                LogComplex::ZERO
            } else {
                LogComplex::new(raw.log_magnitude - shift, raw.phase)
            };
            (InvariantScalar::Float(raw), InvariantScalar::Float(normalized))
        }
    };
    Ok(InvariantValue {
        kind,
        degree,
        raw,
        normalized,
        backend,
    })
}

/// All four invariants in `InvariantKind::ALL` order.
pub fn evaluate_all(state: &PureState, backend: Backend) -> Result<Vec<InvariantValue>> {
    InvariantKind::ALL
        .iter()
        .map(|&k| evaluate(k, state, backend))
        .collect()
}

/// Squared norm as a rational; float amplitudes are read as exact dyadics.
pub(crate) fn exact_norm_squared(state: &PureState) -> BigRational {
    match state.norm_squared() {
        NormSquared::Exact(r) => r,
        NormSquared::Float(_) => state
            .to_exact()
            .iter()
            .fold(BigRational::from_integer(0.into()), |acc, a| acc + a.modulus_squared()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{gen_chi, gen_ghz};

    #[test]
    fn chi1_type_i_exact() {
        let v = evaluate(InvariantKind::TypeI, &gen_chi(1, 4).unwrap(), Backend::Exact).unwrap();
        assert_eq!(v.degree, 4);
        assert_eq!(v.raw, InvariantScalar::Exact(ExactScalar::from_int(-1)));
        assert_eq!(v.normalized, InvariantScalar::Exact(ExactScalar::ratio(-1, 16)));
    }

    #[test]
    fn chi1_type_i_float_agrees() {
        let v = evaluate(InvariantKind::TypeI, &gen_chi(1, 4).unwrap(), Backend::Float).unwrap();
        let norm = v.normalized.as_float().unwrap();
        assert!((norm.log_magnitude - (1.0f64 / 16.0).ln()).abs() < 1e-14);
        assert!((norm.phase - std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn ghz_vanishes() {
        for backend in [Backend::Exact, Backend::Float] {
            for v in evaluate_all(&gen_ghz(4).unwrap(), backend).unwrap() {
                assert!(v.raw.is_zero() && v.normalized.is_zero(), "{:?}", v.kind);
            }
        }
    }

    #[test]
    fn exponent_values() {
        assert_eq!(covariance_exponent(2), BigUint::from(1u32));
        assert_eq!(covariance_exponent(4), BigUint::from(2u32));
        assert_eq!(covariance_exponent(8), BigUint::from(8u32));
        assert_eq!(degree(6), 8);
    }
}
