//! Vanishing signatures, inequivalence verdicts and measure readouts.
//!
//! Under an invertible local chain every invariant is multiplied by a
//! nonzero factor, so an invariant that vanishes on one state and not on
//! another separates their SLOCC classes. Matching signatures prove nothing.

use num_rational::BigRational;
use num_traits::Pow;

use crate::determinant::{hadamard_log_bound, LogComplex};
use crate::error::{Error, Result};
use crate::invariant::{evaluate, InvariantScalar, InvariantValue};
use crate::layout::{build_float, InvariantKind};
use crate::scalar::ln_rational;
use crate::state::{Backend, PureState};

/// Default float zero test: `|det| <= 1e-10 * Hadamard bound`.
pub const DEFAULT_ZERO_FACTOR: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroTest {
    /// Float backend declares zero when `|det| <= zero_factor * H`.
    pub zero_factor: f64,
}

impl ZeroTest {
    /// Float rule for a determinant whose matrix has log Hadamard bound `log_h`.
    pub fn is_zero(&self, det: &LogComplex, log_h: f64) -> bool {
        det.is_zero() || det.log_magnitude <= self.zero_factor.ln() + log_h
    }

    /// Float rule applied to one invariant of `state`.
    pub fn invariant_is_zero(&self, kind: InvariantKind, state: &PureState, det: &LogComplex) -> bool {
        det.is_zero() || self.is_zero(det, hadamard_log_bound(&build_float(kind, state).matrix))
    }
}

impl Default for ZeroTest {
    fn default() -> Self {
        Self {
            zero_factor: DEFAULT_ZERO_FACTOR,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignatureEntry {
    pub value: InvariantValue,
    pub is_zero: bool,
    /// `ln` of the Hadamard bound of the coefficient matrix (float backend).
    pub log_hadamard_bound: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Signature {
    pub n: usize,
    pub backend: Backend,
    pub zero_factor: Option<f64>,
    /// One entry per kind, in `InvariantKind::ALL` order.
    pub entries: Vec<SignatureEntry>,
}

impl Signature {
    pub fn entry(&self, kind: InvariantKind) -> &SignatureEntry {
        &self.entries[kind.ordinal() - 1]
    }

    pub fn is_zero(&self, kind: InvariantKind) -> bool {
        self.entry(kind).is_zero
    }

    /// Zero flags in `InvariantKind::ALL` order.
    pub fn pattern(&self) -> [bool; 4] {
        std::array::from_fn(|i| self.entries[i].is_zero)
    }
}

pub fn signature(state: &PureState, backend: Backend, test: ZeroTest) -> Result<Signature> {
    let entries = InvariantKind::ALL
        .iter()
        .map(|&kind| {
            let value = evaluate(kind, state, backend)?;
            Ok(match &value.raw {
                InvariantScalar::Exact(z) => SignatureEntry {
                    is_zero: crate::scalar::Field::is_zero(z),
                    value,
                    log_hadamard_bound: None,
                },
                InvariantScalar::Float(z) => {
                    let h = hadamard_log_bound(&build_float(kind, state).matrix);
                    SignatureEntry {
                        is_zero: test.is_zero(z, h),
                        value,
                        log_hadamard_bound: Some(h),
                    }
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Signature {
        n: state.n(),
        backend,
        zero_factor: (backend == Backend::Float).then_some(test.zero_factor),
        entries,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Inequivalent,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub separating_kinds: Vec<InvariantKind>,
    pub left: Signature,
    pub right: Signature,
}

/// `Inequivalent` iff some invariant vanishes on exactly one of the states.
pub fn compare(a: &PureState, b: &PureState, backend: Backend, test: ZeroTest) -> Result<Verdict> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    let left = signature(a, backend, test)?;
    let right = signature(b, backend, test)?;
    Ok(verdict_from(left, right))
}

pub fn verdict_from(left: Signature, right: Signature) -> Verdict {
    let separating_kinds: Vec<InvariantKind> = InvariantKind::ALL
        .iter()
        .copied()
        .filter(|&k| left.is_zero(k) != right.is_zero(k))
        .collect();
    let outcome = if separating_kinds.is_empty() {
        Outcome::Inconclusive
    } else {
        Outcome::Inequivalent
    };
    Verdict {
        outcome,
        separating_kinds,
        left,
        right,
    }
}

/// `|P|` of the unit-norm rescaling of a state.
#[derive(Clone, Debug, PartialEq)]
pub struct Measure {
    pub kind: InvariantKind,
    pub backend: Backend,
    /// `ln |P|`, `-inf` when the invariant vanishes.
    pub log_magnitude: f64,
    /// `|P|` as a double when representable.
    pub value: Option<f64>,
    /// Exact `|P|^2` (exact backend only).
    pub exact_modulus_squared: Option<BigRational>,
}

pub fn measure(kind: InvariantKind, state: &PureState, backend: Backend) -> Result<Measure> {
    let v = evaluate(kind, state, backend)?;
    let (log_magnitude, exact_modulus_squared) = match &v.raw {
        InvariantScalar::Exact(raw) => {
            let norm = crate::invariant::exact_norm_squared(state);
            let sq = raw.modulus_squared() / Pow::pow(&norm, v.degree);
            (0.5 * ln_rational(&sq), Some(sq))
        }
        InvariantScalar::Float(_) => (v.normalized.ln_modulus(), None),
    };
    let value = if log_magnitude == f64::NEG_INFINITY {
        Some(0.0)
    } else {
        let x = log_magnitude.exp();
        (x > 0.0 && x.is_finite()).then_some(x)
    };
    Ok(Measure {
        kind,
        backend,
        log_magnitude,
        value,
        exact_modulus_squared,
    })
}
