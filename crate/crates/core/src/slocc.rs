//! Invertible local operators and the covariance checks they drive.
//!
//! Qubit `l` is the bit of weight `2^(n-l-1)` in a basis index, so qubit 0
//! is the most significant bit. An operator `[[t1, t2], [t3, t4]]` on qubit
//! `l` mixes each amplitude pair `(i, i + 2^(n-l-1))` with bit `l` clear in `i`:
//!
//! ```text
//! a[i]              = t1 c[i] + t2 c[i + 2^(n-l-1)]
//! a[i + 2^(n-l-1)]  = t3 c[i] + t4 c[i + 2^(n-l-1)]
//! ```

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::ZeroTest;
use crate::determinant::LogComplex;
use crate::error::{Error, Result};
use crate::invariant::{covariance_exponent, evaluate, InvariantScalar, InvariantValue};
use crate::layout::InvariantKind;
use crate::sampling::small_gaussian;
use crate::scalar::{ExactScalar, Field, FloatScalar};
use crate::state::{Amplitudes, Backend, PureState};

/// Default lower bound on `|det|` for random operators.
pub const DEFAULT_DET_FLOOR: f64 = 0.1;
/// Default upper bound on `|det|` for random operators.
pub const DEFAULT_DET_CEILING: f64 = 10.0;
/// Default float covariance tolerance (log-magnitude and phase).
pub const DEFAULT_FLOAT_TOLERANCE: f64 = 1e-8;
const MAX_ATTEMPTS: usize = 1000;

/// 2x2 matrix `[[t1, t2], [t3, t4]]` with nonzero determinant.
#[derive(Clone, Debug, PartialEq)]
pub enum LocalOperator {
    Exact([ExactScalar; 4]),
    Float([FloatScalar; 4]),
}

impl LocalOperator {
    pub fn exact(t: [ExactScalar; 4]) -> Result<Self> {
        let op = LocalOperator::Exact(t);
        if op.is_singular() {
            return Err(Error::SingularOperator);
        }
        Ok(op)
    }

    /// Rejects operators with `|det|` below `floor`.
    pub fn float(t: [FloatScalar; 4], floor: f64) -> Result<Self> {
        let op = LocalOperator::Float(t);
        let d = op.det_float().value().norm();
        if d == 0.0 || d < floor {
            return Err(Error::SingularOperator);
        }
        Ok(op)
    }

    pub fn exact_ints(t: [i64; 4]) -> Result<Self> {
        Self::exact(t.map(ExactScalar::from_int))
    }

    pub fn identity() -> Self {
        LocalOperator::Exact([
            ExactScalar::one(),
            ExactScalar::zero(),
            ExactScalar::zero(),
            ExactScalar::one(),
        ])
    }

    /// Bit flip `[[0, 1], [1, 0]]`.
    pub fn flip() -> Self {
        LocalOperator::Exact([
            ExactScalar::zero(),
            ExactScalar::one(),
            ExactScalar::one(),
            ExactScalar::zero(),
        ])
    }

    pub fn backend(&self) -> Backend {
        match self {
            LocalOperator::Exact(_) => Backend::Exact,
            LocalOperator::Float(_) => Backend::Float,
        }
    }

    fn is_singular(&self) -> bool {
        match self {
            LocalOperator::Exact(_) => self.det_exact().is_zero(),
            LocalOperator::Float(_) => self.det_float().is_zero(),
        }
    }

    pub fn entries_exact(&self) -> [ExactScalar; 4] {
        match self {
            LocalOperator::Exact(t) => t.clone(),
            LocalOperator::Float(t) => t.each_ref().map(ExactScalar::from_float),
        }
    }

    pub fn entries_float(&self) -> [FloatScalar; 4] {
        match self {
            LocalOperator::Float(t) => *t,
            LocalOperator::Exact(t) => t.each_ref().map(ExactScalar::to_float),
        }
    }

    pub fn det_exact(&self) -> ExactScalar {
        let [t1, t2, t3, t4] = self.entries_exact();
        &(&t1 * &t4) - &(&t2 * &t3)
    }

    pub fn det_float(&self) -> FloatScalar {
        let [t1, t2, t3, t4] = self.entries_float();
        &(&t1 * &t4) - &(&t2 * &t3)
    }

    /// Inverse operator in the same backend.
    pub fn inverse(&self) -> Self {
        fn inv<S: Field>(t: &[S; 4]) -> [S; 4] {
            let d = t[0].mul(&t[3]).sub(&t[1].mul(&t[2]));
            let r = d.inv().expect("operator is invertible");
            [t[3].mul(&r), t[1].neg().mul(&r), t[2].neg().mul(&r), t[0].mul(&r)]
        }
        match self {
            LocalOperator::Exact(t) => LocalOperator::Exact(inv(t)),
            LocalOperator::Float(t) => LocalOperator::Float(inv(t)),
        }
    }
}

/// One operator per qubit, applied as `A_1 x A_2 x ... x A_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalOperatorChain {
    ops: Vec<LocalOperator>,
}

impl LocalOperatorChain {
    pub fn new(ops: Vec<LocalOperator>) -> Self {
        Self { ops }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(vec![LocalOperator::identity(); n])
    }

    pub fn uniform(op: LocalOperator, n: usize) -> Self {
        Self::new(vec![op; n])
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn ops(&self) -> &[LocalOperator] {
        &self.ops
    }

    /// `prod_i det A_i`, exact.
    pub fn det_product_exact(&self) -> ExactScalar {
        self.ops
            .iter()
            .fold(ExactScalar::one(), |acc, op| &acc * &op.det_exact())
    }

    /// `prod_i det A_i` in log form.
    pub fn det_product_log(&self) -> LogComplex {
        self.ops.iter().fold(LogComplex::ONE, |acc, op| {
            acc.mul(&LogComplex::from_complex(op.det_float().value()))
        })
    }
}

fn mix<S: Field>(amps: &mut [S], n: usize, qubit: usize, t: &[S; 4]) {
    let stride = 1usize << (n - qubit - 1);
    let block = stride << 1;
    for start in (0..amps.len()).step_by(block) {
        for i in start..start + stride {
            let c0 = amps[i].clone();
            let c1 = amps[i + stride].clone();
            amps[i] = t[0].mul(&c0).add(&t[1].mul(&c1));
            amps[i + stride] = t[2].mul(&c0).add(&t[3].mul(&c1));
        }
    }
}

/// Applies `op` to qubit `qubit`. The result keeps the state's backend: float
/// operators enter an exact state as exact dyadic rationals, exact operators
/// enter a float state rounded to nearest.
pub fn apply_single(state: &PureState, qubit: usize, op: &LocalOperator) -> Result<PureState> {
    let n = state.n();
    if qubit >= n {
        return Err(Error::IndexOutOfRange {
            what: "qubit",
            value: qubit,
            bound: n,
        });
    }
    let amplitudes = match state.amplitudes() {
        Amplitudes::Exact(v) => {
            let mut v = v.clone();
            mix(&mut v, n, qubit, &op.entries_exact());
            Amplitudes::Exact(v)
        }
        Amplitudes::Float(v) => {
            let mut v = v.clone();
            mix(&mut v, n, qubit, &op.entries_float());
            Amplitudes::Float(v)
        }
    };
    Ok(PureState::from_parts(n, amplitudes, state.label().map(str::to_owned)))
}

pub fn apply_chain(state: &PureState, chain: &LocalOperatorChain) -> Result<PureState> {
    if chain.len() != state.n() {
        return Err(Error::DimensionMismatch {
            expected: state.n(),
            found: chain.len(),
        });
    }
    let n = state.n();
    let amplitudes = match state.amplitudes() {
        Amplitudes::Exact(v) => {
            let mut v = v.clone();
            for (q, op) in chain.ops().iter().enumerate() {
                mix(&mut v, n, q, &op.entries_exact());
            }
            Amplitudes::Exact(v)
        }
        Amplitudes::Float(v) => {
            let mut v = v.clone();
            for (q, op) in chain.ops().iter().enumerate() {
                mix(&mut v, n, q, &op.entries_float());
            }
            Amplitudes::Float(v)
        }
    };
    Ok(PureState::from_parts(n, amplitudes, state.label().map(str::to_owned)))
}

/// Accepted range for `|det|` of a random operator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetBounds {
    pub lo: f64,
    pub hi: f64,
}

impl Default for DetBounds {
    fn default() -> Self {
        Self {
            lo: DEFAULT_DET_FLOOR,
            hi: DEFAULT_DET_CEILING,
        }
    }
}

/// Deterministic random operator for `seed`.
pub fn random_invertible(seed: u64, bounds: DetBounds, backend: Backend) -> Result<LocalOperator> {
    random_invertible_with(&mut ChaCha8Rng::seed_from_u64(seed), bounds, backend)
}

/// Float: parts uniform in `[-1, 1]`. Exact: parts `p/q` with `|p| <= 4`,
/// `1 <= q <= 4`. Resampled until `lo <= |det| <= hi`.
pub fn random_invertible_with<R: Rng + ?Sized>(
    rng: &mut R,
    bounds: DetBounds,
    backend: Backend,
) -> Result<LocalOperator> {
    assert!(
        0.0 < bounds.lo && bounds.lo < bounds.hi,
        "determinant bounds must satisfy 0 < lo < hi"
    );
    for _ in 0..MAX_ATTEMPTS {
        let op = match backend {
            Backend::Float => LocalOperator::Float(std::array::from_fn(|_| {
                FloatScalar::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
                    .expect("finite sample")
            })),
            Backend::Exact => LocalOperator::Exact(std::array::from_fn(|_| small_gaussian(rng))),
        };
        let d = match &op {
            LocalOperator::Exact(_) => op.det_exact().modulus_squared().to_f64().unwrap_or(0.0).sqrt(),
            LocalOperator::Float(_) => op.det_float().value().norm(),
        };
        if d > 0.0 && bounds.lo <= d && d <= bounds.hi {
            return Ok(op);
        }
    }
    Err(Error::GenerationFailed {
        attempts: MAX_ATTEMPTS,
    })
}

pub fn random_chain_with<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    bounds: DetBounds,
    backend: Backend,
) -> Result<LocalOperatorChain> {
    (0..n)
        .map(|_| random_invertible_with(rng, bounds, backend))
        .collect::<Result<Vec<_>>>()
        .map(LocalOperatorChain::new)
}

/// Discrepancy between the transformed invariant and the predicted one.
#[derive(Clone, Debug, PartialEq)]
pub enum Residual {
    /// `lhs - rhs`; the law holds iff this is zero.
    Exact(ExactScalar),
    /// Relative log-magnitude error `|dlog| / max(1, |log lhs|)` and wrapped
    /// phase error in radians. When the original invariant passes the default
    /// float zero test, both are 0 if the transformed one does too and
    /// infinite otherwise.
    Float { log_magnitude: f64, phase: f64 },
}

impl Residual {
    pub fn passes(&self, tolerance: f64) -> bool {
        match self {
            Residual::Exact(d) => d.is_zero(),
            Residual::Float {
                log_magnitude,
                phase,
            } => *log_magnitude <= tolerance && *phase <= tolerance,
        }
    }

    /// Single magnitude for ranking residuals (0 for an exact pass).
    pub fn magnitude(&self) -> f64 {
        match self {
            Residual::Exact(d) if d.is_zero() => 0.0,
            Residual::Exact(_) => f64::INFINITY,
            Residual::Float {
                log_magnitude,
                phase,
            } => log_magnitude.max(*phase),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceReport {
    pub kind: InvariantKind,
    /// Invariant of the transformed state.
    pub lhs: InvariantValue,
    /// Invariant of the original state.
    pub original: InvariantValue,
    /// `original.raw * (prod det A_i)^exponent`.
    pub rhs: InvariantScalar,
    pub exponent: BigUint,
    pub residual: Residual,
}

impl CovarianceReport {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.residual.passes(tolerance)
    }
}

/// Checks `P(chain . state) = P(state) (prod det A_i)^(2^((n-2)/2))`.
pub fn covariance_residual(
    kind: InvariantKind,
    state: &PureState,
    chain: &LocalOperatorChain,
    backend: Backend,
) -> Result<CovarianceReport> {
    let transformed = apply_chain(state, chain)?;
    let exponent = covariance_exponent(state.n());
    let lhs = evaluate(kind, &transformed, backend)?;
    let original = evaluate(kind, state, backend)?;
    let (rhs, residual) = match backend {
        Backend::Exact => {
            let factor = chain.det_product_exact().pow(&exponent);
            let rhs = original.raw.as_exact().expect("exact backend") * &factor;
            let diff = lhs.raw.as_exact().expect("exact backend") - &rhs;
            (InvariantScalar::Exact(rhs), Residual::Exact(diff))
        }
        Backend::Float => {
            let e = exponent.to_f64().unwrap_or(f64::INFINITY);
            let factor = chain.det_product_log().powf(e);
            let lhs_raw = lhs.raw.as_float().expect("float backend");
            let orig_raw = original.raw.as_float().expect("float backend");
            let rhs = orig_raw.mul(&factor);
            // an identically vanishing invariant comes back as round-off noise;
            // the transformed side alone can look zero when the chain is
            // ill-conditioned, so the original decides which comparison applies
            let test = ZeroTest::default();
            let residual = if test.invariant_is_zero(kind, state, orig_raw) {
                let zero = test.invariant_is_zero(kind, &transformed, lhs_raw);
                let r = if zero { 0.0 } else { f64::INFINITY };
                Residual::Float {
                    log_magnitude: r,
                    phase: r,
                }
            } else {
                log_residual(lhs_raw, &rhs)
            };
            (InvariantScalar::Float(rhs), residual)
        }
    };
    Ok(CovarianceReport {
        kind,
        lhs,
        original,
        rhs,
        exponent,
        residual,
    })
}

fn log_residual(lhs: &LogComplex, rhs: &LogComplex) -> Residual {
    match (lhs.is_zero(), rhs.is_zero()) {
        (true, true) => Residual::Float {
            log_magnitude: 0.0,
            phase: 0.0,
        },
        (true, false) | (false, true) => Residual::Float {
            log_magnitude: f64::INFINITY,
            phase: f64::INFINITY,
        },
        (false, false) => {
            let dlog = (lhs.log_magnitude - rhs.log_magnitude).abs();
            Residual::Float {
                log_magnitude: dlog / lhs.log_magnitude.abs().max(1.0),
                phase: crate::determinant::wrap_phase_abs(lhs.phase - rhs.phase),
            }
        }
    }
}

/// One random single-qubit operator per position `l = 0..n-1`, each checked
/// against the covariance law. Reports are ordered by `l`.
pub fn per_qubit_covariance_suite<R: Rng + ?Sized>(
    kind: InvariantKind,
    state: &PureState,
    backend: Backend,
    rng: &mut R,
) -> Result<Vec<CovarianceReport>> {
    let n = state.n();
    (0..n)
        .map(|l| {
            let mut ops = vec![LocalOperator::identity(); n];
            ops[l] = random_invertible_with(rng, DetBounds::default(), backend)?;
            covariance_residual(kind, state, &LocalOperatorChain::new(ops), backend)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{gen_chi, gen_dicke, gen_ghz, make_state};

    #[test]
    fn identity_leaves_state_unchanged() {
        let s = gen_chi(3, 6).unwrap();
        for l in 0..6 {
            assert_eq!(apply_single(&s, l, &LocalOperator::identity()).unwrap(), s);
        }
        assert_eq!(apply_chain(&s, &LocalOperatorChain::identity(6)).unwrap(), s);
    }

    #[test]
    fn flip_on_most_significant_qubit() {
        let mut v = vec![ExactScalar::zero(); 4];
        v[0] = ExactScalar::one();
        let s = make_state(2, v).unwrap();
        let out = apply_single(&s, 0, &LocalOperator::flip()).unwrap();
        assert_eq!(out.support(), vec![2]);
        let out = apply_single(&s, 1, &LocalOperator::flip()).unwrap();
        assert_eq!(out.support(), vec![1]);
    }

    #[test]
    fn diagonal_operator_on_ghz() {
        // GHZ stored as (1, 0, 0, 1); diag(1, 2) on qubit 0 gives (1, 0, 0, 2).
        let op = LocalOperator::exact_ints([1, 0, 0, 2]).unwrap();
        let out = apply_single(&gen_ghz(2).unwrap(), 0, &op).unwrap();
        let amps = out.exact_amplitudes().unwrap();
        assert_eq!(amps[0], ExactScalar::from_int(1));
        assert_eq!(amps[3], ExactScalar::from_int(2));
        assert_eq!(out.support(), vec![0, 3]);
        let before = crate::invariant::raw_exact(InvariantKind::TypeI, &gen_ghz(2).unwrap()).unwrap();
        let after = crate::invariant::raw_exact(InvariantKind::TypeI, &out).unwrap();
        assert_eq!(after, &before * &ExactScalar::from_int(2));
    }

    #[test]
    fn flip_everywhere_maps_dicke_to_complement() {
        let chain = LocalOperatorChain::uniform(LocalOperator::flip(), 4);
        let out = apply_chain(&gen_dicke(1, 4).unwrap(), &chain).unwrap();
        assert_eq!(out.amplitudes(), gen_dicke(3, 4).unwrap().amplitudes());
    }

    #[test]
    fn chain_length_checked() {
        let s = gen_ghz(4).unwrap();
        assert_eq!(
            apply_chain(&s, &LocalOperatorChain::identity(3)),
            Err(Error::DimensionMismatch {
                expected: 4,
                found: 3
            })
        );
        assert!(matches!(
            apply_single(&s, 4, &LocalOperator::identity()),
            Err(Error::IndexOutOfRange { what: "qubit", .. })
        ));
    }

    #[test]
    fn singular_operators_rejected() {
        assert_eq!(
            LocalOperator::exact_ints([1, 2, 2, 4]),
            Err(Error::SingularOperator)
        );
        let f = |v: f64| FloatScalar::real(v).unwrap();
        assert_eq!(
            LocalOperator::float([f(1.0), f(0.0), f(0.0), f(0.05)], 0.1),
            Err(Error::SingularOperator)
        );
    }

    #[test]
    fn random_operator_is_deterministic() {
        for backend in [Backend::Exact, Backend::Float] {
            let a = random_invertible(42, DetBounds::default(), backend).unwrap();
            let b = random_invertible(42, DetBounds::default(), backend).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.backend(), backend);
        }
    }

    #[test]
    fn random_operators_respect_bounds() {
        let bounds = DetBounds { lo: 0.1, hi: 2.0 };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for backend in [Backend::Exact, Backend::Float] {
            for _ in 0..100 {
                let op = random_invertible_with(&mut rng, bounds, backend).unwrap();
                let d = op.det_float().value().norm();
                assert!((bounds.lo..=bounds.hi).contains(&d), "{d}");
            }
        }
    }

    #[test]
    fn impossible_bounds_fail() {
        let bounds = DetBounds { lo: 1e6, hi: 1e7 };
        assert_eq!(
            random_invertible(1, bounds, Backend::Float),
            Err(Error::GenerationFailed { attempts: 1000 })
        );
    }

    #[test]
    fn ghz_two_qubit_covariance_by_hand() {
        let op = LocalOperator::exact_ints([1, 0, 0, 2]).unwrap();
        let chain = LocalOperatorChain::new(vec![op, LocalOperator::identity()]);
        let r = covariance_residual(InvariantKind::TypeI, &gen_ghz(2).unwrap(), &chain, Backend::Exact)
            .unwrap();
        assert_eq!(r.exponent, BigUint::from(1u32));
        assert_eq!(r.lhs.raw, InvariantScalar::Exact(ExactScalar::from_int(2)));
        assert_eq!(r.rhs, InvariantScalar::Exact(ExactScalar::from_int(2)));
        // unit-norm view: 1/2 * 2 = 1 before the transform scales the norm
        assert_eq!(r.original.normalized, InvariantScalar::Exact(ExactScalar::ratio(1, 2)));
        assert!(r.passes(0.0));
    }

    #[test]
    fn inverse_roundtrip_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s = gen_chi(4, 4).unwrap();
        for l in 0..4 {
            let op = random_invertible_with(&mut rng, DetBounds::default(), Backend::Exact).unwrap();
            let there = apply_single(&s, l, &op).unwrap();
            let back = apply_single(&there, l, &op.inverse()).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn per_qubit_suite_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = per_qubit_covariance_suite(InvariantKind::TypeI, &gen_ghz(2).unwrap(), Backend::Exact, &mut rng)
            .unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|x| x.exponent == BigUint::from(1u32) && x.passes(0.0)));
    }

    #[test]
    fn float_residual_of_vanishing_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = gen_chi(5, 6).unwrap().converted(Backend::Float);
        let chain = random_chain_with(&mut rng, 6, DetBounds::default(), Backend::Float).unwrap();
        for kind in InvariantKind::ALL {
            let r = covariance_residual(kind, &s, &chain, Backend::Float).unwrap();
            assert!(r.passes(1e-8), "{kind}: {:?}", r.residual);
        }
    }
}
