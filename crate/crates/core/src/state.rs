//! Even-n pure states in exact or floating form.
//!
//! Amplitudes are stored densely, index `i` holding the coefficient of the
//! basis state `|i>` with qubit 0 as the most significant bit. States are
//! never normalized implicitly: generators emit integer vectors and the
//! squared norm is carried alongside for reporting.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Field, FloatScalar};

/// Largest supported qubit count for dense storage.
pub const MAX_QUBITS: usize = 20;

/// Arithmetic backend of a state or an evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Amplitudes {
    Exact(Vec<ExactScalar>),
    Float(Vec<FloatScalar>),
}

impl Amplitudes {
    pub fn len(&self) -> usize {
        match self {
            Amplitudes::Exact(v) => v.len(),
            Amplitudes::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn backend(&self) -> Backend {
        match self {
            Amplitudes::Exact(_) => Backend::Exact,
            Amplitudes::Float(_) => Backend::Float,
        }
    }

    fn is_nonzero_at(&self, i: usize) -> bool {
        match self {
            Amplitudes::Exact(v) => !v[i].is_zero(),
            Amplitudes::Float(v) => !v[i].is_zero(),
        }
    }
}

impl From<Vec<ExactScalar>> for Amplitudes {
    fn from(v: Vec<ExactScalar>) -> Self {
        Amplitudes::Exact(v)
    }
}

impl From<Vec<FloatScalar>> for Amplitudes {
    fn from(v: Vec<FloatScalar>) -> Self {
        Amplitudes::Float(v)
    }
}

/// Squared norm `sum |a_i|^2` in the state's own arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub enum NormSquared {
    Exact(BigRational),
    Float(f64),
}

impl NormSquared {
    pub fn ln(&self) -> f64 {
        match self {
            NormSquared::Exact(r) => crate::scalar::ln_rational(r),
            NormSquared::Float(v) => v.ln(),
        }
    }
}

impl std::fmt::Display for NormSquared {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NormSquared::Exact(r) => f.pad(&r.to_string()),
            NormSquared::Float(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n: usize,
    amplitudes: Amplitudes,
    label: Option<String>,
}

pub(crate) fn check_qubit_count(n: usize) -> Result<()> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidQubitCount(n));
    }
    if n > MAX_QUBITS {
        return Err(Error::CapacityExceeded {
            what: "qubit count",
            value: n,
            limit: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Wraps `amplitudes` verbatim as an `n`-qubit state.
pub fn make_state(n: usize, amplitudes: impl Into<Amplitudes>) -> Result<PureState> {
    let amplitudes = amplitudes.into();
    check_qubit_count(n)?;
    let expected = 1usize << n;
    if amplitudes.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: amplitudes.len(),
        });
    }
    if !(0..expected).any(|i| amplitudes.is_nonzero_at(i)) {
        return Err(Error::ZeroState);
    }
    Ok(PureState {
        n,
        amplitudes,
        label: None,
    })
}

impl PureState {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn amplitudes(&self) -> &Amplitudes {
        &self.amplitudes
    }

    pub fn backend(&self) -> Backend {
        self.amplitudes.backend()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn exact_amplitudes(&self) -> Option<&[ExactScalar]> {
        match &self.amplitudes {
            Amplitudes::Exact(v) => Some(v),
            Amplitudes::Float(_) => None,
        }
    }

    pub fn float_amplitudes(&self) -> Option<&[FloatScalar]> {
        match &self.amplitudes {
            Amplitudes::Float(v) => Some(v),
            Amplitudes::Exact(_) => None,
        }
    }

    /// Exact view of the amplitudes; doubles convert losslessly.
    pub fn to_exact(&self) -> Vec<ExactScalar> {
        match &self.amplitudes {
            Amplitudes::Exact(v) => v.clone(),
            Amplitudes::Float(v) => v.iter().map(ExactScalar::from_float).collect(),
        }
    }

    /// Float view of the amplitudes; exact values round to nearest.
    pub fn to_float(&self) -> Vec<FloatScalar> {
        match &self.amplitudes {
            Amplitudes::Float(v) => v.clone(),
            Amplitudes::Exact(v) => v.iter().map(ExactScalar::to_float).collect(),
        }
    }

    /// Same state converted to `backend`.
    pub fn converted(&self, backend: Backend) -> PureState {
        let amplitudes = match backend {
            Backend::Exact => Amplitudes::Exact(self.to_exact()),
            Backend::Float => Amplitudes::Float(self.to_float()),
        };
        PureState {
            n: self.n,
            amplitudes,
            label: self.label.clone(),
        }
    }

    pub fn norm_squared(&self) -> NormSquared {
        match &self.amplitudes {
            Amplitudes::Exact(v) => NormSquared::Exact(
                v.iter()
                    .fold(BigRational::zero(), |acc, a| acc + a.modulus_squared()),
            ),
            Amplitudes::Float(v) => NormSquared::Float(v.iter().map(FloatScalar::norm_sqr).sum()),
        }
    }

    /// Number of strictly nonzero amplitudes.
    pub fn nonzero_count(&self) -> usize {
        (0..self.dim())
            .filter(|&i| self.amplitudes.is_nonzero_at(i))
            .count()
    }

    /// Indices of nonzero amplitudes in increasing order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.amplitudes.is_nonzero_at(i))
            .collect()
    }

    /// Every amplitude multiplied by `c`.
    pub fn scaled(&self, c: &ExactScalar) -> Result<PureState> {
        let amplitudes = match &self.amplitudes {
            Amplitudes::Exact(v) => Amplitudes::Exact(v.iter().map(|a| a * c).collect()),
            Amplitudes::Float(v) => {
                let c = c.to_float();
                Amplitudes::Float(v.iter().map(|a| a * &c).collect())
            }
        };
        make_state(self.n, amplitudes)
    }

    pub(crate) fn from_parts(n: usize, amplitudes: Amplitudes, label: Option<String>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << n);
        PureState {
            n,
            amplitudes,
            label,
        }
    }
}

/// Integer-valued sparse state: `(index, +1 | -1)` terms, exact backend.
fn signed_state(n: usize, terms: impl IntoIterator<Item = (usize, i64)>) -> Result<PureState> {
    let mut amps = vec![0i64; 1 << n];
    for (i, c) in terms {
        amps[i] += c;
    }
    make_state(
        n,
        amps.into_iter().map(ExactScalar::from_int).collect::<Vec<_>>(),
    )
}

/// `|0...0> + |1...1>` (norm squared 2).
pub fn gen_ghz(n: usize) -> Result<PureState> {
    check_qubit_count(n)?;
    Ok(signed_state(n, [(0, 1), ((1 << n) - 1, 1)])?.with_label("ghz"))
}

/// Dicke state `|l,n>`: every basis index of Hamming weight `l`, coefficient 1.
pub fn gen_dicke(l: usize, n: usize) -> Result<PureState> {
    check_qubit_count(n)?;
    if l == 0 || l >= n {
        return Err(Error::InvalidExcitation { l, n });
    }
    let terms = (0..1usize << n)
        .filter(|i| i.count_ones() as usize == l)
        .map(|i| (i, 1));
    Ok(signed_state(n, terms)?.with_label(format!("dicke{l}")))
}

/// `|W> = |1,n>`.
pub fn gen_w(n: usize) -> Result<PureState> {
    Ok(gen_dicke(1, n)?.with_label("w"))
}

/// The seven `2^(n/2)`-term families `chi1..chi7`, as ±1 integer vectors
/// (norm squared `2^(n/2)`).
pub fn gen_chi(k: usize, n: usize) -> Result<PureState> {
    if !(1..=7).contains(&k) {
        return Err(Error::InvalidFamily(k));
    }
    check_qubit_count(n)?;
    let terms = chi_terms(k, n)?;
    Ok(signed_state(n, terms)?.with_label(format!("chi{k}")))
}

fn chi_terms(k: usize, n: usize) -> Result<Vec<(usize, i64)>> {
    let half = 1usize << (n / 2); // 2^(n/2)
    let full = 1usize << n; // 2^n
    let mut t = Vec::with_capacity(half + 1);
    match k {
        1 => {
            t.extend((0..=half - 2).map(|m| ((half + 1) * m, 1)));
            t.push((full - 1, -1));
        }
        2 => {
            t.extend((1..half).map(|m| ((half - 1) * m, 1)));
            t.push((full - half, -1));
        }
        3 => {
            // sum over m = 0 ..= 2^(n/2-1) - 2, empty for n = 2
            for m in 0..(half / 2).saturating_sub(1) {
                t.push((2 * half * m + 4 * m, 1));
                t.push((2 * half * m + 4 * m + 3, 1));
            }
            t.push((full - 4, 1));
            t.push((full - 1, -1));
        }
        4 => {
            for m in 1..half / 2 {
                t.push((2 * half * m - 4 * m + 2, 1));
                t.push((2 * half * m - 4 * m + 1, 1));
            }
            t.push((full - 2 * half + 2, 1));
            t.push((full - 2 * half + 1, -1));
        }
        5 => {
            let q = half / 2; // 2^(n/2-1)
            t.extend((0..q).map(|m| ((q + 1) * m, 1)));
            t.extend((0..q.saturating_sub(1)).map(|m| ((q + 1) * m + 3 * (full / 4), 1)));
            t.push((full - 1, -1));
        }
        6 => {
            let q = half / 2;
            t.extend((1..=q).map(|m| (full / 2 + (q - 1) * m, 1)));
            t.extend((1..q).map(|m| (full / 4 + (q - 1) * m, 1)));
            t.push((full / 2 - q, -1));
        }
        7 => match n {
            2 => return Err(Error::UnsupportedFamily { k, n }),
            4 => t.extend([(0, 1), (6, 1), (9, 1), (15, -1)]),
            _ => {
                let shift = 3 * (full / 4);
                for m in 0..half / 8 {
                    let even = 2 * half * m + 8 * m;
                    let odd = (2 * m + 1) * half + 8 * m;
                    for base in [even, odd + 2, even + 5, odd + 7] {
                        t.push((base, 1));
                        t.push((base + shift, 1));
                    }
                }
                // the trailing -2|2^n - 1> cancels the +1 contributed by the last sum
                t.push((full - 1, -2));
            }
        },
        _ => unreachable!("family index checked by caller"),
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &PureState) -> Vec<(usize, i64)> {
        let amps = s.exact_amplitudes().unwrap();
        s.support()
            .into_iter()
            .map(|i| {
                let re = &amps[i].re;
                assert!(re.is_integer() && amps[i].im.is_zero());
                (i, num_traits::ToPrimitive::to_i64(re.numer()).unwrap())
            })
            .collect()
    }

    #[test]
    fn make_state_validates_shape() {
        let basis = |len: usize| {
            let mut v = vec![ExactScalar::zero(); len];
            v[0] = ExactScalar::one();
            v
        };
        let s = make_state(2, basis(4)).unwrap();
        assert_eq!(s.support(), vec![0]);
        assert_eq!(make_state(3, basis(8)), Err(Error::InvalidQubitCount(3)));
        assert_eq!(make_state(0, basis(1)), Err(Error::InvalidQubitCount(0)));
        assert_eq!(
            make_state(2, basis(8)),
            Err(Error::DimensionMismatch {
                expected: 4,
                found: 8
            })
        );
        assert_eq!(
            make_state(2, vec![ExactScalar::zero(); 4]),
            Err(Error::ZeroState)
        );
        assert!(matches!(
            make_state(22, basis(4)),
            Err(Error::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn chi1_four_qubits_matches_printed_form() {
        let amps: Vec<ExactScalar> = (0..16)
            .map(|i| match i {
                0 | 5 | 10 => ExactScalar::ratio(1, 2),
                15 => ExactScalar::ratio(-1, 2),
                _ => ExactScalar::zero(),
            })
            .collect();
        let s = make_state(4, amps).unwrap();
        assert_eq!(s.support(), vec![0, 5, 10, 15]);
        assert_eq!(ints(&gen_chi(1, 4).unwrap()), vec![(0, 1), (5, 1), (10, 1), (15, -1)]);
    }

    #[test]
    fn four_qubit_chi_states() {
        assert_eq!(ints(&gen_chi(3, 4).unwrap()), vec![(0, 1), (3, 1), (12, 1), (15, -1)]);
        assert_eq!(ints(&gen_chi(7, 4).unwrap()), vec![(0, 1), (6, 1), (9, 1), (15, -1)]);
        assert_eq!(
            gen_chi(5, 4).unwrap().amplitudes(),
            gen_chi(3, 4).unwrap().amplitudes()
        );
        assert_eq!(
            gen_chi(7, 6).unwrap().amplitudes(),
            gen_chi(5, 6).unwrap().amplitudes()
        );
    }

    #[test]
    fn chi_errors() {
        assert_eq!(gen_chi(7, 2), Err(Error::UnsupportedFamily { k: 7, n: 2 }));
        assert_eq!(gen_chi(0, 4), Err(Error::InvalidFamily(0)));
        assert_eq!(gen_chi(8, 4), Err(Error::InvalidFamily(8)));
        assert_eq!(gen_chi(1, 5), Err(Error::InvalidQubitCount(5)));
    }

    #[test]
    fn chi_term_counts() {
        for n in (2..=12).step_by(2) {
            for k in 1..=7 {
                if k == 7 && n == 2 {
                    continue;
                }
                let s = gen_chi(k, n).unwrap();
                assert_eq!(s.nonzero_count(), 1 << (n / 2), "chi{k} n={n}");
                let t = ints(&s);
                assert_eq!(t.iter().filter(|(_, c)| *c == -1).count(), 1, "chi{k} n={n}");
                assert!(t.iter().all(|(_, c)| c.abs() == 1));
            }
        }
        assert_eq!(gen_chi(1, 6).unwrap().nonzero_count(), 8);
    }

    #[test]
    fn ghz_support() {
        assert_eq!(gen_ghz(2).unwrap().support(), vec![0, 3]);
        assert_eq!(gen_ghz(4).unwrap().support(), vec![0, 15]);
        assert_eq!(gen_ghz(6).unwrap().support(), vec![0, 63]);
        assert_eq!(gen_ghz(4).unwrap().nonzero_count(), 2);
        assert_eq!(
            gen_ghz(4).unwrap().norm_squared(),
            NormSquared::Exact(BigRational::from_integer(2.into()))
        );
        assert_eq!(gen_ghz(3), Err(Error::InvalidQubitCount(3)));
    }

    #[test]
    fn dicke_support_by_enumeration() {
        assert_eq!(gen_dicke(1, 2).unwrap().support(), vec![1, 2]);
        assert_eq!(gen_dicke(2, 4).unwrap().support(), vec![3, 5, 6, 9, 10, 12]);
        assert_eq!(gen_dicke(3, 4).unwrap().support(), vec![7, 11, 13, 14]);
        assert_eq!(gen_dicke(2, 4).unwrap().nonzero_count(), 6);
        assert_eq!(gen_dicke(0, 4), Err(Error::InvalidExcitation { l: 0, n: 4 }));
        assert_eq!(gen_dicke(4, 4), Err(Error::InvalidExcitation { l: 4, n: 4 }));
        assert_eq!(gen_w(4).unwrap().amplitudes(), gen_dicke(1, 4).unwrap().amplitudes());
    }

    #[test]
    fn dicke_counts_are_binomial() {
        fn binom(n: usize, k: usize) -> usize {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for n in (2..=10).step_by(2) {
            for l in 1..n {
                let s = gen_dicke(l, n).unwrap();
                assert_eq!(s.nonzero_count(), binom(n, l));
                assert!(ints(&s).iter().all(|&(_, c)| c == 1));
            }
        }
    }

    #[test]
    fn generators_roundtrip_through_make_state() {
        for s in [gen_ghz(6).unwrap(), gen_dicke(3, 6).unwrap(), gen_chi(6, 8).unwrap()] {
            let again = make_state(s.n(), s.amplitudes().clone()).unwrap();
            assert_eq!(again.amplitudes(), s.amplitudes());
        }
    }
}
