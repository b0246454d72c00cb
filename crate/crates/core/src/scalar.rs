//! Exact (Gaussian rational) and floating complex scalars.
//!
//! Both implement [`Field`], the small arithmetic surface the generic state
//! and determinant code is written against.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arithmetic needed by state transforms and determinant routines.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
}

/// Complex number with arbitrary-precision rational parts.
///
/// `BigRational` keeps every part in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl ExactScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(BigRational::from_integer(v.into()))
    }

    /// `p/q` as a real scalar. Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::real(BigRational::new(p.into(), q.into()))
    }

    pub fn complex(re: (i64, i64), im: (i64, i64)) -> Self {
        Self {
            re: BigRational::new(re.0.into(), re.1.into()),
            im: BigRational::new(im.0.into(), im.1.into()),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|z|^2 = re^2 + im^2`, always rational.
    pub fn modulus_squared(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            re: &self.re * c,
            im: &self.im * c,
        }
    }

    /// Natural log of the modulus; `-inf` for zero.
    pub fn ln_modulus(&self) -> f64 {
        0.5 * ln_rational(&self.modulus_squared())
    }

    pub fn to_float(&self) -> FloatScalar {
        FloatScalar(Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im)))
    }

    /// Lossless conversion of a finite double pair (doubles are dyadic rationals).
    pub fn from_float(z: &FloatScalar) -> Self {
        Self {
            re: BigRational::from_float(z.0.re).expect("FloatScalar is finite"),
            im: BigRational::from_float(z.0.im).expect("FloatScalar is finite"),
        }
    }

    pub fn pow(&self, exp: &num_bigint::BigUint) -> Self {
        let mut acc = Self::one();
        for bit in (0..exp.bits()).rev() {
            acc = Field::mul(&acc, &acc);
            if exp.bit(bit) {
                acc = Field::mul(&acc, self);
            }
        }
        acc
    }
}

impl Field for ExactScalar {
    fn zero() -> Self {
        Self::real(BigRational::zero())
    }
    fn one() -> Self {
        Self::real(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Self {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        Self {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        Self {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
    fn neg(&self) -> Self {
        Self {
            re: -&self.re,
            im: -&self.im,
        }
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        let m = self.modulus_squared();
        Some(Self {
            re: &self.re / &m,
            im: -&self.im / &m,
        })
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Double-precision complex scalar; finite by construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloatScalar(Complex64);

impl FloatScalar {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if re.is_finite() && im.is_finite() {
            Ok(Self(Complex64::new(re, im)))
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn real(re: f64) -> Result<Self> {
        Self::new(re, 0.0)
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.norm_sqr()
    }
}

// Arithmetic on finite inputs can still overflow; values are carried as-is
// and the determinant code tolerates non-finite intermediates.
impl Field for FloatScalar {
    fn zero() -> Self {
        Self(Complex64::new(0.0, 0.0))
    }
    fn one() -> Self {
        Self(Complex64::new(1.0, 0.0))
    }
    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        Self(self.0 + rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Self(self.0 - rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Self(self.0 * rhs.0)
    }
    fn neg(&self) -> Self {
        Self(-self.0)
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            None
        } else {
            Some(Self(self.0.inv()))
        }
    }
}

impl From<FloatScalar> for Complex64 {
    fn from(z: FloatScalar) -> Self {
        z.0
    }
}

macro_rules! forward_ops {
    ($t:ty) => {
        impl Add for &$t {
            type Output = $t;
            fn add(self, rhs: Self) -> $t {
                Field::add(self, rhs)
            }
        }
        impl Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: Self) -> $t {
                Field::sub(self, rhs)
            }
        }
        impl Mul for &$t {
            type Output = $t;
            fn mul(self, rhs: Self) -> $t {
                Field::mul(self, rhs)
            }
        }
        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                Field::neg(self)
            }
        }
    };
}

forward_ops!(ExactScalar);
forward_ops!(FloatScalar);

/// Natural log of a rational; `-inf` for zero, `NaN` for negative input.
///
/// Works from the leading bits of numerator and denominator, so values far
/// outside the double range still get an accurate logarithm.
pub fn ln_rational(r: &BigRational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    if r.is_negative() {
        return f64::NAN;
    }
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

pub(crate) fn ln_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map(|v| v.abs().ln()).unwrap_or(f64::NAN);
    }
    let shift = bits - 64;
    let top = (x.abs() >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Nearest double; saturates to `0` or `±inf` outside the double range.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if let Some(v) = r.to_f64() {
        if v.is_finite() && v != 0.0 {
            return v;
        }
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * ln_rational(&r.abs()).exp()
}

/// Parses `p/q` or a bare integer `p`; `q` must be nonzero.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let numer: BigInt = p
        .parse()
        .map_err(|_| format!("invalid numerator {p:?} in {s:?}"))?;
    let denom: BigInt = q
        .parse()
        .map_err(|_| format!("invalid denominator {q:?} in {s:?}"))?;
    if denom.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(numer, denom))
}

/// Always `p/q`, lowest terms, positive denominator (`3/1`, `-1/2`, `0/1`).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Least common multiple of the denominators of both parts.
pub(crate) fn denominator_lcm(z: &ExactScalar) -> BigInt {
    z.re.denom().lcm(z.im.denom())
}
