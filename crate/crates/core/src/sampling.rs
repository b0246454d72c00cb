//! Seeded random states for tests, examples and benchmarks.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::error::Result;
use crate::scalar::{ExactScalar, FloatScalar};
use crate::state::{make_state, Amplitudes, Backend, PureState};

/// Random `p/q` with `|p| <= 4`, `1 <= q <= 4`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    BigRational::new(
        BigInt::from(rng.gen_range(-4i64..=4)),
        BigInt::from(rng.gen_range(1i64..=4)),
    )
}

/// Random Gaussian rational with both parts from [`small_rational`].
pub fn small_gaussian<R: Rng + ?Sized>(rng: &mut R) -> ExactScalar {
    ExactScalar::new(small_rational(rng), small_rational(rng))
}

/// Random nonzero rational `p/q`, `1 <= |p| <= 9`, `1 <= q <= 9`.
pub fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let p = rng.gen_range(1i64..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
    BigRational::new(BigInt::from(p), BigInt::from(rng.gen_range(1i64..=9)))
}

/// Dense random state. Exact amplitudes come from [`small_gaussian`]; float
/// amplitudes have parts uniform in `[-1, 1]`. Redrawn if all zero.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, n: usize, backend: Backend) -> Result<PureState> {
    let len = 1usize.checked_shl(n as u32).unwrap_or(0);
    loop {
        let amplitudes = match backend {
            Backend::Exact => Amplitudes::Exact((0..len).map(|_| small_gaussian(rng)).collect()),
            Backend::Float => Amplitudes::Float(
                (0..len)
                    .map(|_| {
                        FloatScalar::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
                            .expect("finite sample")
                    })
                    .collect(),
            ),
        };
        match make_state(n, amplitudes) {
            Err(crate::Error::ZeroState) => continue,
            other => return other,
        }
    }
}
