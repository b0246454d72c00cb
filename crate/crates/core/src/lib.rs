//! SLOCC polynomial invariants of even-`n` qubit states.
//!
//! Four ways of folding the `2^n` amplitudes into a `2^(n/2)` square
//! matrix give four determinant invariants. Each is multiplied by
//! `(prod det A_i)^(2^((n-2)/2))` under an invertible local operator
//! `A_1 ⊗ ... ⊗ A_n`, so their zero patterns separate SLOCC classes.
//!
//! ```
//! use slocc::{gen_chi, evaluate, Backend, InvariantKind};
//!
//! let chi1 = gen_chi(1, 4).unwrap();
//! let v = evaluate(InvariantKind::TypeI, &chi1, Backend::Exact).unwrap();
//! assert_eq!(v.raw.as_exact().unwrap().to_string(), "-1");
//! ```

pub mod classify;
pub mod cli;
pub mod determinant;
pub mod error;
pub mod invariant;
pub mod io;
pub mod layout;
pub mod sampling;
pub mod scalar;
pub mod slocc;
pub mod state;

pub use classify::{compare, measure, signature, Measure, Outcome, Signature, Verdict, ZeroTest};
pub use determinant::{cofactor_oracle, det_exact, det_float, LogComplex, Matrix};
pub use error::{Error, Result};
pub use invariant::{covariance_exponent, degree, evaluate, evaluate_all, InvariantScalar, InvariantValue};
pub use io::{parse_state, read_state, serialize_state};
pub use layout::{build_exact, build_float, index_map, matrix_dim, CoeffMatrix, InvariantKind};
pub use scalar::{ExactScalar, Field, FloatScalar};
pub use slocc::{
    apply_chain, apply_single, covariance_residual, random_chain_with, random_invertible, DetBounds,
    LocalOperator, LocalOperatorChain, Residual,
};
pub use state::{gen_chi, gen_dicke, gen_ghz, gen_w, make_state, Amplitudes, Backend, PureState};
