//! Source functions of elliptic, trigonometric and rational type, every
//! determinant form they admit, and a seeded identity checker.
//!
//! The crate is `no_std` (with `alloc`). Two scalar fields are provided:
//! [`C64`] for numerical work and [`Q`] (big rationals) for exact checks.

#![no_std]

extern crate alloc;

pub mod degeneration;
pub mod detrep;
pub mod engine;
pub mod error;
pub mod field;
pub mod linalg;
pub mod qidentity;
pub mod source;
pub mod special;
pub mod specialization;
pub mod symmetrization;
pub mod wall_crossing;

pub use error::{EvalError, Result};
pub use field::{FieldKind, Scalar, C64, Q};
pub use linalg::Matrix;
pub use source::{EllipticParams, Params, RatParams, Regime, Side, TrigParams};
pub use special::Truncation;
