//! Pushforwards of characteristic classes along fibre bundles, computed
//! symbolically.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! cohomology rings are finitely presented graded-commutative algebras.

pub mod algebra;
pub mod charring;
pub mod error;
pub mod gysin;
pub mod loops;
pub mod symmetric;
pub mod verify;
pub mod weyl;

pub use algebra::{GradedPolynomial, Rational, RingPresentation};
pub use error::{Error, Result};
