//! Exact rational algebra: graded-commutative polynomials, triangular
//! quotient rings, and linear algebra over the rationals.

pub mod generators;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod ring;

pub use generators::{Generator, GeneratorTable, Monomial};
pub use linalg::{determinant, nullspace, rank, Subspace};
pub use parse::{parse_polynomial, parse_with};
pub use poly::GradedPolynomial;
pub use rational::{bernoulli, binomial, factorial, format_rational, int, rat, Rational};
pub use ring::{substitute, RewriteRule, RingMap, RingPresentation, TensorRing};
