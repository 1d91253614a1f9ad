//! Exact arithmetic for the corank program of Clifford-cyclotomic groups.
//!
//! The crate computes relative class numbers of 2-power and 3·2-power
//! cyclotomic fields from generalized Bernoulli numbers, Eichler masses of
//! the totally definite quaternion algebras over their real subfields,
//! class-number ladders of quadratic orders, masses of finite tree
//! quotients, and certified evaluations of the genus bounds built from
//! those quantities.
//!
//! Modules:
//! - [`cyclo`]: the ring ℤ[ζ_m] with 2 and other denominators, norms,
//!   Galois action, total positivity and square testing.
//! - [`interval`]: outward-rounded dyadic interval arithmetic.
//! - [`chars`]: Dirichlet characters, conductors, B₁ and B₂ values.
//! - [`classmass`]: h⁻, ζ_F(−1), Eichler masses and class-number ladders.
//! - [`orders`]: conductor ladders of quadratic orders and the
//!   ramifying/inverting classification.
//! - [`graph`]: Kurihara graphs and finite group actions on trees.
//! - [`bounds`]: symbolic bound expressions and the genus chains.
//! - [`gates`]: unitary matrices over ℤ[ζ_n, 1/2] and Hamilton quaternions.
//! - [`report`]: serializable records and verification suites for the CLI.

pub mod bounds;
pub mod chars;
pub mod classmass;
pub mod cyclo;
mod error;
pub mod gates;
pub mod graph;
pub mod interval;
pub mod orders;
pub mod report;
pub mod util;

pub use error::{Error, Result};
