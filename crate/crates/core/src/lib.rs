//! Exact Newton-polyhedron invariants and singularity classification for
//! bivariate phase functions, plus a numerical verifier for the oscillatory
//! decay rates the classification predicts.
//!
//! The crate is organised in layers:
//!
//! * [`poly`] — exact arithmetic: sparse bivariate polynomials and truncated
//!   jets over `BigRational`, Taylor division, critical-point series, real
//!   root isolation with multiplicities, and univariate factorisation over Q.
//! * [`newton`] — Newton polyhedra, Newton distance, principal faces and
//!   principal weights.
//! * [`homog`] — weighted-homogeneous forms: factorisation into root factors,
//!   maximal root multiplicity on the unit circle, height, adaptedness.
//! * [`normalform`] — the classification decision tree (A / D / E types),
//!   adapted shears, region membership, and the one-parameter A2 normal form.
//! * [`oscint`] — oscillatory integrals with Filon-type panel quadrature,
//!   decay-exponent fits, dyadic rescaling checks, van der Corput spot checks.
//! * [`cli`] — expression parsing, JSON reports, SVG diagrams and the
//!   subcommand drivers used by the `phasetype` binary.
//!
//! All classification arithmetic is exact; floating point only enters in the
//! quadrature engine and the fitted exponents it produces.

pub mod cli;
pub mod homog;
pub mod newton;
pub mod normalform;
pub mod oscint;
pub mod poly;

pub use poly::{Jet, Polynomial, Rational};
