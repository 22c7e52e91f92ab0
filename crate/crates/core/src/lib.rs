//! Exact conversion between rational input-output equations and their
//! state-space realizations.
//!
//! The arithmetic kernel ([`poly`], [`ratfunc`], [`matrix`]) is generic over
//! an exact coefficient field; the differential layers work over the Gaussian
//! rationals through the aliases below.

pub mod diff;
pub mod error;
pub mod expr;
pub mod matrix;
pub mod observable;
pub mod poly;
pub mod ratfunc;
pub mod real;
pub mod scalar;

pub use diff::{IOEquation, Mobius, Parametrization, Realization};
pub use error::{Error, Result};
pub use expr::{parse_expr, parse_poly, print_poly, print_ratfunc, ProblemFile};
pub use matrix::{nullspace, solve_linear, RFMatrix};
pub use poly::{gcd, resultant, MPoly, Monomial, Var, VarSet};
pub use ratfunc::RationalFunction;
pub use scalar::{Coeff, GaussRat};

/// Coefficient field `ℚ(i)`.
pub type QI = GaussRat;
/// Polynomial over `ℚ(i)`.
pub type Poly = MPoly<QI>;
/// Rational function over `ℚ(i)`.
pub type RatFunc = RationalFunction<QI>;
/// Polynomial over `ℚ`.
pub type QPoly = MPoly<num_rational::BigRational>;
/// Rational function over `ℚ`.
pub type QRatFunc = RationalFunction<num_rational::BigRational>;
