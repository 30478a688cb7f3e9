//! Exact arithmetic: rationals, sparse polynomials, rational functions,
//! gcds, resultants, restricted factorization and fraction-free linear algebra.

pub mod factor;
pub mod gcd;
pub mod matrix;
pub mod mpoly;
pub mod ratfunc;
pub mod var;

use thiserror::Error;

pub use factor::{factor, FactorOutcome};
pub use gcd::{gcd, resultant};
pub use matrix::{ff_solve, FFMatrix, SolveResult};
pub use mpoly::{MPoly, Monomial};
pub use ratfunc::RatFunc;
pub use var::{Var, VarKind};

/// Arbitrary-precision rational number, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("not eliminable: variable {0} does not occur with positive degree")]
    NotEliminable(String),
    #[error("pole: denominator vanishes identically")]
    Pole,
}

/// Parses a polynomial in test code, resolving names by their usual roles.
#[cfg(test)]
pub(crate) fn parse_poly(s: &str) -> MPoly {
    let r = parse_rat(s);
    assert!(r.is_polynomial(), "not a polynomial: {s}");
    r.num().clone()
}

#[cfg(test)]
pub(crate) fn parse_rat(s: &str) -> RatFunc {
    crate::cli::parse::parse_expr(s, &crate::cli::parse::default_resolver).expect("test expression")
}
