//! Exact arithmetic kernel: rationals, sparse multivariate polynomials,
//! normalized rational functions, the `z d/dz` operator, closed-form
//! summation, and power-series expansion.

mod affine;
mod gcd;
mod monomial;
mod poly;
mod ratfunc;
mod series;
mod summation;

pub use affine::AffineForm;
pub use gcd::{content_in, gcd};
pub use monomial::{Monomial, Var};
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use series::{series_expand, Series};
pub use summation::{closed_sum, power_sum};

use thiserror::Error;

/// Arbitrary-precision rational, always stored in lowest terms.
pub type Rational = num_rational::BigRational;

/// Integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("denominator vanishes identically after setting {0} = 1")]
    VanishingDenominator(String),
    #[error("denominator vanishes at t = 0; no power series expansion")]
    NoExpansionAtZero,
    #[error("invalid size form {form}: {reason}")]
    InvalidAffineForm { form: String, reason: String },
    #[error("polynomial mentions {0}, which is not a summation variable")]
    ForeignVariable(String),
}

/// `p = Σ_r p_r·v^r`; returns `[p_0, .., p_R]`.
pub fn poly_coeffs_in(p: &Polynomial, v: &Var) -> Vec<Polynomial> {
    p.coeffs_in(v)
}

/// `v·∂f/∂v`.
pub fn theta(f: &RationalFunction, v: &Var) -> RationalFunction {
    f.theta(v)
}

/// Substitutes 1 for every variable in `vars`.
pub fn eval_at_one(f: &RationalFunction, vars: &[Var]) -> Result<RationalFunction, AlgebraError> {
    f.eval_at_one(vars)
}

pub fn canonical_string(f: &RationalFunction) -> String {
    f.canonical_string()
}

/// The generating-function variable.
pub fn t_var() -> Var {
    Var::new("t")
}
