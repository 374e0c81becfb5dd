use std::collections::BTreeMap;
use std::fmt;

use super::monomial::{Monomial, Var};
use super::poly::Polynomial;
use super::{rat, AlgebraError};

/// Size form `L(a) = c0 + Σ c_k·a_k` with integer coefficients.
///
/// A usable form has every `c_k ≥ 1` and `L(1, .., 1) ≥ 1`; that is exactly
/// what makes every part contribute at least one power of `t`. The fields are
/// public so that invalid forms can be represented and reported; use
/// [`AffineForm::violations`] or [`AffineForm::validated`] before summing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineForm {
    pub constant: i64,
    pub coeffs: BTreeMap<Var, i64>,
}

impl AffineForm {
    pub fn new(constant: i64, coeffs: impl IntoIterator<Item = (Var, i64)>) -> Self {
        AffineForm {
            constant,
            coeffs: coeffs.into_iter().collect(),
        }
    }

    /// Reads a degree ≤ 1 polynomial with integer coefficients. Every variable
    /// in `vars` gets an entry, zero when absent from `p`.
    pub fn from_polynomial(p: &Polynomial, vars: &[Var]) -> Result<Self, String> {
        if p.total_degree() > 1 {
            return Err(format!("{p} is not affine-linear"));
        }
        let mut coeffs: BTreeMap<Var, i64> = vars.iter().map(|v| (v.clone(), 0)).collect();
        let mut constant = 0;
        for (m, c) in p.terms() {
            if !c.is_integer() {
                return Err(format!("coefficient {c} of {p} is not an integer"));
            }
            let c: i64 = c
                .numer()
                .try_into()
                .map_err(|_| format!("coefficient {c} of {p} is too large"))?;
            match m.pairs() {
                [] => constant = c,
                [(v, 1)] => {
                    coeffs.insert(v.clone(), c);
                }
                _ => unreachable!("degree checked above"),
            }
        }
        Ok(AffineForm { constant, coeffs })
    }

    pub fn variables(&self) -> impl Iterator<Item = &Var> {
        self.coeffs.keys()
    }

    pub fn coeff(&self, v: &Var) -> i64 {
        self.coeffs.get(v).copied().unwrap_or(0)
    }

    pub fn at_all_ones(&self) -> i64 {
        self.constant + self.coeffs.values().sum::<i64>()
    }

    /// `L` at a point given in variable order; missing variables count as 0.
    pub fn eval(&self, point: &BTreeMap<Var, i64>) -> i64 {
        self.constant
            + self
                .coeffs
                .iter()
                .map(|(v, c)| c * point.get(v).copied().unwrap_or(0))
                .sum::<i64>()
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.coeffs.is_empty() {
            out.push(format!("size form {self} has no variables"));
        }
        for (v, c) in &self.coeffs {
            if *c < 1 {
                out.push(format!("size form {self}: coefficient of {v} is {c} < 1"));
            }
        }
        if self.at_all_ones() < 1 {
            out.push(format!(
                "size form {self}: value at all-ones is {} < 1",
                self.at_all_ones()
            ));
        }
        out
    }

    pub fn validated(self) -> Result<Self, AlgebraError> {
        match self.violations().into_iter().next() {
            None => Ok(self),
            Some(reason) => Err(AlgebraError::InvalidAffineForm {
                form: self.to_string(),
                reason,
            }),
        }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::from_int(self.constant);
        for (v, c) in &self.coeffs {
            p = &p + &Polynomial::term(rat(*c), Monomial::var(v.clone(), 1));
        }
        p
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, c) in &self.coeffs {
            let sign = if *c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}{v}")?;
            } else {
                write!(f, "{sign}{mag}*{v}")?;
            }
            first = false;
        }
        if self.constant != 0 || first {
            if self.constant < 0 || first {
                write!(f, "{}", self.constant)?;
            } else {
                write!(f, "+{}", self.constant)?;
            }
        }
        Ok(())
    }
}
