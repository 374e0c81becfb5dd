use std::fmt;

use num_traits::Zero;

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use super::{t_var, AlgebraError, Rational};

/// Coefficients of `t^1 .. t^N`, plus the `t^0` coefficient kept apart.
///
/// Every tower has at least one cell, so `constant` is zero for all
/// generating functions produced here; it is carried so callers can check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    pub constant: Rational,
    pub coeffs: Vec<Rational>,
}

impl Series {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Series {
            constant: Rational::zero(),
            coeffs,
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `t^n` for `1 ≤ n ≤ order`.
    pub fn get(&self, n: usize) -> Option<&Rational> {
        n.checked_sub(1).and_then(|i| self.coeffs.get(i))
    }

    /// Drops everything above `t^n`.
    pub fn truncate(&self, n: usize) -> Series {
        Series {
            constant: self.constant.clone(),
            coeffs: self.coeffs.iter().take(n).cloned().collect(),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(", "))
    }
}

fn dense_in_t(p: &Polynomial) -> Result<Vec<Rational>, AlgebraError> {
    let t = t_var();
    let mut out = vec![Rational::zero(); p.degree_in(&t) as usize + 1];
    for (m, c) in p.terms() {
        let (rest, e) = m.split_off(&t);
        if rest != Monomial::one() {
            return Err(AlgebraError::ForeignVariable(rest.to_string()));
        }
        out[e as usize] = c.clone();
    }
    Ok(out)
}

/// Power-series coefficients of a function of `t` up to `t^n`, using the
/// recurrence `d_0·c_n = n_n − Σ_{k≥1} d_k·c_{n−k}` from the denominator.
pub fn series_expand(f: &RationalFunction, n: usize) -> Result<Series, AlgebraError> {
    let num = dense_in_t(f.num())?;
    let den = dense_in_t(f.den())?;
    let d0 = den[0].clone();
    if d0.is_zero() {
        return Err(AlgebraError::NoExpansionAtZero);
    }
    let mut c: Vec<Rational> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = num.get(k).cloned().unwrap_or_else(Rational::zero);
        for (j, dj) in den.iter().enumerate().skip(1).take(k) {
            if !dj.is_zero() {
                acc -= dj * &c[k - j];
            }
        }
        c.push(acc / &d0);
    }
    let constant = c.remove(0);
    Ok(Series {
        constant,
        coeffs: c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn tp(coeffs: &[i64]) -> Polynomial {
        let t = t_var();
        Polynomial::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(e, c)| (Monomial::var(t.clone(), e as u32), rat(*c))),
        )
    }

    fn ints(s: &Series) -> Vec<i64> {
        s.coeffs
            .iter()
            .map(|c| c.numer().try_into().unwrap())
            .collect()
    }

    #[test]
    fn leftist_fibonacci() {
        let f = RationalFunction::new(tp(&[0, 1, -1]), tp(&[1, -3, 1])).unwrap();
        assert_eq!(ints(&series_expand(&f, 6).unwrap()), [1, 2, 5, 13, 34, 89]);
    }

    #[test]
    fn temperley_function() {
        // t(1-t)^3/(1-5t+7t^2-4t^3)
        let f = RationalFunction::new(tp(&[0, 1, -3, 3, -1]), tp(&[1, -5, 7, -4])).unwrap();
        let s = series_expand(&f, 5).unwrap();
        assert_eq!(ints(&s), [1, 2, 6, 19, 61]);
        assert!(s.constant.is_zero());
    }

    #[test]
    fn geometric() {
        let f = RationalFunction::new(tp(&[0, 1]), tp(&[1, -1])).unwrap();
        assert_eq!(ints(&series_expand(&f, 4).unwrap()), [1, 1, 1, 1]);
    }

    #[test]
    fn constant_term_reported() {
        let f = RationalFunction::new(tp(&[3]), tp(&[1, -1])).unwrap();
        let s = series_expand(&f, 2).unwrap();
        assert_eq!(s.constant, rat(3));
    }

    #[test]
    fn pole_at_origin() {
        let f = RationalFunction::new(tp(&[1]), tp(&[0, 1])).unwrap();
        assert_eq!(series_expand(&f, 3), Err(AlgebraError::NoExpansionAtZero));
    }
}
