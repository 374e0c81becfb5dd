use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::gcd::gcd;
use super::monomial::{Monomial, Var};
use super::poly::{rational_content, Polynomial};
use super::{AlgebraError, Rational};

/// A quotient of polynomials in canonical form.
///
/// Invariants: the denominator is nonzero; numerator and denominator are
/// coprime; all coefficients are integers with joint content 1; the
/// denominator's constant term is positive, or when it has none, its
/// lexicographically least term is positive. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(Polynomial::from_int(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self::normalize(p, Polynomial::one())
    }

    /// `m^e` for a possibly negative exponent.
    pub fn var_pow(v: &Var, e: i64) -> Self {
        let m = Polynomial::term(
            Rational::from_integer(1.into()),
            Monomial::var(v.clone(), e.unsigned_abs() as u32),
        );
        if e >= 0 {
            Self::from_poly(m)
        } else {
            Self::normalize(Polynomial::one(), m)
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn normalize(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let content = rational_content(num.terms().chain(den.terms()).map(|(_, c)| c));
        let pivot = {
            let c0 = den.constant_term();
            if c0.is_zero() {
                den.lex_least_term().expect("nonzero denominator").1.clone()
            } else {
                c0
            }
        };
        let s = if pivot.is_negative() {
            -content.recip()
        } else {
            content.recip()
        };
        RationalFunction {
            num: num.scale(&s),
            den: den.scale(&s),
        }
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::normalize(self.num.pow(e), self.den.pow(e))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalize(self.num.scale(c), self.den.clone())
    }

    /// `v · ∂f/∂v`.
    pub fn theta(&self, v: &Var) -> Self {
        if !self.num.mentions(v) && !self.den.mentions(v) {
            return Self::zero();
        }
        let vp = Polynomial::var(v.clone());
        if !self.den.mentions(v) {
            return Self::normalize(&vp * &self.num.derivative(v), self.den.clone());
        }
        // n/d with d = g·e, g = gcd(d, d'): θ(n/d) = v(n'·e - n·(d'/g)) / (d·e)
        let dd = self.den.derivative(v);
        let g = gcd(&self.den, &dd);
        let e = self.den.div_exact(&g).expect("gcd divides");
        let dd_g = dd.div_exact(&g).expect("gcd divides");
        let num = &vp * &(&(&self.num.derivative(v) * &e) - &(&self.num * &dd_g));
        Self::normalize(num, &self.den * &e)
    }

    /// Substitutes a rational value for `v`.
    pub fn substitute(&self, v: &Var, x: &Rational) -> Result<Self, AlgebraError> {
        let den = self.den.substitute(v, x);
        if den.is_zero() {
            return Err(AlgebraError::VanishingDenominator(v.to_string()));
        }
        Ok(Self::normalize(self.num.substitute(v, x), den))
    }

    /// Substitutes a monomial for `v` (e.g. `w ↦ t^c·z`).
    pub fn substitute_monomial(&self, v: &Var, m: &Monomial) -> Self {
        Self::normalize(
            self.num.substitute_monomial(v, m),
            self.den.substitute_monomial(v, m),
        )
    }

    /// Sets every listed variable to 1.
    pub fn eval_at_one(&self, vars: &[Var]) -> Result<Self, AlgebraError> {
        let one = Rational::from_integer(1.into());
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        for v in vars {
            num = num.substitute(v, &one);
            den = den.substitute(v, &one);
        }
        if den.is_zero() {
            let names: Vec<_> = vars.iter().map(Var::to_string).collect();
            return Err(AlgebraError::VanishingDenominator(names.join(",")));
        }
        Ok(Self::normalize(num, den))
    }

    /// Value when the function is a constant, i.e. has no variables left.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_constant())
            .then(|| self.num.constant_term() / self.den.constant_term())
    }

    /// `(num)/(den)` with both sides in ascending graded-lex order.
    pub fn canonical_string(&self) -> String {
        format!("({})/({})", self.num, self.den)
    }

    pub fn to_latex(&self) -> String {
        if self.den.is_one() {
            latex_poly(&self.num)
        } else {
            format!(
                "\\frac{{{}}}{{{}}}",
                latex_poly(&self.num),
                latex_poly(&self.den)
            )
        }
    }
}

fn latex_poly(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let mag = c.abs();
        if c.is_negative() {
            out.push_str(if k == 0 { "-" } else { " - " });
        } else if k > 0 {
            out.push_str(" + ");
        }
        let coeff = if mag.is_integer() {
            mag.numer().to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
        };
        if m.is_one() {
            out.push_str(&coeff);
            continue;
        }
        if coeff != "1" {
            out.push_str(&coeff);
            out.push(' ');
        }
        let factors: Vec<String> = m
            .pairs()
            .iter()
            .map(|(v, e)| {
                let name = latex_var(v);
                if *e == 1 {
                    name
                } else {
                    format!("{name}^{{{e}}}")
                }
            })
            .collect();
        out.push_str(&factors.join(" "));
    }
    out
}

fn latex_var(v: &Var) -> String {
    let s = v.name();
    match s.find('[') {
        Some(i) => format!("{}_{{{}}}", &s[..i], &s[i + 1..s.len() - 1]),
        None => s.to_string(),
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::normalize(&self.num + &rhs.num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let bl = self.den.div_exact(&g).expect("gcd divides");
        let dl = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &dl) + &(&rhs.num * &bl);
        RationalFunction::normalize(num, &self.den * &dl)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RationalFunction::normalize(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self.canonical_string())
    }
}
