use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var};
use super::Rational;

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept in a map keyed by [`Monomial`] (graded lexicographic
/// order) and never hold a zero coefficient, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::term(c, Monomial::one())
    }

    pub fn from_int(c: i64) -> Self {
        Polynomial::constant(Rational::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Self {
        Polynomial::term(Rational::one(), Monomial::var(v, 1))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Least term in pure lexicographic order.
    pub fn lex_least_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().min_by(|a, b| a.0.cmp_lex(b.0))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    pub fn mentions(&self, v: &Var) -> bool {
        self.terms.keys().any(|m| m.mentions(v))
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(n, k)| (n.mul(m), k.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficients `[p_0, .., p_R]` of `self` as a polynomial in `v`, with
    /// `R = deg_v self`. The zero polynomial yields `[0]`.
    pub fn coeffs_in(&self, v: &Var) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    /// Inverse of [`Polynomial::coeffs_in`].
    pub fn from_coeffs_in(v: &Var, coeffs: &[Polynomial]) -> Polynomial {
        let mut p = Polynomial::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let shift = Monomial::var(v.clone(), e as u32);
            for (m, k) in &c.terms {
                p.add_term(m.mul(&shift), k.clone());
            }
        }
        p
    }

    pub fn derivative(&self, v: &Var) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(v);
            if e > 0 {
                let m2 = rest.mul(&Monomial::var(v.clone(), e - 1));
                p.add_term(m2, c * Rational::from_integer(e.into()));
            }
        }
        p
    }

    /// Replaces `v` by the rational value `x`.
    pub fn substitute(&self, v: &Var, x: &Rational) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(v);
            let factor = if e == 0 {
                Rational::one()
            } else {
                num_traits::pow(x.clone(), e as usize)
            };
            p.add_term(rest, c * factor);
        }
        p
    }

    /// Replaces `v` by the monomial `m`, i.e. `v^e ↦ m^e`.
    pub fn substitute_monomial(&self, v: &Var, m: &Monomial) -> Polynomial {
        let mut p = Polynomial::zero();
        for (n, c) in &self.terms {
            let (rest, e) = n.split_off(v);
            let mut img = rest;
            for _ in 0..e {
                img = img.mul(m);
            }
            p.add_term(img, c.clone());
        }
        p
    }

    /// Evaluates at a full assignment. Returns `None` if a variable is unassigned.
    pub fn eval(&self, point: &BTreeMap<Var, Rational>) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.pairs() {
                term *= num_traits::pow(point.get(v)?.clone(), *e as usize);
            }
            acc += term;
        }
        Some(acc)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        if d.is_zero() {
            return None;
        }
        if d.is_one() {
            return Some(self.clone());
        }
        let (lm, lc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        if d.is_monomial() {
            let inv = lc.recip();
            let mut q = BTreeMap::new();
            for (m, c) in &self.terms {
                q.insert(m.div(&lm)?, c * &inv);
            }
            return Some(Polynomial { terms: q });
        }
        let mut rem = self.clone();
        let mut q = Polynomial::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(&lm)?;
            let qc = rc / &lc;
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Splits off the rational content: returns `(c, q)` with `self = c * q`,
    /// `q` having coprime integer coefficients and a positive leading
    /// coefficient. The zero polynomial gives `(0, 0)`.
    pub fn integer_primitive(&self) -> (Rational, Polynomial) {
        if self.is_zero() {
            return (Rational::zero(), Polynomial::zero());
        }
        let c = rational_content(self.terms.values());
        let c = if self.leading_term().unwrap().1.is_negative() {
            -c
        } else {
            c
        };
        let q = self.scale(&c.recip());
        (c, q)
    }
}

/// Positive rational `g` such that every coefficient divided by `g` is an
/// integer and those integers are jointly coprime.
pub(crate) fn rational_content<'a>(coeffs: impl Iterator<Item = &'a Rational>) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in coeffs {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        return Rational::one();
    }
    Rational::new(num, den)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), -c);
        }
        p
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut p = Polynomial::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                p.add_term(m.mul(n), c * d);
            }
        }
        p
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

/// Ascending graded-lex order, explicit `*` and `^`, no spaces:
/// `1-5*t+7*t^2-4*t^3`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            if m.is_one() {
                write_coeff(f, &mag)?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write_coeff(f, &mag)?;
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
