//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive content / primitive-part scheme: pick a main variable, view both
//! inputs as univariate polynomials over the ring of the remaining
//! variables, take the gcd of the contents recursively, and run a primitive
//! pseudo-remainder sequence on the primitive parts. Multivariate inputs
//! first try a heuristic evaluation gcd, which is verified by division and
//! falls back to the sequence when it cannot certify a result.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var};
use super::poly::Polynomial;
use super::Rational;

/// `gcd(a, b)` with coprime integer coefficients and a positive leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.integer_primitive().1;
    }
    if b.is_zero() {
        return a.integer_primitive().1;
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }

    let (ma, a) = split_monomial_content(a);
    let (mb, b) = split_monomial_content(b);
    let m = ma.gcd(&mb);
    let g = gcd_no_monomial_content(&a, &b);
    g.mul_monomial(&m)
}

fn split_monomial_content(p: &Polynomial) -> (Monomial, Polynomial) {
    let mut it = p.terms().map(|(m, _)| m);
    let first = it.next().cloned().unwrap_or_default();
    let m = it.fold(first, |acc, n| acc.gcd(n));
    if m.is_one() {
        (m, p.clone())
    } else {
        let q = p.div_exact(&Polynomial::term(
            Rational::from_integer(1.into()),
            m.clone(),
        ));
        (m, q.expect("monomial content divides"))
    }
}

fn gcd_no_monomial_content(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    let (a, b) = (a.integer_primitive().1, b.integer_primitive().1);
    if a == b {
        return a;
    }
    let (small, large) = if a.len() <= b.len() {
        (&a, &b)
    } else {
        (&b, &a)
    };
    if large.div_exact(small).is_some() {
        return small.clone();
    }

    let va = a.variables();
    let vb = b.variables();
    if va.is_disjoint(&vb) {
        return Polynomial::one();
    }
    if va.len() == 1 && va == vb {
        return univariate(&a, &b, va.first().expect("one variable"));
    }
    let x = va.union(&vb).next().cloned().expect("nonconstant input");
    if a.mentions(&x) && b.mentions(&x) {
        if let Some(g) = heuristic(&a, &b, &x) {
            return g;
        }
    }
    prs(&a, &b, &x)
}

/// Content and primitive pseudo-remainder sequence in the main variable `x`.
fn prs(a: &Polynomial, b: &Polynomial, x: &Var) -> Polynomial {
    if !a.mentions(x) {
        return gcd(a, &content_in(b, x));
    }
    if !b.mentions(x) {
        return gcd(&content_in(a, x), b);
    }

    let fa = a.coeffs_in(x);
    let fb = b.coeffs_in(x);
    let ca = fold_gcd(&fa);
    let cb = fold_gcd(&fb);
    let c = gcd(&ca, &cb);
    let pa = primitive(divide_all(fa, &ca));
    let pb = primitive(divide_all(fb, &cb));

    let (mut f, mut g) = if pa.len() >= pb.len() {
        (pa, pb)
    } else {
        (pb, pa)
    };
    while !g.is_empty() {
        let r = pseudo_remainder(&f, &g);
        f = g;
        g = if r.is_empty() { r } else { primitive(r) };
    }
    let g = Polynomial::from_coeffs_in(x, &f);
    (&g * &c).integer_primitive().1
}

fn dense(p: &Polynomial, x: &Var) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.degree_in(x) as usize + 1];
    for (m, c) in p.terms() {
        debug_assert!(c.is_integer());
        out[m.degree_in(x) as usize] = c.numer().clone();
    }
    out
}

fn make_primitive(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let g = if v.last().is_some_and(|c| c.is_negative()) {
        -g
    } else {
        g
    };
    if !g.is_one() && !g.is_zero() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
}

/// Primitive PRS over the integers for two integer-primitive polynomials in `x`.
fn univariate(a: &Polynomial, b: &Polynomial, x: &Var) -> Polynomial {
    let (mut f, mut g) = (dense(a, x), dense(b, x));
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let dg = g.len() - 1;
        let lc = g[dg].clone();
        while f.len() > dg {
            let df = f.len() - 1;
            let lf = f[df].clone();
            for c in f.iter_mut() {
                *c *= &lc;
            }
            for (i, gi) in g.iter().enumerate() {
                f[i + df - dg] -= &lf * gi;
            }
            make_primitive(&mut f);
        }
        std::mem::swap(&mut f, &mut g);
    }
    make_primitive(&mut f);
    Polynomial::from_terms(f.into_iter().enumerate().map(|(e, c)| {
        (
            Monomial::var(x.clone(), e as u32),
            Rational::from_integer(c),
        )
    }))
}

fn max_norm(p: &Polynomial) -> BigInt {
    p.terms()
        .map(|(_, c)| c.numer().abs())
        .max()
        .unwrap_or_default()
}

/// Gcd over the integers, keeping the integer content.
fn integer_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (ca, pa) = a.integer_primitive();
    let (cb, pb) = b.integer_primitive();
    let c = ca.numer().abs().gcd(&cb.numer().abs());
    gcd(&pa, &pb).scale(&Rational::from_integer(c))
}

/// Heuristic gcd: evaluate `x` at a large integer, take the gcd of the
/// images, and lift it back by a symmetric `ξ`-adic expansion. The lifted
/// candidate is accepted only if it divides both inputs, so a wrong guess
/// costs time but never correctness: with `ξ > 2·min(‖a‖, ‖b‖) + 2` a
/// candidate dividing both inputs is the gcd. Inputs are integer-primitive.
fn heuristic(a: &Polynomial, b: &Polynomial, x: &Var) -> Option<Polynomial> {
    let bound = max_norm(a).min(max_norm(b));
    let mut xi: BigInt = bound * 2 + 29;
    for _ in 0..6 {
        let at = Rational::from_integer(xi.clone());
        let mut h = integer_gcd(&a.substitute(x, &at), &b.substitute(x, &at));
        let mut lifted = Vec::new();
        while !h.is_zero() {
            let digit = Polynomial::from_terms(h.terms().map(|(m, c)| {
                let mut r = c.numer().mod_floor(&xi);
                if &r * 2 > xi {
                    r -= &xi;
                }
                (m.clone(), Rational::from_integer(r))
            }));
            h = (&h - &digit).scale(&Rational::new(1.into(), xi.clone()));
            lifted.push(digit);
        }
        let g = Polynomial::from_coeffs_in(x, &lifted).integer_primitive().1;
        if a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
            return Some(g);
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x`.
pub fn content_in(p: &Polynomial, x: &Var) -> Polynomial {
    fold_gcd(&p.coeffs_in(x))
}

fn fold_gcd(coeffs: &[Polynomial]) -> Polynomial {
    let mut acc = Polynomial::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        acc = gcd(&acc, c);
        if acc.is_constant() {
            return Polynomial::one();
        }
    }
    acc
}

fn divide_all(coeffs: Vec<Polynomial>, d: &Polynomial) -> Vec<Polynomial> {
    if d.is_one() {
        return coeffs;
    }
    coeffs
        .iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

/// Primitive part of a univariate polynomial over Q[rest], with integer
/// coefficients of content 1 and positive leading coefficient.
fn primitive(coeffs: Vec<Polynomial>) -> Vec<Polynomial> {
    let c = fold_gcd(&coeffs);
    let coeffs = divide_all(coeffs, &c);
    let content =
        super::poly::rational_content(coeffs.iter().flat_map(|p| p.terms().map(|(_, c)| c)));
    let lead_neg = coeffs
        .last()
        .and_then(|p| p.leading_term())
        .is_some_and(|(_, c)| c < &Rational::from_integer(0.into()));
    let s = if lead_neg {
        -content.recip()
    } else {
        content.recip()
    };
    coeffs.iter().map(|p| p.scale(&s)).collect()
}

/// `lc(g)^k · f mod g` over Q[rest][x]; trailing zero coefficients removed.
fn pseudo_remainder(f: &[Polynomial], g: &[Polynomial]) -> Vec<Polynomial> {
    let dg = g.len() - 1;
    let lc = &g[dg];
    let mut r: Vec<Polynomial> = f.to_vec();
    trim(&mut r);
    while r.len() > dg {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * lc;
        }
        for (i, gi) in g.iter().enumerate() {
            let idx = i + dr - dg;
            r[idx] = &r[idx] - &(&lr * gi);
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
    }
    r
}

fn trim(v: &mut Vec<Polynomial>) {
    while v.last().is_some_and(Polynomial::is_zero) {
        v.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Polynomial {
        Polynomial::var(Var::new(s))
    }
    fn k(c: i64) -> Polynomial {
        Polynomial::from_int(c)
    }

    #[test]
    fn univariate_gcd() {
        let t = v("t");
        let f = &(&t - &k(1)) * &(&t + &k(2));
        let g = &(&t - &k(1)) * &(&t - &k(3));
        assert_eq!(gcd(&f, &g), &t - &k(1));
        assert_eq!(gcd(&f, &(&t + &k(5))), k(1));
    }

    #[test]
    fn multivariate_gcd() {
        let (t, z, w) = (v("t"), v("z"), v("w"));
        let common = &(&k(1) - &(&t * &z)).pow(2) * &(&w + &t);
        let f = &common * &(&z + &k(3));
        let g = &common * &(&(&t * &w) - &k(2));
        let h = gcd(&f, &g);
        assert_eq!(h, common.integer_primitive().1);
    }

    #[test]
    fn monomial_content_is_kept() {
        let (t, z) = (v("t"), v("z"));
        let f = &t.pow(3) * &(&z + &k(1));
        let g = &t.pow(2) * &(&z + &k(1)).pow(2);
        assert_eq!(gcd(&f, &g), &t.pow(2) * &(&z + &k(1)));
    }

    #[test]
    fn heuristic_agrees_with_prs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let vars = [Var::new("t"), Var::new("z")];
        let mut random = |deg: u32| {
            (0..rng.gen_range(1..=4)).fold(Polynomial::zero(), |acc, _| {
                let m =
                    Monomial::from_pairs(vars.iter().map(|v| (v.clone(), rng.gen_range(0..=deg))));
                &acc + &Polynomial::term(Rational::from_integer(rng.gen_range(-4..=4).into()), m)
            })
        };
        for _ in 0..300 {
            let c = random(2);
            let (f, g) = (&random(3) * &c, &random(3) * &c);
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let (f, g) = (f.integer_primitive().1, g.integer_primitive().1);
            let expected = prs(&f, &g, &vars[0]);
            assert_eq!(gcd(&f, &g), expected, "gcd({f}, {g})");
        }
    }

    #[test]
    fn rational_coefficients() {
        let t = v("t");
        let half = Rational::new(1.into(), 2.into());
        let f = &t.scale(&half) - &k(1);
        let g = &f * &t;
        assert_eq!(gcd(&f, &g), &t - &k(2));
    }
}
