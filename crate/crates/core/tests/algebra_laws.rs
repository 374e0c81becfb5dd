//! Randomized laws for the exact algebra layer.

use std::collections::BTreeMap;

use lego_towers::algebra::{
    closed_sum, power_sum, rat, series_expand, t_var, AffineForm, Monomial, Polynomial, Rational,
    RationalFunction, Series, Var,
};
use lego_towers::parser::{parse_affine, parse_poly, ExprSource};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 128,
        rng_seed: RngSeed::Fixed(0x7e3b),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn z() -> Var {
    Var::new("z")
}

fn build(terms: &[(i64, u32, u32)], x: &Var, y: &Var) -> Polynomial {
    terms.iter().fold(Polynomial::zero(), |acc, &(c, ex, ey)| {
        let m = Monomial::from_pairs([(x.clone(), ex), (y.clone(), ey)]);
        &acc + &Polynomial::term(rat(c), m)
    })
}

fn poly_tz() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-4i64..=4, 0u32..=3, 0u32..=2), 1..5)
        .prop_map(|t| build(&t, &t_var(), &z()))
}

fn ratfunc_tz() -> impl Strategy<Value = RationalFunction> {
    (
        poly_tz(),
        poly_tz().prop_filter("nonzero", |p| !p.is_zero()),
    )
        .prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

/// Functions of `t` alone that are regular at `t = 0`.
fn ratfunc_t() -> impl Strategy<Value = RationalFunction> {
    let t_only = |v: Vec<(i64, u32)>| {
        let terms: Vec<(i64, u32, u32)> = v.into_iter().map(|(c, e)| (c, e, 0)).collect();
        build(&terms, &t_var(), &z())
    };
    (
        prop::collection::vec((-4i64..=4, 0u32..=4), 1..5).prop_map(t_only),
        prop::collection::vec((-4i64..=4, 1u32..=3), 0..4).prop_map(t_only),
        1i64..=3,
    )
        .prop_map(|(n, d, c)| RationalFunction::new(n, &d + &Polynomial::from_int(c)).unwrap())
}

fn add_series(a: &Series, b: &Series) -> Series {
    Series {
        constant: &a.constant + &b.constant,
        coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn field_laws(f in ratfunc_tz(), g in ratfunc_tz(), h in ratfunc_tz()) {
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f + &RationalFunction::zero(), f.clone());
        prop_assert_eq!(&f * &RationalFunction::one(), f.clone());
        if !f.is_zero() {
            prop_assert!((&f * &f.recip().unwrap()).is_one());
            prop_assert_eq!(g.checked_div(&f).unwrap(), &g * &f.recip().unwrap());
        }
    }

    #[test]
    fn normalization_is_idempotent(n in poly_tz(), d in poly_tz().prop_filter("nonzero", |p| !p.is_zero())) {
        let scaled = RationalFunction::new(n.scale(&rat(-6)), d.scale(&rat(-6))).unwrap();
        let f = RationalFunction::new(n, d).unwrap();
        prop_assert_eq!(&scaled, &f);
        let again = RationalFunction::new(f.num().clone(), f.den().clone()).unwrap();
        prop_assert_eq!(again.num(), f.num());
        prop_assert_eq!(again.den(), f.den());
        prop_assert_eq!(again.canonical_string(), f.canonical_string());
        prop_assert!(lego_towers::algebra::gcd(f.num(), f.den()).is_constant());
    }

    #[test]
    fn theta_product_rule(f in ratfunc_tz(), g in ratfunc_tz()) {
        for v in [z(), t_var()] {
            let lhs = (&f * &g).theta(&v);
            let rhs = &(&f.theta(&v) * &g) + &(&f * &g.theta(&v));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn series_is_linear(f in ratfunc_t(), g in ratfunc_t(), c in -3i64..=3) {
        let sum = series_expand(&(&f + &g.scale(&rat(c))), 12).unwrap();
        let g_scaled = series_expand(&g, 12).unwrap();
        let g_scaled = Series {
            constant: &g_scaled.constant * rat(c),
            coeffs: g_scaled.coeffs.iter().map(|x| x * rat(c)).collect(),
        };
        prop_assert_eq!(sum, add_series(&series_expand(&f, 12).unwrap(), &g_scaled));
    }

    #[test]
    fn closed_sum_matches_finite_sum(
        c0 in -3i64..=2,
        c in prop::collection::vec(1i64..=3, 1..=2),
        terms in prop::collection::vec((-3i64..=3, 0u32..=2, 0u32..=2), 1..4),
    ) {
        let avars = [Var::indexed("a", 1), Var::indexed("a", 2)];
        let zvars = [Var::indexed("z", 1), Var::indexed("z", 2)];
        let d = c.len();
        let total: i64 = c.iter().sum();
        let c0 = c0.max(1 - total);
        let form = AffineForm::new(c0, avars.iter().cloned().zip(c.iter().copied()).take(d));
        let p = if d == 1 {
            build(&terms.iter().map(|&(k, e, _)| (k, e, 0)).collect::<Vec<_>>(), &avars[0], &avars[1])
        } else {
            build(&terms, &avars[0], &avars[1])
        };
        let closed = closed_sum(&p, &form, &zvars[..d]).unwrap();
        let closed = closed.eval_at_one(&zvars[..d]).unwrap();
        let derived = series_expand(&closed, 12).unwrap();

        // direct sum over the finitely many points of size ≤ 12
        let mut direct = vec![Rational::from_integer(0.into()); 13];
        let mut stack = vec![Vec::<i64>::new()];
        while let Some(point) = stack.pop() {
            if point.len() == d {
                let size = c0 + point.iter().zip(&c).map(|(x, k)| x * k).sum::<i64>();
                if size <= 12 {
                    let at: BTreeMap<Var, Rational> =
                        avars.iter().cloned().zip(point.iter().map(|&x| rat(x))).collect();
                    direct[size as usize] += p.eval(&at).unwrap();
                }
                continue;
            }
            for x in 1..=12 {
                let mut next = point.clone();
                next.push(x);
                stack.push(next);
            }
        }
        prop_assert_eq!(&derived.constant, &direct[0]);
        prop_assert_eq!(derived.coeffs, direct[1..].to_vec());
    }

    #[test]
    fn theta_on_closed_sum_multiplies_summand(
        c0 in 0i64..=2,
        c in 1i64..=2,
        terms in prop::collection::vec((-3i64..=3, 0u32..=2), 1..4),
        l in 0u32..=2,
    ) {
        let a = Var::new("a");
        let zv = Var::new("z");
        let form = AffineForm::new(c0, [(a.clone(), c)]);
        let p = build(&terms.iter().map(|&(k, e)| (k, e, 0)).collect::<Vec<_>>(), &a, &zv);
        let mut lhs = closed_sum(&p, &form, std::slice::from_ref(&zv)).unwrap();
        for _ in 0..l {
            lhs = lhs.theta(&zv);
        }
        let weighted = &p * &Polynomial::var(a.clone()).pow(l);
        prop_assert_eq!(lhs, closed_sum(&weighted, &form, &[zv]).unwrap());
    }

    #[test]
    fn parser_round_trip(terms in prop::collection::vec((-9i64..=9, 0u32..=3, 0u32..=3), 0..6)) {
        let vars = [Var::new("a"), Var::new("b")];
        let p = build(&terms, &vars[0], &vars[1]);
        let text = p.to_string();
        prop_assert_eq!(parse_poly(&ExprSource::new(&text, &vars)).unwrap(), p);
    }

    #[test]
    fn parse_affine_accepts_exactly_valid_forms(c0 in -4i64..=4, c1 in -2i64..=3, c2 in -2i64..=3) {
        let vars = [Var::indexed("a", 1), Var::indexed("a", 2)];
        let text = format!("{c1}*a[1]+({c2})*a[2]+({c0})");
        let valid = c1 >= 1 && c2 >= 1 && c0 + c1 + c2 >= 1;
        prop_assert_eq!(parse_affine(&ExprSource::new(&text, &vars)).is_ok(), valid, "{}", text);
    }
}

#[test]
fn power_sums_count_powers() {
    let t = t_var();
    for k in 0..=5u32 {
        let s = series_expand(&power_sum(k, &t), 12).unwrap();
        let expected: Vec<Rational> = (1..=12i64).map(|n| rat(n.pow(k))).collect();
        assert_eq!(s.coeffs, expected, "k = {k}");
        // S_{k+1} = θ S_k
        assert_eq!(power_sum(k + 1, &t), power_sum(k, &t).theta(&t));
    }
}
