//! Shared fixtures for the integration tests and the acceptance harness.
#![allow(dead_code)]

use lego_towers::algebra::{
    rat, series_expand, t_var, Polynomial, Rational, RationalFunction, Series,
};
use lego_towers::cli::SpecFile;
use lego_towers::engine::ProblemSpec;
use lego_towers::parser::{parse_poly, ExprSource};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn spec(
    kind: &str,
    dims: Option<&[usize]>,
    sizes: &[&str],
    kernels: &[&[&str]],
) -> ProblemSpec {
    SpecFile {
        kind: kind.to_string(),
        dims: dims.map(<[usize]>::to_vec),
        sizes: sizes.iter().map(|s| s.to_string()).collect(),
        kernels: kernels
            .iter()
            .map(|row| row.iter().map(|s| s.to_string()).collect())
            .collect(),
    }
    .to_problem()
    .unwrap_or_else(|e| panic!("fixture does not parse: {e}"))
}

pub fn scalar(size: &str, kernel: &str) -> ProblemSpec {
    spec("scalar", None, &[size], &[&[kernel]])
}

/// `num/den`, both written as polynomials in `t`.
pub fn t_fraction(num: &str, den: &str) -> RationalFunction {
    let vars = [t_var()];
    let p = |s: &str| parse_poly(&ExprSource::new(s, &vars)).expect("polynomial in t");
    RationalFunction::new(p(num), p(den)).expect("nonzero denominator")
}

pub fn temperley() -> ProblemSpec {
    scalar("a", "a+b-1")
}

pub fn locally_stable() -> ProblemSpec {
    spec(
        "colored",
        None,
        &["2*a", "2*a-1"],
        &[&["2*a-1", "2*a"], &["2*a-2", "2*a-1"]],
    )
}

pub fn multidim_call() -> ProblemSpec {
    spec(
        "multidim",
        Some(&[2]),
        &["2*a[1]+2*a[2]"],
        &[&["(a[1]+b[1]-1)*(a[2]+b[2]-1)"]],
    )
}

pub fn colored_multidim_calls() -> Vec<ProblemSpec> {
    let box_kernel = "(a[1]+b[1]-1)*(a[2]+b[2]-1)";
    vec![
        spec(
            "colored_multidim",
            Some(&[2, 2]),
            &["a[1]+a[2]", "2*a[1]+2*a[2]"],
            &[&[box_kernel, box_kernel], &[box_kernel, box_kernel]],
        ),
        spec(
            "colored_multidim",
            Some(&[1, 2]),
            &["a[1]+1", "a[1]+a[2]"],
            &[
                &["a[1]+b[1]-1", "(a[1]+b[1]-1)*b[2]"],
                &["a[2]*(a[1]+b[1]-1)", "(a[2]+b[2]-1)*(a[1]+b[1]-1)"],
            ],
        ),
    ]
}

pub fn expand(f: &RationalFunction, n: usize) -> Series {
    series_expand(f, n).expect("f(0) is finite")
}

pub fn ints(s: &Series) -> Vec<i64> {
    s.coeffs
        .iter()
        .map(|c| {
            assert!(c.is_integer(), "non-integer coefficient {c}");
            c.numer().try_into().expect("fits in i64")
        })
        .collect()
}

/// F_{2n-1} for n = 1..=count, by the plain Fibonacci recurrence.
pub fn odd_fibonacci(count: usize) -> Vec<i64> {
    let mut fib = vec![0i64, 1];
    while fib.len() < 2 * count + 1 {
        let k = fib.len();
        fib.push(fib[k - 1] + fib[k - 2]);
    }
    (1..=count).map(|n| fib[2 * n - 1]).collect()
}

/// A valid spec with at most two colors, dimensions at most two, kernel
/// degree at most two per variable and kernel coefficients in -3..=3.
pub fn random_spec(rng: &mut ChaCha8Rng) -> ProblemSpec {
    let colors = rng.gen_range(1..=2usize);
    let multidim = rng.gen_bool(0.5);
    let dims: Vec<usize> = (0..colors)
        .map(|_| if multidim { rng.gen_range(1..=2) } else { 1 })
        .collect();
    let kind = match (colors, multidim) {
        (1, false) => "scalar",
        (_, false) => "colored",
        (1, true) => "multidim",
        (_, true) => "colored_multidim",
    };
    let name = |base: &str, k: usize| {
        if multidim {
            format!("{base}[{}]", k + 1)
        } else {
            base.to_string()
        }
    };

    let sizes: Vec<String> = dims
        .iter()
        .map(|&d| {
            let coeffs: Vec<i64> = (0..d).map(|_| rng.gen_range(1..=2)).collect();
            let total: i64 = coeffs.iter().sum();
            let constant = rng.gen_range(1 - total..=1);
            let mut text: Vec<String> = coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| format!("{c}*{}", name("a", k)))
                .collect();
            text.push(constant.to_string());
            text.join("+")
        })
        .collect();

    let mut kernels = Vec::new();
    for i in 0..colors {
        let mut row = Vec::new();
        for j in 0..colors {
            let mut vars: Vec<String> = (0..dims[i]).map(|k| name("a", k)).collect();
            vars.extend((0..dims[j]).map(|k| name("b", k)));
            let terms = rng.gen_range(1..=3);
            let mut text = Vec::new();
            for _ in 0..terms {
                let mut factors = vec![rng.gen_range(-3..=3i64).to_string()];
                for _ in 0..rng.gen_range(0..=2) {
                    factors.push(vars[rng.gen_range(0..vars.len())].clone());
                }
                text.push(format!("({})", factors.join("*")));
            }
            row.push(text.join("+"));
        }
        kernels.push(row);
    }

    let file = SpecFile {
        kind: kind.to_string(),
        dims: Some(dims),
        sizes,
        kernels,
    };
    file.to_problem()
        .unwrap_or_else(|e| panic!("generated spec {file:?} does not parse: {e}"))
}

/// Small random polynomial in the given variables.
pub fn random_poly(
    rng: &mut ChaCha8Rng,
    vars: &[lego_towers::algebra::Var],
    max_deg: u32,
) -> Polynomial {
    let mut p = Polynomial::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let mut term = Polynomial::from_int(rng.gen_range(-4..=4));
        for v in vars {
            term = &term * &Polynomial::var(v.clone()).pow(rng.gen_range(0..=max_deg));
        }
        p = &p + &term;
    }
    p
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-5..=5)) / rat(rng.gen_range(1..=4))
}
