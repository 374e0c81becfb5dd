//! Exact linear solve over Q(t).
//!
//! Each row is cleared to a common polynomial denominator, the resulting
//! polynomial system is reduced by fraction-free (Bareiss) elimination, and
//! back substitution stays fraction-free by solving for `D·x` where `D` is
//! the last pivot. Only the final quotients are reduced.

use crate::algebra::{gcd, Polynomial, RationalFunction};

pub struct Solution {
    pub values: Vec<RationalFunction>,
    /// `values[k] = numerators[k] / denominator` before normalization.
    pub numerators: Vec<Polynomial>,
    pub denominator: Polynomial,
    pub determinant: RationalFunction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    Singular,
    /// The computed solution does not satisfy the cleared system.
    Residual(usize),
}

fn lcm(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let g = gcd(a, b);
    &a.div_exact(&g).expect("gcd divides") * b
}

/// Solves `matrix · x = rhs` and checks the answer exactly.
pub fn solve(
    matrix: &[Vec<RationalFunction>],
    rhs: &[RationalFunction],
) -> Result<Solution, SolveError> {
    let n = matrix.len();
    assert!(matrix.iter().all(|row| row.len() == n) && rhs.len() == n);

    let mut scale = Vec::with_capacity(n);
    let mut cleared: Vec<Vec<Polynomial>> = Vec::with_capacity(n);
    for (row, b) in matrix.iter().zip(rhs) {
        let common = row
            .iter()
            .chain(std::iter::once(b))
            .fold(Polynomial::one(), |acc, f| lcm(&acc, f.den()));
        cleared.push(
            row.iter()
                .chain(std::iter::once(b))
                .map(|f| &common.div_exact(f.den()).expect("lcm is a multiple") * f.num())
                .collect(),
        );
        scale.push(common);
    }

    let mut aug = cleared.clone();
    let mut negate = false;
    let mut prev = Polynomial::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&r| !aug[r][k].is_zero())
            .min_by_key(|&r| (aug[r][k].total_degree(), aug[r][k].len()))
            .ok_or(SolveError::Singular)?;
        if pivot != k {
            aug.swap(pivot, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = &(&aug[k][k] * &aug[i][j]) - &(&aug[i][k] * &aug[k][j]);
                aug[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            aug[i][k] = Polynomial::zero();
        }
        prev = aug[k][k].clone();
    }

    // fraction-free back substitution: y = D·x with D the last pivot
    let last = prev;
    let mut ys = vec![Polynomial::zero(); n];
    for i in (0..n).rev() {
        let mut acc = &last * &aug[i][n];
        for j in i + 1..n {
            if !aug[i][j].is_zero() {
                acc = &acc - &(&aug[i][j] * &ys[j]);
            }
        }
        ys[i] = acc
            .div_exact(&aug[i][i])
            .expect("Cramer numerators are polynomial");
    }

    for (i, row) in cleared.iter().enumerate() {
        let lhs = row[..n]
            .iter()
            .zip(&ys)
            .fold(Polynomial::zero(), |acc, (c, y)| &acc + &(c * y));
        if lhs != &last * &row[n] {
            return Err(SolveError::Residual(i));
        }
    }

    let scale_product = scale.iter().fold(Polynomial::one(), |acc, s| &acc * s);
    let det_num = if negate { -&last } else { last.clone() };
    let determinant =
        RationalFunction::new(det_num, scale_product).expect("row scales are nonzero");
    let values = ys
        .iter()
        .map(|y| RationalFunction::new(y.clone(), last.clone()).expect("pivot is nonzero"))
        .collect();
    Ok(Solution {
        values,
        numerators: ys,
        denominator: last,
        determinant,
    })
}
