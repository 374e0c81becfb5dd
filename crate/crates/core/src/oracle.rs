//! Brute-force enumerators used to check derived generating functions.
//!
//! Nothing here touches rational functions: compositions are listed one by
//! one and their weights summed, and geometric towers are built floor by
//! floor with explicit integer offsets.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{rat, Rational, Series, Var};
use crate::engine::{validate, EngineError, ProblemSpec};

/// One floor: a color and its side lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub color: usize,
    pub lengths: Vec<i64>,
}

/// A nonempty sequence of floors, bottom first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    pub parts: Vec<Part>,
}

struct Piece {
    part: Part,
    size: usize,
}

fn pieces_up_to(spec: &ProblemSpec, n: usize) -> Vec<Piece> {
    // coefficients are ≥ 1, so the size grows in every length
    fn fill(
        color: usize,
        avars: &[Var],
        form: &crate::algebra::AffineForm,
        lengths: &mut Vec<i64>,
        n: usize,
        out: &mut Vec<Piece>,
    ) {
        let k = lengths.len();
        let size_with = |lengths: &[i64]| {
            let point: BTreeMap<Var, i64> = avars
                .iter()
                .cloned()
                .zip(lengths.iter().copied().chain(std::iter::repeat(1)))
                .collect();
            form.eval(&point)
        };
        if k == avars.len() {
            let size = size_with(lengths);
            if size >= 1 && size as usize <= n {
                out.push(Piece {
                    part: Part {
                        color,
                        lengths: lengths.clone(),
                    },
                    size: size as usize,
                });
            }
            return;
        }
        for x in 1.. {
            lengths.push(x);
            let fits = size_with(lengths) <= n as i64;
            if fits {
                fill(color, avars, form, lengths, n, out);
            }
            lengths.pop();
            if !fits {
                break;
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..spec.colors() {
        fill(
            i,
            &spec.a_vars(i),
            &spec.forms[i],
            &mut Vec::new(),
            n,
            &mut out,
        );
    }
    out
}

fn kernel_value(spec: &ProblemSpec, below: &Part, above: &Part) -> Rational {
    let mut point = BTreeMap::new();
    for (v, x) in spec.a_vars(below.color).into_iter().zip(&below.lengths) {
        point.insert(v, rat(*x));
    }
    for (v, x) in spec.b_vars(above.color).into_iter().zip(&above.lengths) {
        point.insert(v, rat(*x));
    }
    spec.kernels[below.color][above.color]
        .eval(&point)
        .expect("validated kernels only mention floor lengths")
}

/// Coefficients of `t^1..t^n` of `Σ_C wt(C)`, by depth-first enumeration of
/// every composition whose total size is at most `n`.
pub fn enum_compositions_weighted(spec: &ProblemSpec, n: usize) -> Result<Series, EngineError> {
    let problems = validate(spec);
    if !problems.is_empty() {
        return Err(EngineError::Invalid(problems));
    }
    let pieces = pieces_up_to(spec, n);
    let table: Vec<Vec<Rational>> = pieces
        .iter()
        .map(|x| {
            pieces
                .iter()
                .map(|y| kernel_value(spec, &x.part, &y.part))
                .collect()
        })
        .collect();

    let mut coeffs = vec![Rational::zero(); n + 1];
    fn extend(
        last: usize,
        size: usize,
        weight: &Rational,
        pieces: &[Piece],
        table: &[Vec<Rational>],
        coeffs: &mut [Rational],
    ) {
        coeffs[size] += weight;
        for (next, piece) in pieces.iter().enumerate() {
            let grown = size + piece.size;
            if grown >= coeffs.len() {
                continue;
            }
            let link = &table[last][next];
            if link.is_zero() {
                continue;
            }
            extend(next, grown, &(weight * link), pieces, table, coeffs);
        }
    }
    let one = rat(1);
    for (first, piece) in pieces.iter().enumerate() {
        extend(first, piece.size, &one, &pieces, &table, &mut coeffs);
    }
    coeffs.remove(0);
    Ok(Series::new(coeffs))
}

/// Every composition of total size at most `n`, with its size and weight.
/// Meant for small `n`; the count grows exponentially.
pub fn list_compositions(
    spec: &ProblemSpec,
    n: usize,
) -> Result<Vec<(Composition, usize, Rational)>, EngineError> {
    let problems = validate(spec);
    if !problems.is_empty() {
        return Err(EngineError::Invalid(problems));
    }
    let pieces = pieces_up_to(spec, n);
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize, Rational)> = pieces
        .iter()
        .enumerate()
        .map(|(k, p)| (vec![k], p.size, rat(1)))
        .collect();
    while let Some((seq, size, weight)) = stack.pop() {
        let last = *seq.last().expect("nonempty");
        for (k, p) in pieces.iter().enumerate() {
            if size + p.size <= n {
                let w = &weight * kernel_value(spec, &pieces[last].part, &p.part);
                let mut s = seq.clone();
                s.push(k);
                stack.push((s, size + p.size, w));
            }
        }
        let parts = seq.iter().map(|&k| pieces[k].part.clone()).collect();
        out.push((Composition { parts }, size, weight));
    }
    Ok(out)
}

/// How a floor may rest on the one below it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlacementRule {
    /// Any placement sharing at least one column.
    AllOverlaps,
    /// Overlapping, with the upper left end at or left of the lower left end.
    Leftist,
    /// The upper floor's midpoint lies strictly inside the lower floor's span.
    LocallyStable,
}

impl PlacementRule {
    /// Floors are `(offset, length)`, occupying columns `offset..offset+length`.
    pub fn admits(self, below: (i64, i64), above: (i64, i64)) -> bool {
        let (o, a) = below;
        let (q, b) = above;
        let overlap = o.max(q) < (o + a).min(q + b);
        match self {
            PlacementRule::AllOverlaps => overlap,
            PlacementRule::Leftist => overlap && q <= o,
            PlacementRule::LocallyStable => 2 * o < 2 * q + b && 2 * q + b < 2 * o + 2 * a,
        }
    }
}

/// Counts one-piece-per-floor towers of area `1..=n` whose consecutive
/// floors satisfy `rule`. Offsets are enumerated explicitly, bottom floor at 0.
pub fn enum_towers_geometric(rule: PlacementRule, n: usize) -> Series {
    fn grow(rule: PlacementRule, below: (i64, i64), area: usize, counts: &mut [u64]) {
        counts[area] += 1;
        let (o, a) = below;
        for b in 1..counts.len() - area {
            for q in o - b as i64..=o + a {
                if rule.admits(below, (q, b as i64)) {
                    grow(rule, (q, b as i64), area + b, counts);
                }
            }
        }
    }
    let mut counts = vec![0u64; n + 1];
    for len in 1..=n {
        grow(rule, (0, len as i64), len, &mut counts);
    }
    Series::new(
        counts[1..]
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect(),
    )
}
