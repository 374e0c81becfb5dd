//! Temperley's transfer method for weighted (colored, vector) compositions.
//!
//! For color `i` let `Φ_i(z, t) = Σ_a F_i(a)·z^a` where `F_i(a)` enumerates
//! towers whose bottom floor is `a` of color `i`. Expanding each kernel in
//! the top floor's lengths, `p_{i,j}(a, b) = Σ_r p_{i,j}^{(r)}(a)·b^r`, gives
//!
//! ```text
//! Φ_i(z, t) = h_i(z, t) + Σ_{j,r} g_{i,j}^{(r)}(z, t) · Φ_j^{[r]}(1, t)
//! ```
//!
//! with `h_i = Σ_a t^{L_i(a)} z^a`, `g_{i,j}^{(r)} = Σ_a p_{i,j}^{(r)}(a) t^{L_i(a)} z^a`
//! and `Φ^{[r]} = θ^r Φ`, `θ_k = z_k ∂/∂z_k`. Applying `θ^l` for every `l` in
//! the unknown box and setting `z = 1` closes a square linear system over
//! Q(t) whose solution yields `f(t) = Σ_j Φ_j(1, t)`.

mod linsolve;
mod trace;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{
    closed_sum, rat, t_var, AffineForm, AlgebraError, Polynomial, RationalFunction, Var,
};

pub use trace::{DerivationTrace, KernelSum, Unknown};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Scalar,
    Colored,
    Multidim,
    ColoredMultidim,
}

impl Kind {
    /// Multidimensional kinds name their variables `a[k]`, `b[k]`, `z[k]`;
    /// the others use bare `a`, `b`, `z`.
    pub fn indexed(self) -> bool {
        matches!(self, Kind::Multidim | Kind::ColoredMultidim)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Scalar => "scalar",
            Kind::Colored => "colored",
            Kind::Multidim => "multidim",
            Kind::ColoredMultidim => "colored_multidim",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "scalar" => Ok(Kind::Scalar),
            "colored" => Ok(Kind::Colored),
            "multidim" => Ok(Kind::Multidim),
            "colored_multidim" | "colored-multidim" => Ok(Kind::ColoredMultidim),
            other => Err(format!("unknown problem kind `{other}`")),
        }
    }
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("invalid problem:\n  {}", .0.join("\n  "))]
    Invalid(Vec<String>),
    #[error("R must be at least 1, got {0}")]
    BadPieceCount(usize),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Size forms and placement kernels for `s` colors.
///
/// Color `i` has `dims[i]` side lengths. `forms[i]` is over the color's
/// `a`-variables and `kernels[i][j]` over the `a`-variables of color `i` (the
/// lower floor) and the `b`-variables of color `j` (the upper floor).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub kind: Kind,
    pub dims: Vec<usize>,
    pub forms: Vec<AffineForm>,
    pub kernels: Vec<Vec<Polynomial>>,
}

fn piece_vars(kind: Kind, base: &str, dim: usize) -> Vec<Var> {
    if kind.indexed() {
        (1..=dim).map(|k| Var::indexed(base, k)).collect()
    } else {
        vec![Var::new(base)]
    }
}

impl ProblemSpec {
    pub fn scalar(form: AffineForm, kernel: Polynomial) -> Self {
        ProblemSpec {
            kind: Kind::Scalar,
            dims: vec![1],
            forms: vec![form],
            kernels: vec![vec![kernel]],
        }
    }

    pub fn colored(forms: Vec<AffineForm>, kernels: Vec<Vec<Polynomial>>) -> Self {
        ProblemSpec {
            kind: Kind::Colored,
            dims: vec![1; forms.len()],
            forms,
            kernels,
        }
    }

    pub fn multidim(dim: usize, form: AffineForm, kernel: Polynomial) -> Self {
        ProblemSpec {
            kind: Kind::Multidim,
            dims: vec![dim],
            forms: vec![form],
            kernels: vec![vec![kernel]],
        }
    }

    pub fn colored_multidim(
        dims: Vec<usize>,
        forms: Vec<AffineForm>,
        kernels: Vec<Vec<Polynomial>>,
    ) -> Self {
        ProblemSpec {
            kind: Kind::ColoredMultidim,
            dims,
            forms,
            kernels,
        }
    }

    pub fn colors(&self) -> usize {
        self.forms.len()
    }

    /// Lengths of the lower floor of color `i`.
    pub fn a_vars(&self, i: usize) -> Vec<Var> {
        piece_vars(self.kind, "a", self.dims[i])
    }

    /// Lengths of the upper floor of color `j`.
    pub fn b_vars(&self, j: usize) -> Vec<Var> {
        piece_vars(self.kind, "b", self.dims[j])
    }

    /// Catalytic variables marking the lengths of a first floor of color `i`.
    pub fn z_vars(&self, i: usize) -> Vec<Var> {
        piece_vars(self.kind, "z", self.dims[i])
    }

    /// Variables a kernel `p_{i,j}` may mention.
    pub fn kernel_vars(&self, i: usize, j: usize) -> Vec<Var> {
        let mut v = self.a_vars(i);
        v.extend(self.b_vars(j));
        v
    }
}

/// Lists every problem with the spec; an empty list means it is solvable.
pub fn validate(spec: &ProblemSpec) -> Vec<String> {
    let mut out = Vec::new();
    let s = spec.forms.len();
    if s == 0 {
        out.push("at least one color is required".to_string());
    }
    if spec.dims.len() != s {
        out.push(format!(
            "shape: {} dimensions given for {} size forms",
            spec.dims.len(),
            s
        ));
    }
    if spec.kernels.len() != s || spec.kernels.iter().any(|row| row.len() != s) {
        let shape: Vec<String> = spec.kernels.iter().map(|r| r.len().to_string()).collect();
        out.push(format!(
            "shape: kernel matrix must be {s}x{s}, got rows of lengths [{}]",
            shape.join(", ")
        ));
    }
    if spec.dims.contains(&0) {
        out.push("shape: every dimension must be at least 1".to_string());
    }
    match spec.kind {
        Kind::Scalar if s != 1 || spec.dims != [1] => {
            out.push("scalar problems have exactly one color of dimension 1".to_string())
        }
        Kind::Colored if spec.dims.iter().any(|&d| d != 1) => {
            out.push("colored problems have dimension 1 for every color".to_string())
        }
        Kind::Multidim if s != 1 => {
            out.push("multidim problems have exactly one color".to_string())
        }
        _ => {}
    }
    if !out.is_empty() {
        return out;
    }

    for (i, form) in spec.forms.iter().enumerate() {
        let avars = spec.a_vars(i);
        let mut form = form.clone();
        for v in &avars {
            form.coeffs.entry(v.clone()).or_insert(0);
        }
        for v in form.coeffs.keys().filter(|v| !avars.contains(v)) {
            out.push(format!(
                "size form {} of color {}: variable {v} is not one of its lengths",
                form,
                i + 1
            ));
        }
        out.extend(
            form.violations()
                .into_iter()
                .map(|m| format!("color {}: {m}", i + 1)),
        );
    }
    for i in 0..s {
        for j in 0..s {
            let allowed = spec.kernel_vars(i, j);
            for v in spec.kernels[i][j].variables() {
                if !allowed.contains(&v) {
                    out.push(format!(
                        "kernel p[{}][{}] = {} mentions {v}, which is not a length of either floor",
                        i + 1,
                        j + 1,
                        spec.kernels[i][j]
                    ));
                }
            }
        }
    }
    out
}

/// All multi-indices `r` with `0 ≤ r ≤ bound` componentwise, lexicographic.
fn index_box(bound: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=b).map(move |e| {
                    let mut v = prefix.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    out
}

/// `p = Σ_r c_r·Π vars[k]^{r_k}` with no `c_r` mentioning `vars`.
fn expand_in(p: &Polynomial, vars: &[Var]) -> BTreeMap<Vec<u32>, Polynomial> {
    let mut out = BTreeMap::new();
    match vars.split_first() {
        None => {
            if !p.is_zero() {
                out.insert(vec![], p.clone());
            }
        }
        Some((v, rest)) => {
            for (e, c) in p.coeffs_in(v).into_iter().enumerate() {
                for (mut r, cr) in expand_in(&c, rest) {
                    r.insert(0, e as u32);
                    out.insert(r, cr);
                }
            }
        }
    }
    out
}

/// Memoized `θ^l f` for multi-indices `l`.
struct ThetaPowers<'a> {
    zvars: &'a [Var],
    cache: HashMap<Vec<u32>, RationalFunction>,
}

impl<'a> ThetaPowers<'a> {
    fn new(f: RationalFunction, zvars: &'a [Var]) -> Self {
        let mut cache = HashMap::new();
        cache.insert(vec![0; zvars.len()], f);
        ThetaPowers { zvars, cache }
    }

    fn get(&mut self, l: &[u32]) -> RationalFunction {
        if let Some(f) = self.cache.get(l) {
            return f.clone();
        }
        let k = l
            .iter()
            .rposition(|&e| e > 0)
            .expect("zero index is cached");
        let mut lower = l.to_vec();
        lower[k] -= 1;
        let f = self.get(&lower).theta(&self.zvars[k]);
        self.cache.insert(l.to_vec(), f.clone());
        f
    }
}

/// Derives `f(t)` for a valid problem.
pub fn solve(spec: &ProblemSpec) -> Result<(RationalFunction, DerivationTrace), EngineError> {
    let problems = validate(spec);
    if !problems.is_empty() {
        return Err(EngineError::Invalid(problems));
    }
    let s = spec.colors();

    // kernel expansions in the upper floor's lengths
    let mut expansions: Vec<Vec<BTreeMap<Vec<u32>, Polynomial>>> = Vec::with_capacity(s);
    for i in 0..s {
        expansions.push(
            (0..s)
                .map(|j| expand_in(&spec.kernels[i][j], &spec.b_vars(j)))
                .collect(),
        );
    }

    // unknown box per color: M_j[k] = max_i deg_{b_k} p_{i,j}
    let bounds: Vec<Vec<u32>> = (0..s)
        .map(|j| {
            spec.b_vars(j)
                .iter()
                .map(|b| {
                    (0..s)
                        .map(|i| spec.kernels[i][j].degree_in(b))
                        .max()
                        .unwrap_or(0)
                })
                .collect()
        })
        .collect();
    let mut unknowns = Vec::new();
    for (j, bound) in bounds.iter().enumerate() {
        for r in index_box(bound) {
            unknowns.push(Unknown { color: j, index: r });
        }
    }
    let position: HashMap<Unknown, usize> = unknowns
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, u)| (u, k))
        .collect();

    let forms: Vec<AffineForm> = (0..s)
        .map(|i| {
            let mut form = spec.forms[i].clone();
            for v in spec.a_vars(i) {
                form.coeffs.entry(v).or_insert(0);
            }
            form
        })
        .collect();
    let zvars: Vec<Vec<Var>> = (0..s).map(|i| spec.z_vars(i)).collect();

    let mut h_funcs = Vec::with_capacity(s);
    let mut g_funcs = Vec::new();
    let mut h_powers = Vec::with_capacity(s);
    let mut g_powers: Vec<Vec<(usize, Vec<u32>, ThetaPowers)>> = Vec::with_capacity(s);
    for i in 0..s {
        let h = closed_sum(&Polynomial::one(), &forms[i], &zvars[i])?;
        h_funcs.push(h.clone());
        h_powers.push(ThetaPowers::new(h, &zvars[i]));
        let mut row = Vec::new();
        for (j, expansion) in expansions[i].iter().enumerate() {
            for (r, coeff) in expansion {
                let g = closed_sum(coeff, &forms[i], &zvars[i])?;
                g_funcs.push(KernelSum {
                    from: i,
                    to: j,
                    index: r.clone(),
                    func: g.clone(),
                });
                row.push((j, r.clone(), ThetaPowers::new(g, &zvars[i])));
            }
        }
        g_powers.push(row);
    }

    let n = unknowns.len();
    let mut matrix = vec![vec![RationalFunction::zero(); n]; n];
    let mut rhs = vec![RationalFunction::zero(); n];
    for (row_idx, eq) in unknowns.iter().enumerate() {
        let i = eq.color;
        let l = &eq.index;
        matrix[row_idx][row_idx] = RationalFunction::one();
        rhs[row_idx] = h_powers[i].get(l).eval_at_one(&zvars[i])?;
        for (j, r, powers) in g_powers[i].iter_mut() {
            let col = position[&Unknown {
                color: *j,
                index: r.clone(),
            }];
            let coupling = powers.get(l).eval_at_one(&zvars[i])?;
            matrix[row_idx][col] = &matrix[row_idx][col] - &coupling;
        }
    }

    let sol = linsolve::solve(&matrix, &rhs).map_err(|e| match e {
        linsolve::SolveError::Singular => {
            EngineError::Internal("transfer system is singular".into())
        }
        linsolve::SolveError::Residual(row) => EngineError::Internal(format!(
            "solution fails equation {} of the transfer system",
            row + 1
        )),
    })?;
    let det_at_zero = sol.determinant.substitute(&t_var(), &rat(0))?;
    if !det_at_zero.is_one() {
        return Err(EngineError::Internal(format!(
            "transfer determinant at t = 0 is {det_at_zero}, expected 1"
        )));
    }

    let result_num = unknowns
        .iter()
        .zip(&sol.numerators)
        .filter(|(u, _)| u.index.iter().all(|&e| e == 0))
        .fold(Polynomial::zero(), |acc, (_, y)| &acc + y);
    let result = RationalFunction::new(result_num, sol.denominator.clone())?;

    let trace = DerivationTrace {
        h_funcs,
        g_funcs,
        unknowns,
        system_matrix: matrix,
        rhs,
        solution: sol.values,
        determinant: sol.determinant,
        result: result.clone(),
    };
    Ok((result, trace))
}

/// The colored problem for parallel towers built from `1×a, .., R×a`
/// pieces: color `i` has area `i·a`, and a `j×b` piece sits on an `i×a`
/// piece in `(i+j−1)(a+b−1)` ways.
pub fn migdal_spec(pieces: usize) -> Result<ProblemSpec, EngineError> {
    if pieces < 1 {
        return Err(EngineError::BadPieceCount(pieces));
    }
    let a = Var::new("a");
    let b = Var::new("b");
    let overlap = &(&Polynomial::var(a.clone()) + &Polynomial::var(b)) - &Polynomial::one();
    let forms = (1..=pieces)
        .map(|i| AffineForm::new(0, [(a.clone(), i as i64)]))
        .collect();
    let kernels = (1..=pieces)
        .map(|i| {
            (1..=pieces)
                .map(|j| overlap.scale(&rat((i + j - 1) as i64)))
                .collect()
        })
        .collect();
    Ok(ProblemSpec::colored(forms, kernels))
}

pub fn migdal(pieces: usize) -> Result<(RationalFunction, DerivationTrace), EngineError> {
    solve(&migdal_spec(pieces)?)
}
