//! Command-line front end.
//!
//! `run` takes the full argument vector and returns the exit code together
//! with everything that would be written to stdout and stderr, so the whole
//! surface can be exercised in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::algebra::{series_expand, RationalFunction, Series};
use crate::engine::{self, DerivationTrace, Kind, ProblemSpec};
use crate::oracle::enum_compositions_weighted;
use crate::parser::{parse_linear, parse_poly, ExprSource};

/// Largest accepted `--series` / `--order`.
pub const MAX_ORDER: usize = 10_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "lego",
    about = "Exact generating functions for weighted LEGO towers",
    disable_version_flag = true
)]
struct Args {
    /// Also print the coefficients of t^1..t^N
    #[arg(long, global = true, value_name = "N")]
    series: Option<usize>,
    /// Also print a LaTeX rendering of f(t)
    #[arg(long, global = true)]
    latex: bool,
    /// Print the derivation: h and g functions, linear system, solution
    #[arg(long, global = true)]
    trace: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// One color of 1-D pieces: size form L(a), kernel p(a, b)
    Scalar {
        #[arg(long = "L", allow_hyphen_values = true)]
        size: String,
        #[arg(long = "p", allow_hyphen_values = true)]
        kernel: String,
    },
    /// Several colors of 1-D pieces, read from a JSON spec file
    Colored {
        #[arg(long)]
        spec: PathBuf,
    },
    /// One color of m-dimensional pieces over a[1..m], b[1..m]
    Multidim {
        #[arg(long)]
        dim: usize,
        #[arg(long = "L", allow_hyphen_values = true)]
        size: String,
        #[arg(long = "p", allow_hyphen_values = true)]
        kernel: String,
    },
    /// Several colors of multi-dimensional pieces, read from a JSON spec file
    ColoredMultidim {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Parallel towers built from 1×a, .., R×a pieces
    Migdal {
        #[arg(long = "R")]
        pieces: usize,
    },
    /// Compare the derived series with brute-force enumeration
    Verify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        order: usize,
    },
}

/// JSON problem description.
///
/// ```json
/// {"kind": "colored", "L": ["2*a", "2*a-1"], "p": [["2*a-1", "2*a"], ["2*a-2", "2*a-1"]]}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(rename = "L")]
    pub sizes: Vec<String>,
    #[serde(rename = "p")]
    pub kernels: Vec<Vec<String>>,
}

impl SpecFile {
    pub fn to_problem(&self) -> Result<ProblemSpec, String> {
        let kind: Kind = self.kind.parse()?;
        let s = self.sizes.len();
        let dims = self.dims.clone().unwrap_or_else(|| vec![1; s]);
        if dims.len() != s {
            return Err(format!(
                "shape: {} dims given for {} size forms",
                dims.len(),
                s
            ));
        }
        if self.kernels.len() != s || self.kernels.iter().any(|r| r.len() != s) {
            return Err(format!("shape: p must be a {s}x{s} matrix"));
        }
        let mut spec = ProblemSpec {
            kind,
            dims,
            forms: Vec::with_capacity(s),
            kernels: Vec::with_capacity(s),
        };
        for (i, text) in self.sizes.iter().enumerate() {
            let vars = spec.a_vars(i);
            let form = parse_linear(&ExprSource::new(text, &vars))
                .map_err(|e| format!("L[{}] = \"{text}\": {e}", i + 1))?;
            spec.forms.push(form);
        }
        for (i, row) in self.kernels.iter().enumerate() {
            let mut parsed = Vec::with_capacity(s);
            for (j, text) in row.iter().enumerate() {
                let vars = spec.kernel_vars(i, j);
                let p = parse_poly(&ExprSource::new(text, &vars))
                    .map_err(|e| format!("p[{}][{}] = \"{text}\": {e}", i + 1, j + 1))?;
                parsed.push(p);
            }
            spec.kernels.push(parsed);
        }
        Ok(spec)
    }

    pub fn from_problem(spec: &ProblemSpec) -> Self {
        SpecFile {
            kind: spec.kind.as_str().to_string(),
            dims: Some(spec.dims.clone()),
            sizes: spec.forms.iter().map(|f| f.to_string()).collect(),
            kernels: spec
                .kernels
                .iter()
                .map(|row| row.iter().map(|p| p.to_string()).collect())
                .collect(),
        }
    }

    pub fn read(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn usage_error(msg: impl std::fmt::Display) -> CliOutput {
    CliOutput {
        code: EXIT_USAGE,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    }
}

/// Checks each size form against the text it came from, then the whole spec.
fn check(spec: &ProblemSpec, size_texts: &[String]) -> Result<(), String> {
    let mut problems = Vec::new();
    for (i, (form, text)) in spec.forms.iter().zip(size_texts).enumerate() {
        for v in form.violations() {
            problems.push(format!(
                "invalid size form \"{text}\" (color {}): {v}",
                i + 1
            ));
        }
    }
    if problems.is_empty() {
        problems = engine::validate(spec);
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(problems.join("\n       "))
    }
}

fn single_color(kind: Kind, dim: usize, size: &str, kernel: &str) -> Result<ProblemSpec, String> {
    let file = SpecFile {
        kind: kind.as_str().to_string(),
        dims: Some(vec![dim]),
        sizes: vec![size.to_string()],
        kernels: vec![vec![kernel.to_string()]],
    };
    file.to_problem()
}

fn load(path: &Path, expected: Option<Kind>) -> Result<(ProblemSpec, Vec<String>), String> {
    let file = SpecFile::read(path)?;
    let spec = file.to_problem()?;
    if let Some(kind) = expected {
        if spec.kind != kind {
            return Err(format!(
                "{} describes a {} problem, expected {kind}",
                path.display(),
                spec.kind
            ));
        }
    }
    Ok((spec, file.sizes))
}

fn report(
    out: &mut String,
    f: &RationalFunction,
    trace: &DerivationTrace,
    args: &Args,
) -> Result<(), String> {
    writeln!(out, "f(t) = {}", f.canonical_string()).unwrap();
    if let Some(n) = args.series {
        let s = series_expand(f, n).map_err(|e| e.to_string())?;
        writeln!(out, "a(1..{n}) = {s}").unwrap();
    }
    if args.latex {
        writeln!(out, "latex: {}", f.to_latex()).unwrap();
    }
    if args.trace {
        write!(out, "{trace}").unwrap();
    }
    Ok(())
}

fn verify(spec: &ProblemSpec, order: usize) -> Result<(i32, String), String> {
    let (f, _) = engine::solve(spec).map_err(|e| e.to_string())?;
    let derived = series_expand(&f, order).map_err(|e| e.to_string())?;
    let counted = enum_compositions_weighted(spec, order).map_err(|e| e.to_string())?;
    let mut out = String::new();
    writeln!(out, "f(t) = {}", f.canonical_string()).unwrap();
    let code = compare(&mut out, &derived, &counted);
    Ok((code, out))
}

/// Per-coefficient verdicts plus a summary line; returns the exit code.
fn compare(out: &mut String, derived: &Series, counted: &Series) -> i32 {
    let order = derived.coeffs.len();
    let mut bad = Vec::new();
    for (n, (x, y)) in derived.coeffs.iter().zip(&counted.coeffs).enumerate() {
        let verdict = if x == y { "PASS" } else { "FAIL" };
        writeln!(out, "t^{}: engine {x}, oracle {y} {verdict}", n + 1).unwrap();
        if x != y {
            bad.push(n + 1);
        }
    }
    let matched = order - bad.len();
    if bad.is_empty() {
        writeln!(out, "PASS ({matched}/{order} coefficients match)").unwrap();
        EXIT_OK
    } else {
        let list: Vec<String> = bad.iter().map(usize::to_string).collect();
        writeln!(
            out,
            "FAIL ({matched}/{order} coefficients match; differing at n = {})",
            list.join(", ")
        )
        .unwrap();
        EXIT_MISMATCH
    }
}

pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    if let Some(n) = args.series {
        if n == 0 || n > MAX_ORDER {
            return usage_error(format!("--series must be between 1 and {MAX_ORDER}"));
        }
    }

    let loaded = match &args.command {
        Command::Scalar { size, kernel } => {
            single_color(Kind::Scalar, 1, size, kernel).map(|s| (s, vec![size.clone()]))
        }
        Command::Multidim { dim, size, kernel } => {
            single_color(Kind::Multidim, *dim, size, kernel).map(|s| (s, vec![size.clone()]))
        }
        Command::Colored { spec } => load(spec, Some(Kind::Colored)),
        Command::ColoredMultidim { spec } => load(spec, Some(Kind::ColoredMultidim)),
        Command::Migdal { pieces } => engine::migdal_spec(*pieces)
            .map(|s| {
                let texts = s.forms.iter().map(|f| f.to_string()).collect();
                (s, texts)
            })
            .map_err(|e| e.to_string()),
        Command::Verify { spec, order } => {
            if *order == 0 || *order > MAX_ORDER {
                return usage_error(format!("--order must be between 1 and {MAX_ORDER}"));
            }
            load(spec, None)
        }
    };
    let (spec, texts) = match loaded {
        Ok(x) => x,
        Err(msg) => return usage_error(msg),
    };
    if let Err(msg) = check(&spec, &texts) {
        return usage_error(msg);
    }

    if let Command::Verify { order, .. } = &args.command {
        return match verify(&spec, *order) {
            Ok((code, stdout)) => CliOutput {
                code,
                stdout,
                stderr: String::new(),
            },
            Err(msg) => usage_error(msg),
        };
    }

    let (f, trace) = match engine::solve(&spec) {
        Ok(x) => x,
        Err(e) => return usage_error(e),
    };
    let mut stdout = String::new();
    if let Err(msg) = report(&mut stdout, &f, &trace, &args) {
        return usage_error(msg);
    }
    CliOutput {
        code: EXIT_OK,
        stdout,
        stderr: String::new(),
    }
}
