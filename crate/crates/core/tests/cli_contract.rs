//! The command-line surface: output bytes, exit codes, spec files.

mod common;

use std::io::Write;

use lego_towers::cli::{run, CliOutput, SpecFile, EXIT_OK, EXIT_USAGE};

fn go(args: &[&str]) -> CliOutput {
    run(std::iter::once("lego").chain(args.iter().copied()))
}

fn spec_file(json: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(json.as_bytes()).unwrap();
    file
}

const TEMPERLEY: &str = "f(t) = (t-3*t^2+3*t^3-t^4)/(1-5*t+7*t^2-4*t^3)\n";

#[test]
fn scalar_temperley() {
    let out = go(&["scalar", "--L", "a", "--p", "a+b-1"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, TEMPERLEY);
    assert!(out.stderr.is_empty());
}

#[test]
fn scalar_with_series() {
    let out = go(&["scalar", "--L", "a", "--p", "a+b-1", "--series", "5"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(
        out.stdout,
        format!("{TEMPERLEY}a(1..5) = 1, 2, 6, 19, 61\n")
    );
}

#[test]
fn verify_temperley_spec() {
    let file = spec_file(r#"{"kind": "scalar", "L": ["a"], "p": [["a+b-1"]]}"#);
    let out = go(&[
        "verify",
        "--spec",
        file.path().to_str().unwrap(),
        "--order",
        "12",
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let last = out.stdout.lines().last().unwrap();
    assert_eq!(last, "PASS (12/12 coefficients match)");
    assert_eq!(
        out.stdout.lines().filter(|l| l.ends_with(" PASS")).count(),
        12
    );
    assert!(out
        .stdout
        .contains("t^12: engine 212980, oracle 212980 PASS\n"));
}

#[test]
fn degenerate_size_form_is_rejected() {
    let out = go(&["scalar", "--L", "a-a", "--p", "b"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.contains("\"a-a\""), "{}", out.stderr);
}

#[test]
fn latex_and_trace() {
    let out = go(&["scalar", "--L", "a", "--p", "b", "--latex", "--trace"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("f(t) = (t-t^2)/(1-3*t+t^2)\n"));
    assert!(out.stdout.contains("latex: \\frac{"));
    assert!(out.stdout.contains("Phi_1^[0](1,t)"));
}

#[test]
fn spec_file_subcommands() {
    let colored = spec_file(
        r#"{"kind": "colored", "L": ["2*a", "2*a-1"], "p": [["2*a-1", "2*a"], ["2*a-2", "2*a-1"]]}"#,
    );
    let out = go(&[
        "colored",
        "--spec",
        colored.path().to_str().unwrap(),
        "--series",
        "5",
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(
        out.stdout,
        "f(t) = (t+t^2-t^3-t^4)/(1-t-3*t^2)\na(1..5) = 1, 2, 4, 9, 21\n"
    );

    // a colored file handed to the wrong subcommand
    let out = go(&[
        "colored-multidim",
        "--spec",
        colored.path().to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_USAGE);

    let cm = spec_file(
        r#"{"kind": "colored_multidim", "dims": [1, 2], "L": ["a[1]+1", "a[1]+a[2]"],
            "p": [["a[1]+b[1]-1", "(a[1]+b[1]-1)*b[2]"],
                  ["a[2]*(a[1]+b[1]-1)", "(a[2]+b[2]-1)*(a[1]+b[1]-1)"]]}"#,
    );
    let out = go(&[
        "verify",
        "--spec",
        cm.path().to_str().unwrap(),
        "--order",
        "10",
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.ends_with("PASS (10/10 coefficients match)\n"));
}

#[test]
fn multidim_and_migdal() {
    let out = go(&["multidim", "--dim", "2", "--L", "2*a[1]+2*a[2]", "--p", "1"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "f(t) = (t^4)/(1-2*t^2)\n");
    let one = go(&["migdal", "--R", "1"]);
    assert_eq!(one.stdout, TEMPERLEY);
    let three = go(&["migdal", "--R", "3", "--series", "5"]);
    assert!(
        three.stdout.ends_with("a(1..5) = 1, 3, 11, 45, 184\n"),
        "{}",
        three.stdout
    );
}

#[test]
fn usage_errors() {
    assert_eq!(go(&["tower"]).code, EXIT_USAGE);
    assert_eq!(go(&["scalar", "--L", "a"]).code, EXIT_USAGE);
    assert_eq!(go(&["scalar", "--L", "a", "--p", "c"]).code, EXIT_USAGE);
    assert_eq!(go(&["scalar", "--L", "a", "--p", "2a"]).code, EXIT_USAGE);
    assert_eq!(
        go(&["colored", "--spec", "/nonexistent/spec.json"]).code,
        EXIT_USAGE
    );
    let bad = spec_file(r#"{"kind": "scalar", "L": ["a"], "p": [["b"]], "q": 1}"#);
    assert_eq!(
        go(&[
            "verify",
            "--spec",
            bad.path().to_str().unwrap(),
            "--order",
            "3"
        ])
        .code,
        EXIT_USAGE
    );
    let help = go(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("migdal"));
}

#[test]
fn output_is_deterministic() {
    let argv = ["colored-multidim", "--trace", "--series", "8", "--spec"];
    let cm = spec_file(
        r#"{"kind": "colored_multidim", "dims": [1, 2], "L": ["a[1]+1", "a[1]+a[2]"],
            "p": [["a[1]+b[1]-1", "(a[1]+b[1]-1)*b[2]"],
                  ["a[2]*(a[1]+b[1]-1)", "(a[2]+b[2]-1)*(a[1]+b[1]-1)"]]}"#,
    );
    let path = cm.path().to_str().unwrap();
    let args: Vec<&str> = argv.iter().copied().chain([path]).collect();
    let first = go(&args);
    assert_eq!(first.code, EXIT_OK, "{}", first.stderr);
    assert_eq!(go(&args), first);
}

#[test]
fn spec_file_round_trip() {
    let mut specs = vec![
        common::temperley(),
        common::locally_stable(),
        common::multidim_call(),
    ];
    specs.extend(common::colored_multidim_calls());
    for spec in specs {
        let file = SpecFile::from_problem(&spec);
        let json = serde_json::to_string(&file).unwrap();
        let back: SpecFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_problem().unwrap(), spec);
    }
}
