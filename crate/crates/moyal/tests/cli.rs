use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

struct Run {
    status: i32,
    stdout: String,
    stderr: String,
}

fn moyal_with_stdin(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_moyal"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn moyal");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        status: out.status.code().expect("exit status"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn moyal(args: &[&str]) -> Run {
    moyal_with_stdin(args, "")
}

#[test]
fn eval_prints_canonical_form() {
    let r = moyal(&["eval", "p <*> x^2"]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "p*x^2 - h*x\n");
    assert_eq!(moyal(&["eval", "x^2 <*> p"]).stdout, "p*x^2 + h*x\n");
    assert_eq!(moyal(&["eval", "[x, p]"]).stdout, "h\n");
    assert_eq!(moyal(&["eval", "{x^2, p}"]).stdout, "2*x\n");
    assert_eq!(moyal(&["eval", "x <.> p"]).stdout, "p*x + h\n");
}

#[test]
fn eval_with_several_pairs() {
    let r = moyal(&["eval", "--n", "2", "x2 <*> p2 - p2 <*> x2"]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "h\n");
    assert_eq!(moyal(&["eval", "--n", "2", "[x1, p2]"]).stdout, "0\n");
    // the standard product is a plane-only operation
    let r = moyal(&["eval", "--n", "2", "x1 <.> p1"]);
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains("standard_product"), "{}", r.stderr);
}

#[test]
fn eval_json() {
    let r = moyal(&["eval", "p <*> x^2", "--format", "json"]);
    assert_eq!(r.status, 0);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["input"], "p <*> x^2");
    assert_eq!(v["result"], "p*x^2 - h*x");
}

#[test]
fn eval_batch_from_file_and_stdin() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# products\np <*> x^2\n\n[x, p]").unwrap();
    let path = file.path().to_str().unwrap();
    let r = moyal(&["eval", "--batch", path]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "p*x^2 - h*x\nh\n");

    let r = moyal_with_stdin(&["eval", "--batch", "-"], "x <*> x\n1/2 + h\n");
    assert_eq!(r.stdout, "x^2\n1/2 + h\n");

    let r = moyal_with_stdin(&["eval", "--batch", "-"], "x\nx +\n");
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);
}

#[test]
fn parse_errors_are_usage_errors() {
    for bad in ["x +", "x ^ -1", "y", "(x", "1/0", "x0"] {
        let r = moyal(&["eval", bad]);
        assert_eq!(r.status, 2, "{bad}");
        assert!(r.stdout.is_empty());
        assert!(r.stderr.starts_with("error:"), "{bad}: {}", r.stderr);
    }
}

#[test]
fn psi_and_phi_images() {
    let r = moyal(&["psi", "p"]);
    assert_eq!(r.status, 0);
    assert_eq!(r.stdout, "1 0 : 1\n");

    let r = moyal(&["phi", "x <.> p"]);
    assert_eq!(r.status, 0);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines, ["1 1 : 1", "0 0 : h"]);

    assert_eq!(moyal(&["psi", "p*x^2"]).stdout, "1 2 : 1\n0 1 : h\n");
    assert_eq!(moyal(&["psi", "x^2 <*> p"]).stdout, "1 2 : 1\n0 1 : 2*h\n");
}

#[test]
fn dense_corner() {
    let r = moyal(&["psi", "x^2", "--dense", "4"]);
    assert_eq!(r.status, 0);
    let rows: Vec<&str> = r
        .stdout
        .lines()
        .skip_while(|l| !l.is_empty())
        .skip(1)
        .collect();
    assert_eq!(
        rows,
        [
            "0\t0\t2*h^2\t0",
            "0\t0\t0\t6*h^2",
            "0\t0\t0\t0",
            "0\t0\t0\t0"
        ]
    );

    let r = moyal(&["psi", "p", "--dense"]);
    let rows = r
        .stdout
        .lines()
        .skip_while(|l| !l.is_empty())
        .skip(1)
        .count();
    assert_eq!(rows, 6);

    let r = moyal(&["phi", "p", "--dense", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["ebasis"], serde_json::json!([[1, 0, "1"]]));
    assert_eq!(v["dense"][1][0], "1");
    assert_eq!(v["dense"].as_array().unwrap().len(), 3);

    assert_eq!(moyal(&["psi", "p", "--dense", "0"]).status, 2);
}

#[test]
fn inverse_maps_read_ebasis_files() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# psi(p x^2)\n1 2 : 1\n0 1 : h").unwrap();
    let path = file.path().to_str().unwrap();
    let r = moyal(&["inv-psi", path]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "p*x^2\n");
    assert_eq!(moyal(&["inv-phi", path]).stdout, "p*x^2 + h*x\n");

    let r = moyal_with_stdin(&["inv-phi", "-", "--format", "json"], "1 1 : 1\n0 0 : h\n");
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["result"], "p*x + h");

    let r = moyal_with_stdin(&["inv-psi", "-"], "1 2 1\n");
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains("line 1"), "{}", r.stderr);
    assert_eq!(moyal(&["inv-psi", "/nonexistent/e.txt"]).status, 2);
}

#[test]
fn psi_output_round_trips_through_inv_psi() {
    for expr in ["p^3*x^2 - 1/2*h*x", "x <*> p <*> x", "3 + p^2*x^4"] {
        let image = moyal(&["psi", expr]).stdout;
        let back = moyal_with_stdin(&["inv-psi", "-"], &image);
        assert_eq!(back.stdout, moyal(&["eval", expr]).stdout, "{expr}");
    }
}

#[test]
fn verify_reports_and_exit_codes() {
    let r = moyal(&[
        "verify",
        "--suite",
        "gauge",
        "--trials",
        "5",
        "--max-degree",
        "3",
    ]);
    assert_eq!(r.status, 0, "{}", r.stdout);
    assert!(r.stdout.starts_with("PASS gauge"), "{}", r.stdout);

    assert_eq!(moyal(&["verify", "--trials", "0"]).status, 2);
    assert_eq!(moyal(&["verify", "--max-degree", "0"]).status, 2);
    assert_eq!(moyal(&["verify", "--suite", "nonsense"]).status, 2);
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify",
        "--trials",
        "3",
        "--max-degree",
        "3",
        "--seed",
        "17",
    ];
    let first = moyal(&args);
    assert_eq!(first.status, 0, "{}", first.stdout);
    assert_eq!(first.stdout, moyal(&args).stdout);
    for name in [
        "assoc",
        "unit",
        "semiclassical",
        "gauge",
        "hom-phi",
        "hom-psi",
        "eqE",
        "membership",
        "parser",
    ] {
        assert!(first.stdout.contains(name), "{name} missing");
    }
}

#[test]
fn bench_runs_and_validates_input() {
    let r = moyal(&[
        "bench",
        "--max-degree",
        "2",
        "--trials",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["consistent"], true);
    assert_eq!(v["trials"], 3);
    assert!(v["dense"]["median_us"].is_number());

    assert_eq!(moyal(&["bench", "--trials", "0"]).status, 2);
    let r = moyal(&["bench", "--max-degree", "4", "--dense-n", "3"]);
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains("13"), "{}", r.stderr);
}

#[test]
fn usage_errors() {
    assert_eq!(moyal(&[]).status, 2);
    assert_eq!(moyal(&["frobnicate"]).status, 2);
    assert_eq!(moyal(&["eval"]).status, 2);
    assert_eq!(moyal(&["eval", "x", "--n", "0"]).status, 2);
    let help = moyal(&["--help"]);
    assert_eq!(help.status, 0);
    assert!(help.stdout.contains("verify"));
}
