//! Golden tests: CLI output is diffed byte-for-byte against committed
//! expectations. Identical inputs must produce identical output across
//! runs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

fn relinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relinv"))
        .args(args)
        .current_dir(repo_root())
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).expect("golden file exists")
}

fn assert_matches_golden(args: &[&str], name: &str, expect_code: i32) {
    let out = relinv(args);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout, golden(name), "stdout mismatch for {args:?}");
    assert_eq!(
        out.status.code(),
        Some(expect_code),
        "exit code mismatch for {args:?}"
    );
}

#[test]
fn gamma_basis_outputs_are_stable() {
    assert_matches_golden(&["gamma-basis", "specs/o2.json"], "o2_gamma_basis.txt", 0);
    assert_matches_golden(
        &["gamma-basis", "specs/z3z3.json"],
        "z3z3_gamma_basis.txt",
        0,
    );
    assert_matches_golden(
        &["gamma-basis", "specs/d6t2z2.json"],
        "d6t2z2_gamma_basis.txt",
        0,
    );
}

#[test]
fn validate_output_is_stable() {
    assert_matches_golden(&["validate", "specs/o2.json"], "o2_validate.txt", 0);
}

#[test]
fn verify_output_is_stable() {
    assert_matches_golden(
        &["verify", "specs/z3z3.json", "--degree", "6"],
        "z3z3_verify.txt",
        0,
    );
    assert_matches_golden(
        &[
            "verify",
            "specs/z3z3.json",
            "--degree",
            "3",
            "--drop",
            "z2^3",
        ],
        "z3z3_verify_drop.txt",
        1,
    );
}

#[test]
fn identical_runs_are_byte_identical() {
    let first = relinv(&["gamma-basis", "specs/d6t2z2.json"]);
    let second = relinv(&["gamma-basis", "specs/d6t2z2.json"]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), second.status.code());
}

#[test]
fn reynolds_and_decompose_match_worked_values() {
    let out = relinv(&["reynolds", "specs/o2.json", "--j", "1", "x"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "x\n");
    assert_eq!(out.status.code(), Some(0));

    let out = relinv(&["reynolds", "specs/o2.json", "--j", "0", "0"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0\n");

    let out = relinv(&["decompose", "specs/z3z3.json", "z2 + z2b"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "j=0: 0\nj=1: z2\nj=2: z2b\n"
    );
}

#[test]
fn usage_errors_exit_two() {
    // Unknown subcommand flag handling comes from clap; domain-level usage
    // errors must exit 2 as well.
    let out = relinv(&["reynolds", "specs/o2.json", "--j", "5", "x"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("out of range"), "{err}");

    let out = relinv(&["reynolds", "specs/o2.json", "--j", "0", "z1 z2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("implicit multiplication"), "{err}");

    let out = relinv(&["validate", "specs/missing.json"]);
    assert_eq!(out.status.code(), Some(2));

    let out = relinv(&["gamma-basis", "specs/z3z3.json", "--method", "main1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("requires index m = 2"), "{err}");

    let out = relinv(&["verify", "specs/o2.json", "--drop", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_specs_exit_one_with_named_failures() {
    let dir = std::env::temp_dir().join("relinv-golden-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad_sigma.json");
    let text = std::fs::read_to_string(repo_root().join("specs/z3z3.json"))
        .unwrap()
        .replace("\"sigma_delta_power\": 1", "\"sigma_delta_power\": 3");
    std::fs::write(&bad, text).unwrap();
    let out = relinv(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(
        stdout.contains("FAIL sigma(delta) is a primitive 3-th root of unity"),
        "{stdout}"
    );

    // A basis element that H does not fix is reported by name.
    let bad2 = dir.join("bad_basis.json");
    let text = std::fs::read_to_string(repo_root().join("specs/o2.json"))
        .unwrap()
        .replace("\"z*zb\", \"x\"", "\"z^2\", \"x\"");
    std::fs::write(&bad2, text).unwrap();
    let out = relinv(&["validate", bad2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(
        stdout.contains("FAIL h_basis[1] is fixed by h_generator[1] (torus)"),
        "{stdout}"
    );
}

#[test]
fn check_flag_rejects_non_invariant_input() {
    let out = relinv(&["decompose", "specs/o2.json", "--check", "z"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not H-invariant"), "{err}");

    // Without --check the operator formula is applied as-is.
    let out = relinv(&["decompose", "specs/o2.json", "z"]);
    assert_eq!(out.status.code(), Some(0));

    let out = relinv(&["reynolds", "specs/o2.json", "--j", "0", "--check", "x"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn method_flag_selects_the_construction() {
    let auto = relinv(&["gamma-basis", "specs/o2.json"]);
    let main1 = relinv(&["gamma-basis", "specs/o2.json", "--method", "main1"]);
    let main2 = relinv(&["gamma-basis", "specs/o2.json", "--method", "main2"]);
    assert_eq!(auto.stdout, main1.stdout);
    // The general construction labels products by pattern, but the
    // polynomials agree.
    let strip = |bytes: &[u8]| -> Vec<String> {
        String::from_utf8(bytes.to_vec())
            .unwrap()
            .lines()
            .map(|l| l.split('\t').next().unwrap().to_string())
            .collect()
    };
    assert_eq!(strip(&auto.stdout), strip(&main2.stdout));
}
