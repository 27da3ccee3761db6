use std::path::Path;
use std::process::{Command, Output};

use ordiso::linalg::{CMatrix, Hermitian};
use ordiso_cli::matrix_file::{parse_str, read_matrix, to_string, write_matrix};
use ordiso_cli::RunReport;
use tempfile::TempDir;

fn ordiso(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordiso"))
        .args(args)
        .current_dir(dir)
        .env_remove("ORDISO_TOL")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, m: &CMatrix) {
    write_matrix(&dir.join(name), m).unwrap();
}

#[test]
fn gen_is_seeded_and_round_trips() {
    let dir = TempDir::new().unwrap();
    for kind in ["hermitian", "psd", "effect", "halfplane"] {
        let a = ordiso(&["gen", "--kind", kind, "--dim", "4", "--seed", "7"], dir.path());
        let b = ordiso(&["gen", "--kind", kind, "--dim", "4", "--seed", "7"], dir.path());
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{kind}");
        let text = String::from_utf8(a.stdout).unwrap();
        let m = parse_str(&text, kind).unwrap();
        assert_eq!(to_string(&m), text);
    }
    let c = ordiso(&["gen", "--kind", "hermitian", "--dim", "4", "--seed", "8"], dir.path());
    assert_ne!(c.stdout, ordiso(&["gen", "--kind", "hermitian", "--dim", "4", "--seed", "7"], dir.path()).stdout);
}

#[test]
fn verify_reports_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let run = |extra: &[&str]| {
        let mut args = vec!["verify", "theta-inversion", "--seed", "42", "--trials", "500"];
        args.extend_from_slice(extra);
        let out = ordiso(&args, dir.path());
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let r: RunReport = serde_json::from_slice(&out.stdout).unwrap();
        assert!(r.passed && r.failures.is_empty());
        r.without_timing()
    };
    let a = run(&[]);
    assert_eq!(a, run(&[]));
    assert_eq!(a, run(&["--sequential"]));
    assert_eq!(a.trials, 500);
}

#[test]
fn class_count_suite_through_the_binary() {
    let dir = TempDir::new().unwrap();
    let out = ordiso(&["verify", "class-count", "--seed", "0", "--trials", "1"], dir.path());
    assert_eq!(code(&out), 0);
    let r: RunReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.checks.iter().find(|c| c.name == "count").unwrap().evaluated, 5);
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&ordiso(&["verify", "no-such-suite"], dir.path())), 2);
    assert_eq!(code(&ordiso(&["frobnicate"], dir.path())), 2);
}

#[test]
fn parse_errors_report_position() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{\"rows\": 1,\n \"cols\": 1,\n \"data\": [[[1, ]]]}").unwrap();
    let out = ordiso(&["classify", "bad.json"], dir.path());
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.json:3:"), "{err}");
}

#[test]
fn classify_prints_class() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "a.json", &CMatrix::diag_real(&[2.0, -1.0, 0.0]));
    let out = ordiso(&["classify", "a.json"], dir.path());
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((v["m"].as_u64(), v["p"].as_u64(), v["signature"].as_i64()), (Some(2), Some(1), Some(0)));
}

#[test]
fn apply_phi_matches_closed_form() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "a.json", &CMatrix::diag_real(&[1.0, -1.0]));
    write(dir.path(), "x.json", &CMatrix::diag_real(&[0.5, 0.5]));
    let out = ordiso(&["apply", "--map", "phi", "--a", "a.json", "x.json", "-o", "y.json"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let y = read_matrix(&dir.path().join("y.json")).unwrap();
    assert!((&y - &CMatrix::diag_real(&[1.0 / 3.0, 1.0])).frobenius() < 1e-15);
}

#[test]
fn apply_phi_mp_and_inverse() {
    let dir = TempDir::new().unwrap();
    let x = Hermitian::from_real_rows(&[&[2.0, 1.0], &[1.0, 3.0]]);
    write(dir.path(), "x.json", &x);
    let fwd = ordiso(&["apply", "--map", "phi-mp", "--m", "1", "--p", "1", "x.json", "-o", "y.json"], dir.path());
    assert_eq!(code(&fwd), 0);
    let back = ordiso(&["apply", "--map", "phi-mp", "--m", "1", "--p", "0", "y.json", "-o", "z.json"], dir.path());
    assert_eq!(code(&back), 0, "{}", String::from_utf8_lossy(&back.stderr));
    let z = read_matrix(&dir.path().join("z.json")).unwrap();
    assert!((&z - &*x).frobenius() < 1e-14);
}

#[test]
fn domain_violations_exit_3() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "a.json", &CMatrix::identity(1));
    write(dir.path(), "x.json", &CMatrix::diag_real(&[-2.0]));
    let out = ordiso(&["apply", "--map", "phi", "--a", "a.json", "x.json"], dir.path());
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
    let out = ordiso(&["apply", "--map", "pick", "--atom", "0:1", "--lo", "0", "--hi", "inf", "x.json"], dir.path());
    assert_eq!(code(&out), 3);
}

#[test]
fn pick_single_atom_is_negative_inverse() {
    let dir = TempDir::new().unwrap();
    let x = Hermitian::from_real_rows(&[&[2.0, 0.5], &[0.5, 1.0]]);
    write(dir.path(), "x.json", &x);
    let out = ordiso(&["apply", "--map", "pick", "--atom", "0:1", "--lo", "0", "x.json"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let y = parse_str(std::str::from_utf8(&out.stdout).unwrap(), "stdout").unwrap();
    let want = x.inverse().unwrap().negated();
    assert!((&y - &*want).frobenius() < 1e-12);
}

#[test]
fn check_monotone_verdicts() {
    let dir = TempDir::new().unwrap();
    let sqrt = ordiso(&["check-monotone", "--fn", "sqrt", "--order", "3", "--tuples", "200"], dir.path());
    assert_eq!(code(&sqrt), 0);
    let square = ordiso(&["check-monotone", "--fn", "square", "--order", "2", "--tuples", "200"], dir.path());
    assert_eq!(code(&square), 1);
    let v: serde_json::Value = serde_json::from_slice(&square.stdout).unwrap();
    assert_eq!(v["verdict"], "FAIL");
    assert_eq!(v["witness"]["nodes"].as_array().map(Vec::len), Some(2));

    let table: String = (1..=40).map(|i| format!("{} {}\n", i as f64 * 0.1, (i as f64 * 0.1).sqrt())).collect();
    std::fs::write(dir.path().join("sqrt.txt"), format!("# x sqrt(x)\n{table}")).unwrap();
    let out = ordiso(&["check-monotone", "--fn", "sqrt.txt", "--order", "2", "--tuples", "200"], dir.path());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["conclusive"], false);
}

#[test]
fn tolerance_overrides() {
    let dir = TempDir::new().unwrap();
    let bad = Command::new(env!("CARGO_BIN_EXE_ordiso"))
        .args(["gen", "--kind", "psd", "--dim", "2"])
        .env("ORDISO_TOL", "psd_tol=oops")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
    let ok = ordiso(&["--tol", "psd_tol=1e-9", "gen", "--kind", "psd", "--dim", "2"], dir.path());
    assert_eq!(code(&ok), 0);
}
