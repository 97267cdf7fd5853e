use std::path::PathBuf;
use std::process::{Command, Output};

use mfkit_core::catalog::{raw_case, RawCase, RawCaseParams};
use mfkit_core::equiv::{b_to_at_witness, reduction_maps};
use mfkit_core::{cube_roots_of_minus_one, CycNum, Field, Poly, PolyMat, VarTable};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfkit")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8_lossy(&out.stdout).lines().map(String::from).collect()
}

fn write_json(dir: &tempfile::TempDir, name: &str, value: &impl serde::Serialize) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path.display().to_string()
}

#[test]
fn verify_catalog_fresh_run() {
    let out = run(&["verify-catalog"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["checked"], 180);
    assert_eq!(report["failed"], 0);
    let with_fitting = report["checks"].as_array().unwrap().iter().filter(|c| c["fitting"] == true).count();
    assert_eq!(with_fitting, 27);
}

#[test]
fn verify_catalog_names_corrupted_entry() {
    let out = run(&["verify-catalog", "--extra", &fixture("corrupted.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("phi_23 with a flipped sign"));
    let report = json(&out);
    assert_eq!(report["checked"], 181);
    assert_eq!(report["failed"], 1);
}

#[test]
fn classify_counts() {
    let two = json(&run(&["classify", "--generators", "2"]));
    assert_eq!(two["two_generated_classes"], 54);
    assert!(two.get("three_generated_classes").is_none());
    let three = run(&["classify", "--generators", "3"]);
    assert_eq!(three.status.code(), Some(0));
    let three = json(&three);
    assert_eq!(three["three_generated_classes"], 72);
    let sizes: Vec<u64> = three["classes"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 54);
    assert_eq!(sizes.iter().filter(|&&s| s == 1).count(), 18);
    let all = json(&run(&["classify", "--generators", "all", "--jobs", "2"]));
    assert_eq!(all["total_classes"], 126);
    assert!(all["audits"].as_array().unwrap().iter().all(|a| a["passed"] == true));
}

#[test]
fn classify_exhaustive_matches_fast() {
    let out = run(&["classify", "--generators", "3", "--exhaustive"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["three_generated_classes"], 72);
    assert_eq!(report["decisions"], 5778 + 153);
    assert!(report["audits"].as_array().unwrap().is_empty());
}

#[test]
fn classify_is_byte_identical_across_runs() {
    let a = run(&["classify", "--generators", "all", "--jobs", "1", "--seed", "3"]);
    let b = run(&["classify", "--generators", "all", "--jobs", "4", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn classify_rejects_bad_flags() {
    assert_eq!(run(&["classify", "--generators", "4"]).status.code(), Some(2));
    assert_eq!(run(&["classify"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--generators", "3", "--jobs", "0"]).status.code(), Some(2));
}

#[test]
fn equiv_exit_codes() {
    let phi = fixture("phi23.json");
    let same = run(&["equiv", &phi, &phi]);
    assert_eq!(same.status.code(), Some(0));
    assert_eq!(json(&same)["verdict"], "equivalent");

    let diff = run(&["equiv", &phi, &fixture("psi23.json")]);
    assert_eq!(diff.status.code(), Some(1));
    let v = json(&diff);
    assert_eq!(v["verdict"], "not-equivalent");
    assert_eq!(v["certificate"], serde_json::json!(["1"]));

    assert_eq!(run(&["equiv", &phi, &fixture("malformed.json")]).status.code(), Some(2));
    assert_eq!(run(&["equiv", &phi, "missing.json"]).status.code(), Some(2));
}

#[test]
fn equiv_rejects_size_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let alpha = json(&run(&["catalog", "--family", "alpha", "--params", "b=-1,c=-1,d=-1,eps=e"]));
    let m = write_json(&dir, "alpha.json", &alpha);
    assert_eq!(run(&["equiv", &fixture("phi23.json"), &m]).status.code(), Some(2));
}

#[test]
fn equiv_with_lambda_witness() {
    let [m, p, _] = cube_roots_of_minus_one();
    let (n, y) = (CycNum::from(-1), CycNum::eps());
    let q = &(&(&n * &p) * &y) * &m.inv().unwrap();
    let b = RawCaseParams::new(RawCase::B, m.clone(), n, p.clone(), q, Some(y)).unwrap();
    let map = reduction_maps().into_iter().find(|r| r.name == "B->At").unwrap();
    let at = map.image(&b).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let x = write_json(&dir, "at.json", &at.to_json());
    let yf = write_json(&dir, "b.json", &raw_case(&b).to_json());
    let witness = b_to_at_witness(&m, &p);
    let w = write_json(&dir, "w.json", &witness.to_json());
    let rel = dir.path().join("rel.txt");
    std::fs::write(&rel, format!("{}\n", witness.relations[0])).unwrap();
    let out = run(&["equiv", &x, &yf, "--witness", &w, "--relations", rel.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["witness"], "verified");

    std::fs::write(&rel, "lambda^3-1\n").unwrap();
    let out = run(&["equiv", &x, &yf, "--witness", &w, "--relations", rel.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["witness"], "rejected");
}

#[test]
fn gb_outputs() {
    let out = run(&["gb", &fixture("trivial.txt")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_lines(&out), ["1"]);
    // independent check: sympy groebner([x*z-y**2, x**2*y-z], x, y, z, order='lex')
    let out = run(&["gb", &fixture("ideal.txt"), "--order", "lex", "--vars", "x,y,z"]);
    assert_eq!(stdout_lines(&out), ["y^5-z^3", "x*z-y^2", "x*y^3-z^2", "x^2*y-z"]);
    assert_eq!(run(&["gb", &fixture("ideal.txt"), "--order", "deglex"]).status.code(), Some(2));
    assert_eq!(run(&["gb", &fixture("ideal.txt"), "--vars", "x,y"]).status.code(), Some(2));
}

#[test]
fn fitting_of_phi23() {
    let out = run(&["fitting", &fixture("phi23.json"), "--t", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let mut lines = stdout_lines(&out);
    lines.sort();
    assert_eq!(lines, ["Y1+Y4", "Y2+Y3", "Y3^2", "Y4^2"]);
    assert_eq!(stdout_lines(&run(&["fitting", &fixture("phi23.json"), "--t", "2"])), ["1"]);
}

#[test]
fn complete_produces_factorization() {
    let files = ["alpha.txt", "beta.txt", "gamma.txt", "delta.txt"].map(fixture);
    let out = run(&["complete", &files[0], &files[1], &files[2], &files[3]]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let m: mfkit_core::MatrixJson = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(PolyMat::from_json(&m).unwrap().det(), Poly::f4());

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "Y1+Y2+Y3+Y4\n").unwrap();
    let out = run(&["complete", &files[0], &files[1], &files[2], bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn catalog_listing() {
    let counts = [("phi", 27), ("psi", 27), ("alpha", 54), ("beta", 54), ("eta", 12), ("theta", 6)];
    for (family, n) in counts {
        let out = run(&["catalog", "--family", family]);
        assert_eq!(json(&out).as_array().unwrap().len(), n, "{family}");
    }
    let one = json(&run(&["catalog", "--family", "theta", "--params", "a=-1,b=-e,c=(1+e)"]));
    assert_eq!(one["family"], "theta");
    let vars = VarTable::y4();
    let rows: Vec<Vec<String>> = serde_json::from_value(one["rows"].clone()).unwrap();
    assert_eq!(PolyMat::parse(&vars, &rows).unwrap().det(), Poly::f4());
    assert_eq!(run(&["catalog", "--family", "gamma"]).status.code(), Some(2));
    assert_eq!(run(&["catalog", "--family", "phi", "--params", "i=2,j=2,a=-1,b=-1"]).status.code(), Some(2));
}
