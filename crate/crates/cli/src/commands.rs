use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, Context, Result};
use mfkit_core::catalog::{
    enumerate_family, enumerate_m3, enumerate_n3, enumerate_two_gen, expected_fitting_ideal, CatalogEntry, Family,
    Params,
};
use mfkit_core::equiv::{classify as classify_entries, decide_equiv, verify_witness, ClassifyConfig, Witness, WitnessJson};
use mfkit_core::groebner::{ideal_equal, Ideal};
use mfkit_core::{CycNum, MatrixFactorization, MonomialOrder, Poly, PolyMat, VarTable};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::input::{self, read_json, read_lines, read_matrix, read_polys, read_single_poly, unify};
use crate::{Generators, OrderArg, Status};

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}").and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json(value: &Value) -> Result<()> {
    emit(&serde_json::to_string_pretty(value)?)
}

fn order_of(arg: OrderArg) -> MonomialOrder {
    match arg {
        OrderArg::Lex => MonomialOrder::lex(),
        OrderArg::Grevlex => MonomialOrder::grevlex(),
    }
}

/// An entry supplied with `verify-catalog --extra`.
#[derive(Deserialize)]
struct ExtraEntry {
    name: Option<String>,
    vars: Option<Vec<String>>,
    phi: Vec<Vec<String>>,
    psi: Option<Vec<Vec<String>>>,
}

fn check_entry(name: &str, phi: &PolyMat, psi: Option<&PolyMat>, fitting: Option<&Ideal<CycNum>>) -> Value {
    let f4 = Poly::f4();
    let mf = match psi {
        Some(psi) => MatrixFactorization::new(phi.clone(), psi.clone(), f4.clone()),
        None => MatrixFactorization::from_adjugate(phi.clone()),
    };
    let mut record = json!({ "name": name });
    let factorization = mf.as_ref().is_ok_and(|m| m.f() == &f4);
    record["factorization"] = json!(factorization);
    record["det"] = json!(phi.det() == f4);
    record["rank_one"] = json!(mf.as_ref().ok().and_then(|m| m.rank().ok()) == Some(1));
    if let Err(e) = &mf {
        record["error"] = json!(e.to_string());
    }
    let mut passed = factorization && record["det"] == true && record["rank_one"] == true;
    if let Some(expected) = fitting {
        let actual = phi.fitting_ideal(1, MonomialOrder::grevlex());
        let ok = ideal_equal(&actual, expected).unwrap_or(false);
        record["fitting"] = json!(ok);
        passed &= ok;
    }
    record["passed"] = json!(passed);
    record
}

fn extra_entries(path: &Path) -> Result<Vec<(String, PolyMat, Option<PolyMat>)>> {
    let value: Value = read_json(path)?;
    let list = match value {
        Value::Array(items) => items,
        other => vec![other],
    };
    let stem = path.file_stem().map_or_else(|| "extra".to_string(), |s| s.to_string_lossy().into_owned());
    let y4 = VarTable::y4();
    list.into_iter()
        .enumerate()
        .map(|(k, item)| {
            let e: ExtraEntry = serde_json::from_value(item).with_context(|| format!("malformed entry in {}", path.display()))?;
            let name = e.name.unwrap_or_else(|| format!("{stem}[{k}]"));
            let load = |rows: &[Vec<String>]| -> Result<PolyMat> {
                let m = input::matrix_from_rows(rows, e.vars.as_deref())?;
                m.embed(&y4).with_context(|| format!("{name}: entries must be in Y1..Y4"))
            };
            let phi = load(&e.phi)?;
            let psi = e.psi.as_deref().map(load).transpose()?;
            Ok((name, phi, psi))
        })
        .collect()
}

pub fn verify_catalog(extra: &[PathBuf]) -> Result<Status> {
    let mut checks = Vec::new();
    for entry in enumerate_two_gen().iter().chain(&enumerate_m3()).chain(&enumerate_n3()) {
        let expected = match (entry.family(), entry.params()) {
            (Family::Phi, Params::TwoGen(p)) => Some(expected_fitting_ideal(p)),
            _ => None,
        };
        let mf = entry.mf();
        checks.push(check_entry(&entry.name(), mf.phi(), Some(mf.psi()), expected.as_ref()));
    }
    for path in extra {
        for (name, phi, psi) in extra_entries(path)? {
            checks.push(check_entry(&name, &phi, psi.as_ref(), None));
        }
    }
    let failed: Vec<&Value> = checks.iter().filter(|c| c["passed"] != true).collect();
    for c in &failed {
        eprintln!("failed: {}", c["name"].as_str().unwrap_or("?"));
    }
    let status = if failed.is_empty() { Status::Success } else { Status::Negative };
    print_json(&json!({ "checked": checks.len(), "failed": failed.len(), "checks": checks }))?;
    Ok(status)
}

pub fn classify(generators: Generators, exhaustive: bool, jobs: Option<usize>, sample: usize, seed: u64) -> Result<Status> {
    if jobs == Some(0) {
        return Err(anyhow!("--jobs must be positive"));
    }
    let config = ClassifyConfig { fast_rules: !exhaustive, audit_sample: sample, seed, jobs };
    let mut groups: Vec<(&str, Vec<CatalogEntry>)> = Vec::new();
    if generators != Generators::Three {
        groups.push(("two-generated", enumerate_two_gen()));
    }
    if generators != Generators::Two {
        groups.push(("m3", enumerate_m3()));
        groups.push(("n3", enumerate_n3()));
    }
    let (mut classes, mut audits) = (Vec::new(), Vec::new());
    let (mut two, mut three, mut decisions) = (0, 0, 0);
    let mut audits_ok = true;
    for (label, entries) in &groups {
        let report = classify_entries(entries, &config)?;
        if *label == "two-generated" {
            two += report.len();
        } else {
            three += report.len();
        }
        decisions += report.decisions;
        audits_ok &= report.audits_passed();
        let offset = classes.len();
        for mut class in report.classes_json().as_array().cloned().unwrap_or_default() {
            class["id"] = json!(class["id"].as_u64().unwrap_or(0) as usize + offset);
            class["group"] = json!(label);
            classes.push(class);
        }
        for mut audit in report.audits_json().as_array().cloned().unwrap_or_default() {
            audit["rule"] = json!(format!("{label}/{}", audit["rule"].as_str().unwrap_or("")));
            audits.push(audit);
        }
    }
    let mut out = json!({
        "audits": audits,
        "classes": classes,
        "decisions": decisions,
        "mode": if exhaustive { "exhaustive" } else { "fast" },
        "total_classes": two + three,
    });
    if generators != Generators::Three {
        out["two_generated_classes"] = json!(two);
    }
    if generators != Generators::Two {
        out["three_generated_classes"] = json!(three);
    }
    print_json(&out)?;
    Ok(if audits_ok { Status::Success } else { Status::Negative })
}

pub fn equiv(x: &Path, y: &Path, witness: Option<&Path>, relations: Option<&Path>) -> Result<Status> {
    let (x, y) = unify(read_matrix(x)?, read_matrix(y)?)?;
    if let Some(path) = witness {
        let w: WitnessJson = read_json(path)?;
        let rels = relations.map(read_lines).transpose()?.unwrap_or_default();
        let w = Witness::from_json(&w, &rels).with_context(|| format!("invalid witness in {}", path.display()))?;
        let ok = verify_witness(&x, &y, &w)?;
        print_json(&json!({ "verdict": if ok { "equivalent" } else { "unverified" }, "witness": if ok { "verified" } else { "rejected" } }))?;
        return Ok(if ok { Status::Success } else { Status::Negative });
    }
    let verdict = decide_equiv(&x, &y)?;
    print_json(&verdict.to_json())?;
    Ok(if verdict.is_equivalent() { Status::Success } else { Status::Negative })
}

fn print_basis(lines: &[String]) -> Result<()> {
    if lines.is_empty() {
        return emit("0");
    }
    emit(&lines.join("\n"))
}

pub fn gb(file: &Path, order: OrderArg, vars: Option<Vec<String>>) -> Result<Status> {
    let table = match vars {
        Some(v) => VarTable::new(v)?,
        None => input::infer_table(read_lines(file)?.iter())?,
    };
    let polys = read_polys(file, &table)?;
    let basis = Ideal::new(&table, polys, order_of(order))?.groebner_basis();
    print_basis(&basis.to_lines())?;
    Ok(Status::Success)
}

pub fn fitting(matrix: &Path, t: usize, order: OrderArg) -> Result<Status> {
    let m = read_matrix(matrix)?;
    print_basis(&m.fitting_ideal(t, order_of(order)).groebner_basis().to_lines())?;
    Ok(Status::Success)
}

pub fn complete(paths: [&PathBuf; 4]) -> Result<Status> {
    let y4 = VarTable::y4();
    let [a, b, c, d] = paths.map(|p| read_single_poly(p, &y4));
    let m = mfkit_core::catalog::complete_factorization(&a?, &b?, &c?, &d?)?;
    print_json(&serde_json::to_value(m.to_json())?)?;
    Ok(Status::Success)
}

pub fn catalog(family: &str, params: Option<&str>) -> Result<Status> {
    let family = Family::from_str(family)?;
    let value = match params {
        Some(text) => CatalogEntry::new(family, Params::parse(family, text)?)?.to_json(),
        None => Value::Array(enumerate_family(family).iter().map(CatalogEntry::to_json).collect()),
    };
    print_json(&value)?;
    Ok(Status::Success)
}
