//! File readers for matrices, ideals and witnesses.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use mfkit_core::multipoly::infer_variables;
use mfkit_core::{Poly, PolyMat, VarTable};
use serde::Deserialize;

/// Matrix file: `{"rows": [[..]], "vars": [..]}`; `vars` may be omitted.
#[derive(Deserialize)]
struct MatrixFile {
    rows: Vec<Vec<String>>,
    vars: Option<Vec<String>>,
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    serde_json::from_str(&read_text(path)?).with_context(|| format!("malformed JSON in {}", path.display()))
}

/// Variables in order of first appearance over all given strings.
pub fn infer_table<'a>(texts: impl IntoIterator<Item = &'a String>) -> Result<Arc<VarTable>> {
    let mut names: Vec<String> = Vec::new();
    for t in texts {
        for v in infer_variables(t) {
            if !names.contains(&v) {
                names.push(v);
            }
        }
    }
    Ok(VarTable::new(names)?)
}

pub fn matrix_from_rows(rows: &[Vec<String>], vars: Option<&[String]>) -> Result<PolyMat> {
    let table = match vars {
        Some(v) => VarTable::new(v.iter().cloned())?,
        None => infer_table(rows.iter().flatten())?,
    };
    Ok(PolyMat::parse(&table, rows)?)
}

pub fn read_matrix(path: &Path) -> Result<PolyMat> {
    let file: MatrixFile = read_json(path)?;
    matrix_from_rows(&file.rows, file.vars.as_deref()).with_context(|| format!("invalid matrix in {}", path.display()))
}

/// Non-empty lines that are not `#` comments.
pub fn read_lines(path: &Path) -> Result<Vec<String>> {
    Ok(read_text(path)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect())
}

pub fn read_polys(path: &Path, vars: &Arc<VarTable>) -> Result<Vec<Poly>> {
    read_lines(path)?
        .iter()
        .map(|l| Poly::parse(l, vars).with_context(|| format!("cannot parse `{l}` in {}", path.display())))
        .collect()
}

/// The single polynomial in a file.
pub fn read_single_poly(path: &Path, vars: &Arc<VarTable>) -> Result<Poly> {
    let mut polys = read_polys(path, vars)?;
    if polys.len() != 1 {
        bail!("{} must contain exactly one polynomial, found {}", path.display(), polys.len());
    }
    Ok(polys.remove(0))
}

/// Moves two matrices onto a common variable table (names of `x` first).
pub fn unify(x: PolyMat, y: PolyMat) -> Result<(PolyMat, PolyMat)> {
    if x.vars() == y.vars() {
        return Ok((x, y));
    }
    let extra: Vec<String> = y.vars().names().iter().filter(|n| x.vars().index_of(n).is_none()).cloned().collect();
    let table = x.vars().extended(extra)?;
    Ok((x.embed(&table)?, y.embed(&table)?))
}
