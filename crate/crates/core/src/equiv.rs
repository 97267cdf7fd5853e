//! Equivalence of presentation matrices (`U·X = Y·V` with `det U = det V = 1`)
//! decided by Gröbner triviality, witness verification, and the
//! classification driver over catalog lists.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::catalog::{AlphaParams, CatalogEntry, Family, Params, RawCase, RawCaseParams, ThetaParams};
use crate::cyclofield::{primitive_cube_roots_of_unity, CycNum};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{GroebnerBasis, Ideal};
use crate::linsolve::{linear_coefficients, ScalarMatrix};
use crate::matpoly::{ElementaryOp, PolyMatrix};
use crate::multipoly::{Monomial, MonomialOrder, VarTable};
use num_traits::Zero;
use crate::{Poly, PolyMat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Equivalent,
    NotEquivalent,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Equivalent => "equivalent",
            Outcome::NotEquivalent => "not-equivalent",
        }
    }
}

/// The decision together with the reduced Gröbner basis it was read from.
#[derive(Clone, Debug)]
pub struct EquivVerdict {
    pub outcome: Outcome,
    pub certificate: GroebnerBasis<CycNum>,
    /// Whether `U`, `V` were graded maps (`true`) or scalar matrices.
    pub graded: bool,
}

impl EquivVerdict {
    pub fn is_equivalent(&self) -> bool {
        self.outcome == Outcome::Equivalent
    }

    pub fn to_json(&self) -> Value {
        json!({
            "certificate": self.certificate.to_lines(),
            "graded": self.graded,
            "unknowns": self.certificate.vars().names(),
            "verdict": self.outcome.as_str(),
        })
    }
}

/// All monomials of total degree `d` in `n` variables, descending lex.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, d: u32, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d as u16);
            out.push(Monomial::from_exponents(prefix));
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k as u16);
            go(n, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    go(n, d, &mut Vec::new(), &mut out);
    out
}

/// Degrees of the entries of `U` and `V` (row-major, `None` = forced zero).
struct Layout {
    u: Vec<Option<u32>>,
    v: Vec<Option<u32>>,
    graded: bool,
}

impl Layout {
    fn scalar(n: usize) -> Self {
        Layout { u: vec![Some(0); n * n], v: vec![Some(0); n * n], graded: false }
    }

    /// Graded maps between the free modules of `X` and `Y`: `deg U_ik = r_k − r'_i`,
    /// `deg V_kj = c_j − c'_k`. Falls back to scalars when either matrix has
    /// no grading.
    fn graded(x: &PolyMat, y: &PolyMat) -> Self {
        let n = x.size();
        let (Some((rx, cx)), Some((ry, cy))) = (x.grading(), y.grading()) else {
            return Self::scalar(n);
        };
        let deg = |d: i64| u32::try_from(d).ok();
        let u = (0..n * n).map(|e| deg(rx[e % n] - ry[e / n])).collect();
        let v = (0..n * n).map(|e| deg(cx[e % n] - cy[e / n])).collect();
        Layout { u, v, graded: true }
    }
}

/// The unknown matrices `U`, `V` over `unknowns ++ vars(X)`.
struct Setup {
    unknowns: Arc<VarTable>,
    full: Arc<VarTable>,
    u: PolyMat,
    v: PolyMat,
    /// Position of each unknown: (is_v, entry, monomial in the Y variables).
    slots: Vec<(bool, usize, Monomial)>,
}

fn check_pair(x: &PolyMat, y: &PolyMat) -> Result<()> {
    if x.size() != y.size() {
        return Err(Error::SizeMismatch(x.size(), y.size()));
    }
    if **x.vars() != **y.vars() {
        return Err(Error::VarMismatch);
    }
    Ok(())
}

fn setup(x: &PolyMat, layout: &Layout) -> Result<Setup> {
    let n = x.size();
    let ny = x.vars().len();
    let mut slots = Vec::new();
    for (is_v, degrees) in [(false, &layout.u), (true, &layout.v)] {
        for (entry, d) in degrees.iter().enumerate() {
            if let Some(d) = d {
                for m in monomials_of_degree(ny, *d) {
                    slots.push((is_v, entry, m));
                }
            }
        }
    }
    let nu = slots.iter().filter(|s| !s.0).count();
    let names: Vec<String> = slots
        .iter()
        .enumerate()
        .map(|(k, (is_v, _, _))| if *is_v { format!("v{}", k - nu + 1) } else { format!("u{}", k + 1) })
        .collect();
    if let Some(clash) = names.iter().find(|s| x.vars().index_of(s).is_some()) {
        return Err(Error::Input(format!("matrix variable `{clash}` collides with an unknown name")));
    }
    let unknowns = VarTable::new(names.clone())?;
    let full = VarTable::new(names.into_iter().chain(x.vars().names().iter().cloned()))?;
    let k = slots.len();
    let mut u = PolyMatrix::from_fn(&full, n, |_, _| Poly::zero(&full));
    let mut v = u.clone();
    for (idx, (is_v, entry, m)) in slots.iter().enumerate() {
        let mut e = vec![0u16; k];
        e[idx] = 1;
        e.extend_from_slice(m.exponents());
        let term = Poly::term(&full, Monomial::from_exponents(&e), CycNum::from(1));
        let target = if *is_v { &mut v } else { &mut u };
        let (i, j) = (entry / n, entry % n);
        let updated = target.get(i, j) + &term;
        target.set(i, j, updated);
    }
    Ok(Setup { unknowns, full, u, v, slots })
}

/// Coefficients with respect to the trailing (matrix) variables, moved to
/// the unknown table.
fn coefficient_generators(p: &Poly, s: &Setup) -> Result<Vec<Poly>> {
    let k = s.unknowns.len();
    let mask: Vec<bool> = (0..s.full.len()).map(|i| i >= k).collect();
    p.coefficients_wrt(&mask).into_iter().map(|(_, c)| c.embed(&s.unknowns)).collect()
}

fn ideal_from(x: &PolyMat, y: &PolyMat, layout: &Layout) -> Result<(Ideal<CycNum>, usize)> {
    check_pair(x, y)?;
    let s = setup(x, layout)?;
    let xf = x.embed(&s.full)?;
    let yf = y.embed(&s.full)?;
    let c = s.u.checked_mul(&xf)?.checked_sub(&yf.checked_mul(&s.v)?)?;
    let mut gens = Vec::new();
    for e in c.entries() {
        gens.extend(coefficient_generators(e, &s)?);
    }
    let linear = gens.iter().filter(|g| !g.is_zero()).count();
    let one = Poly::one(&s.full);
    for d in [s.u.det(), s.v.det()] {
        gens.extend(coefficient_generators(&(&d - &one), &s)?);
    }
    Ok((Ideal::new(&s.unknowns, gens, MonomialOrder::grevlex())?, linear))
}

/// The equivalence ideal with scalar unknown matrices `U = (u1..u_{n²})`,
/// `V = (v1..v_{n²})`: every coefficient (with respect to the matrix
/// variables) of every entry of `U·X − Y·V`, plus `det U − 1`, `det V − 1`.
pub fn build_equiv_ideal(x: &PolyMat, y: &PolyMat) -> Result<Ideal<CycNum>> {
    check_pair(x, y)?;
    Ok(ideal_from(x, y, &Layout::scalar(x.size()))?.0)
}

/// Like [`build_equiv_ideal`], but `U`, `V` range over degree-preserving maps
/// of the graded free modules of `X` and `Y` (entries are forms of the degree
/// dictated by the row and column shifts). For matrices of linear forms this
/// is the scalar ideal; for mixed-degree presentations it also admits
/// polynomial row and column operations. Scalar fallback when either matrix
/// is not homogeneous.
pub fn build_graded_equiv_ideal(x: &PolyMat, y: &PolyMat) -> Result<Ideal<CycNum>> {
    check_pair(x, y)?;
    Ok(ideal_from(x, y, &Layout::graded(x, y))?.0)
}

/// Number of nonzero linear generators (coefficients of `U·X − Y·V`) in the
/// scalar equivalence ideal.
pub fn linear_generator_count(x: &PolyMat, y: &PolyMat) -> Result<usize> {
    check_pair(x, y)?;
    Ok(ideal_from(x, y, &Layout::scalar(x.size()))?.1)
}

/// Equivalent iff 1 is not in the (graded) equivalence ideal.
pub fn decide_equiv(x: &PolyMat, y: &PolyMat) -> Result<EquivVerdict> {
    check_pair(x, y)?;
    let layout = Layout::graded(x, y);
    let (ideal, _) = ideal_from(x, y, &layout)?;
    let certificate = ideal.groebner_basis();
    let outcome = if certificate.is_trivial() { Outcome::NotEquivalent } else { Outcome::Equivalent };
    Ok(EquivVerdict { outcome, certificate, graded: layout.graded })
}

/// Explicit invertible `U`, `V` over the base field with `U·X = Y·V`, when
/// the linear solution space contains one reachable by small integer
/// combinations of its basis. Determinants are not normalized.
pub fn find_witness(x: &PolyMat, y: &PolyMat) -> Result<Option<(PolyMat, PolyMat)>> {
    check_pair(x, y)?;
    let layout = Layout::graded(x, y);
    let s = setup(x, &layout)?;
    let xf = x.embed(&s.full)?;
    let yf = y.embed(&s.full)?;
    let c = s.u.checked_mul(&xf)?.checked_sub(&yf.checked_mul(&s.v)?)?;
    let mut rows = Vec::new();
    for e in c.entries() {
        for g in coefficient_generators(e, &s)? {
            if !g.is_zero() {
                rows.push(linear_coefficients(&g)?);
            }
        }
    }
    let k = s.slots.len();
    let basis = if rows.is_empty() {
        (0..k).map(|i| (0..k).map(|j| CycNum::from(i64::from(i == j))).collect()).collect()
    } else {
        ScalarMatrix::from_rows(rows)?.nullspace()
    };
    if basis.is_empty() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let vars = x.vars();
    for attempt in 0..64 {
        let combo: Vec<i64> = (0..basis.len())
            .map(|b| if attempt == 0 { 1 } else { rand::Rng::gen_range(&mut rng, -3..=3) + i64::from(b == 0) })
            .collect();
        let mut values = vec![CycNum::from(0); k];
        for (coef, vec) in combo.iter().zip(&basis) {
            for (val, x) in values.iter_mut().zip(vec) {
                *val = &*val + &(&CycNum::from(*coef) * x);
            }
        }
        let n = x.size();
        let mut u = PolyMatrix::from_fn(vars, n, |_, _| Poly::zero(vars));
        let mut v = u.clone();
        for ((is_v, entry, m), val) in s.slots.iter().zip(&values) {
            let target = if *is_v { &mut v } else { &mut u };
            let (i, j) = (entry / n, entry % n);
            let updated = target.get(i, j) + &Poly::term(vars, m.clone(), val.clone());
            target.set(i, j, updated);
        }
        let unit = |m: &PolyMat| m.det().constant_value().is_some_and(|d| !d.is_zero());
        if unit(&u) && unit(&v) && u.checked_mul(x)? == y.checked_mul(&v)? {
            return Ok(Some((u, v)));
        }
    }
    Ok(None)
}

/// Explicit transformation data: `U`, `V` with entries in auxiliary
/// variables, subject to `relations` in those variables.
#[derive(Clone, Debug)]
pub struct Witness {
    pub u: PolyMat,
    pub v: PolyMat,
    pub relations: Vec<Poly>,
}

/// On-disk witness: `{"U": [[..]], "V": [[..]], "vars": [aux names]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    #[serde(rename = "U")]
    pub u: Vec<Vec<String>>,
    #[serde(rename = "V")]
    pub v: Vec<Vec<String>>,
    pub vars: Vec<String>,
}

impl Witness {
    /// `relations` are parsed over the witness variables.
    pub fn from_json(json: &WitnessJson, relations: &[String]) -> Result<Self> {
        let vars = VarTable::new(json.vars.iter().cloned())?;
        let u = PolyMat::parse(&vars, &json.u)?;
        let v = PolyMat::parse(&vars, &json.v)?;
        let relations = relations.iter().map(|r| Poly::parse(r, &vars).map_err(Error::from)).collect::<Result<_>>()?;
        Ok(Witness { u, v, relations })
    }

    pub fn to_json(&self) -> WitnessJson {
        let rows = |m: &PolyMat| m.to_json().rows;
        WitnessJson { u: rows(&self.u), v: rows(&self.v), vars: self.u.vars().names().to_vec() }
    }
}

/// True iff every entry of `U·X − Y·V`, `det U − 1` and `det V − 1` lies in
/// the ideal generated by the relations (over the auxiliary and matrix
/// variables together).
pub fn verify_witness(x: &PolyMat, y: &PolyMat, w: &Witness) -> Result<bool> {
    check_pair(x, y)?;
    check_pair(&w.u, &w.v)?;
    if w.u.size() != x.size() {
        return Err(Error::SizeMismatch(w.u.size(), x.size()));
    }
    let aux = w.u.vars().names();
    if let Some(clash) = aux.iter().find(|a| x.vars().index_of(a).is_some()) {
        return Err(Error::Input(format!("witness variable `{clash}` is also a matrix variable")));
    }
    let full = w.u.vars().extended(x.vars().names().iter().cloned())?;
    let (xf, yf, uf, vf) = (x.embed(&full)?, y.embed(&full)?, w.u.embed(&full)?, w.v.embed(&full)?);
    let relations = w.relations.iter().map(|r| r.embed(&full)).collect::<Result<Vec<_>>>()?;
    let gb = Ideal::new(&full, relations, MonomialOrder::grevlex())?.groebner_basis();
    let c = uf.checked_mul(&xf)?.checked_sub(&yf.checked_mul(&vf)?)?;
    let one = Poly::one(&full);
    Ok(c.entries().iter().all(|e| gb.contains(e)) && gb.contains(&(&uf.det() - &one)) && gb.contains(&(&vf.det() - &one)))
}

/// The transformation taking `B(m, n, p, q; y)` to the transpose of the case-A
/// matrix with `a = −np, b = ynq², c = p, d = qy`, `ε = y²`, over one
/// auxiliary variable `lambda` with `9·lambda³ = 8·m·p²`.
pub fn b_to_at_witness(m: &CycNum, p: &CycNum) -> Witness {
    let vars = VarTable::new(["lambda"]).expect("valid name");
    let l = Poly::var(&vars, 0);
    let k = |num: i64, den: i64, c: &CycNum| {
        l.scale(&(&CycNum::from(crate::field::Rat::new(num.into(), den.into())) * c))
    };
    let z = Poly::zero(&vars);
    let one = CycNum::from(1);
    let p2 = p.pow(2);
    let m2 = m.pow(2);
    let u = PolyMat::from_rows(vec![
        vec![z.clone(), k(-1, 2, p), k(1, 2, &p2)],
        vec![k(3, 2, &m2), z.clone(), z.clone()],
        vec![z.clone(), k(-1, 2, &p2), k(1, 1, &one)],
    ])
    .expect("square");
    let v = PolyMat::from_rows(vec![
        vec![z.clone(), k(3, 2, &m2), z.clone()],
        vec![k(-1, 2, p), z.clone(), k(-1, 2, &p2)],
        vec![k(1, 2, &p2), z, k(1, 1, &one)],
    ])
    .expect("square");
    let relation = &l.pow(3).scale(&CycNum::from(9)) - &Poly::constant(&vars, &(m * &p2) * &CycNum::from(8));
    Witness { u, v, relations: vec![relation] }
}

/// The five polynomial conditions under which `α(b, c, d, x) ~ α(n, p, q, y)`
/// (with `a` the derived parameter of the first tuple):
/// `d² − dqy − dq + q²y`, `c + dpq²`, `b + dnq²`, `a + dnpy + npq`,
/// `ab²c²d² + dq²y − 1`, all zero.
pub fn alpha_self_equiv_conditions(first: &AlphaParams, second: &AlphaParams) -> bool {
    let (a, b, c, d) = (first.a(), first.b(), first.c(), first.d());
    let (n, p, q, y) = (second.b(), second.c(), second.d(), second.eps());
    let prod = |xs: &[&CycNum]| xs.iter().fold(CycNum::from(1), |acc, x| &acc * x);
    let eqs = [
        &(&prod(&[d, d]) - &prod(&[d, q, y])) - &(&prod(&[d, q]) - &prod(&[q, q, y])),
        c + &prod(&[d, p, q, q]),
        b + &prod(&[d, n, q, q]),
        &(a + &prod(&[d, n, p, y])) + &prod(&[n, p, q]),
        &(&prod(&[a, b, b, c, c, d, d]) + &prod(&[d, q, q, y])) - &CycNum::from(1),
    ];
    eqs.iter().all(|e| e.is_zero())
}

/// Row and column operations taking `D((a,b,c),(p,q,r))` to `D((c,a,b),(q,r,p))`.
pub fn d_cycle_ops() -> Vec<ElementaryOp<CycNum>> {
    let minus = CycNum::from(-1);
    vec![
        ElementaryOp::SwapRows(0, 2),
        ElementaryOp::SwapRows(1, 2),
        ElementaryOp::SwapCols(0, 1),
        ElementaryOp::SwapCols(1, 2),
        ElementaryOp::ScaleRow(2, minus.clone()),
        ElementaryOp::ScaleCol(1, minus),
    ]
}

/// The two permutations indexing a D/E/F tuple.
pub fn permutations_of(p: &RawCaseParams) -> ([CycNum; 3], [CycNum; 3]) {
    let third = |u: &CycNum, v: &CycNum| -(u + v);
    (
        [p.a.clone(), p.c.clone(), third(&p.a, &p.c)],
        [p.b.clone(), p.d.clone(), third(&p.b, &p.d)],
    )
}

/// A proven reduction from one raw case to a catalog (or raw) shape.
#[derive(Clone, Copy, Debug)]
pub struct ReductionMap {
    pub name: &'static str,
    pub source: RawCase,
    pub target: &'static str,
    /// Human-readable parameter map.
    pub rule: &'static str,
    applies: fn(&RawCaseParams) -> bool,
    image: fn(&RawCaseParams) -> Result<PolyMat>,
}

impl ReductionMap {
    /// Whether the map is stated for this source tuple.
    pub fn applies(&self, p: &RawCaseParams) -> bool {
        p.case == self.source && (self.applies)(p)
    }

    /// All valid source tuples in the map's domain.
    pub fn sources(&self) -> Vec<RawCaseParams> {
        crate::catalog::raw_params().into_iter().filter(|p| self.applies(p)).collect()
    }

    /// The target matrix for a source tuple.
    pub fn image(&self, p: &RawCaseParams) -> Result<PolyMat> {
        if !self.applies(p) {
            return Err(Error::Precondition(format!("{} does not apply to {p:?}", self.name)));
        }
        (self.image)(p)
    }
}

fn eps_of(p: &RawCaseParams) -> CycNum {
    p.eps.clone().expect("case with eps")
}

fn raw(case: RawCase, a: CycNum, b: CycNum, c: CycNum, d: CycNum, eps: Option<CycNum>) -> Result<PolyMat> {
    Ok(crate::catalog::raw_case(&RawCaseParams::new(case, a, b, c, d, eps)?))
}

/// `x = (−1, −y, −y²)` for a primitive `y`: the normalized first permutation.
fn normalized_y(p: &RawCaseParams) -> Option<CycNum> {
    let (x, _) = permutations_of(p);
    let y = -x[1].clone();
    (x[0] == CycNum::from(-1) && primitive_cube_roots_of_unity().contains(&y)).then_some(y)
}

fn e_f_branch(p: &RawCaseParams, to_theta: bool) -> bool {
    let Some(y) = normalized_y(p) else { return false };
    let (_, perm) = permutations_of(p);
    let [pp, q, _] = &perm;
    let target = if to_theta { -(&pp.pow(2) * q) } else { -(pp * &q.pow(2)) };
    y == target
}

/// `(−1, −y², −y)`: the normalized permutation with its last two entries swapped.
fn x_swapped(y: &CycNum) -> [CycNum; 3] {
    [CycNum::from(-1), -y.pow(2), -y.clone()]
}

/// The static table of reductions used to restrict the study to the catalog.
pub fn reduction_maps() -> Vec<ReductionMap> {
    vec![
        ReductionMap {
            name: "B->At",
            source: RawCase::B,
            target: "At",
            rule: "B(m,n,p,q;y) ~ At(a=-np, b=ynq^2, c=p, d=qy; eps=y^2)",
            applies: |_| true,
            image: |s| {
                let (n, p, q, y) = (&s.b, &s.c, &s.d, eps_of(s));
                raw(RawCase::At, -(n * p), &(&y * n) * &q.pow(2), p.clone(), q * &y, Some(y.pow(2)))
            },
        },
        ReductionMap {
            name: "C->At",
            source: RawCase::C,
            target: "At",
            rule: "C(m,n,p,q;y) ~ At(a=-n^2pqy^2, b=n, c=n^2p, d=n^2q; eps=y)",
            applies: |_| true,
            image: |s| {
                let (n, p, q, y) = (&s.b, &s.c, &s.d, eps_of(s));
                let n2 = n.pow(2);
                let a = -(&(&(&n2 * p) * q) * &y.pow(2));
                raw(RawCase::At, a, n.clone(), &n2 * p, &n2 * q, Some(y))
            },
        },
        ReductionMap {
            name: "D-cycle",
            source: RawCase::D,
            target: "D",
            rule: "D((a,b,c),(p,q,r)) ~ D((c,a,b),(q,r,p))",
            applies: |_| true,
            image: |s| {
                let (x, y) = permutations_of(s);
                let p = RawCaseParams::permuted(
                    RawCase::D,
                    &[x[2].clone(), x[0].clone(), x[1].clone()],
                    &[y[1].clone(), y[2].clone(), y[0].clone()],
                )?;
                Ok(crate::catalog::raw_case(&p))
            },
        },
        ReductionMap {
            name: "E->D",
            source: RawCase::E,
            target: "D",
            rule: "E((-1,-y,-y^2),(p,q,r)) with y=-pq^2 ~ D((-1,-y^2,-y),(r,q,p))",
            applies: |s| e_f_branch(s, false),
            image: |s| {
                let y = normalized_y(s).expect("in domain");
                let (_, [p, q, r]) = permutations_of(s);
                Ok(crate::catalog::raw_case(&RawCaseParams::permuted(RawCase::D, &x_swapped(&y), &[r, q, p])?))
            },
        },
        ReductionMap {
            name: "E->theta",
            source: RawCase::E,
            target: "theta",
            rule: "E((-1,-y,-y^2),(p,q,r)) with y=-p^2q is theta(p,q,r)",
            applies: |s| e_f_branch(s, true),
            image: |s| {
                let (_, perm) = permutations_of(s);
                Ok(crate::catalog::theta(&ThetaParams::new(perm)?))
            },
        },
        ReductionMap {
            name: "F->D",
            source: RawCase::F,
            target: "D",
            rule: "F((-1,-y,-y^2),(p,q,r)) with y=-pq^2 ~ D((-1,-y^2,-y),(-qp,-q^2,-qr))",
            applies: |s| e_f_branch(s, false),
            image: |s| {
                let y = normalized_y(s).expect("in domain");
                let (_, [p, q, r]) = permutations_of(s);
                Ok(crate::catalog::raw_case(&RawCaseParams::permuted(RawCase::D, &x_swapped(&y), &[-(&q * &p), -q.pow(2), -(&q * &r)])?))
            },
        },
        ReductionMap {
            name: "F->theta",
            source: RawCase::F,
            target: "theta",
            rule: "F((-1,-y,-y^2),(p,q,r)) with y=-p^2q ~ theta(r,q,p)",
            applies: |s| e_f_branch(s, true),
            image: |s| {
                let (_, [p, q, r]) = permutations_of(s);
                Ok(crate::catalog::theta(&ThetaParams::new([r, q, p])?))
            },
        },
    ]
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` when two distinct sets were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// Sets as sorted member lists, ordered by smallest member.
    pub fn groups(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..self.parent.len() {
            let r = self.find(i);
            by_root.entry(r).or_default().push(i);
        }
        let mut groups: Vec<Vec<usize>> = by_root.into_values().collect();
        groups.sort_by_key(|g| g[0]);
        groups
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyConfig {
    /// Use the proven parameter rules instead of deciding every pair.
    pub fast_rules: bool,
    /// Pairs spot-checked per rule in fast mode.
    pub audit_sample: usize,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig { fast_rules: true, audit_sample: 5, seed: 0, jobs: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class {
    pub id: usize,
    pub family: String,
    pub params: Value,
    pub representative: String,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Audit {
    pub rule: String,
    pub expected: Outcome,
    pub sampled: usize,
    pub confirmed: usize,
}

impl Audit {
    pub fn passed(&self) -> bool {
        self.sampled == self.confirmed
    }
}

#[derive(Clone, Debug)]
pub struct ClassReport {
    pub classes: Vec<Class>,
    pub audits: Vec<Audit>,
    /// Number of `decide_equiv` calls made.
    pub decisions: usize,
}

impl ClassReport {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn audits_passed(&self) -> bool {
        self.audits.iter().all(Audit::passed)
    }

    pub fn classes_json(&self) -> Value {
        Value::Array(
            self.classes
                .iter()
                .map(|c| {
                    json!({
                        "family": c.family,
                        "id": c.id,
                        "members": c.members,
                        "params": c.params,
                        "representative": c.representative,
                        "size": c.members.len(),
                    })
                })
                .collect(),
        )
    }

    pub fn audits_json(&self) -> Value {
        Value::Array(
            self.audits
                .iter()
                .map(|a| {
                    json!({
                        "confirmed": a.confirmed,
                        "expected": a.expected.as_str(),
                        "passed": a.passed(),
                        "rule": a.rule,
                        "sampled": a.sampled,
                    })
                })
                .collect(),
        )
    }
}

/// Index pairs joined by the twist rule `α(b,c,d,ε) ~ α(bε,cε,dε,ε²)` (and the
/// same for β).
pub fn twist_edges(entries: &[CatalogEntry]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        let (Family::Alpha | Family::Beta, Params::Alpha(p)) = (e.family(), e.params()) else { continue };
        let tw = p.twist();
        for (j, o) in entries.iter().enumerate().skip(i + 1) {
            if o.family() == e.family() && *o.params() == Params::Alpha(tw.clone()) {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn run_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Internal(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn decide_pairs(entries: &[CatalogEntry], pairs: &[(usize, usize)], jobs: Option<usize>) -> Result<Vec<Outcome>> {
    run_pool(jobs, || {
        pairs
            .par_iter()
            .map(|&(i, j)| {
                let (x, y) = (entries[i].matrix(), entries[j].matrix());
                if x.size() != y.size() {
                    return Ok(Outcome::NotEquivalent);
                }
                decide_equiv(x, y).map(|v| v.outcome)
            })
            .collect::<Result<Vec<_>>>()
    })?
}

/// Partitions `entries` into isomorphism classes.
///
/// With `fast_rules` the only edges are the twist pairs; both the rule and its
/// converse (distinct otherwise) are spot-checked on `audit_sample` random
/// pairs each. Without, every pair of equal-size matrices is decided.
pub fn classify(entries: &[CatalogEntry], config: &ClassifyConfig) -> Result<ClassReport> {
    let n = entries.len();
    let mut uf = UnionFind::new(n);
    let mut audits = Vec::new();
    let mut decisions = 0;
    if config.fast_rules {
        let edges = twist_edges(entries);
        for &(i, j) in &edges {
            uf.union(i, j);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let sample: Vec<(usize, usize)> = edges.choose_multiple(&mut rng, config.audit_sample).copied().collect();
        if !sample.is_empty() {
            let outcomes = decide_pairs(entries, &sample, config.jobs)?;
            decisions += sample.len();
            audits.push(Audit {
                rule: "twist-pairs-equivalent".into(),
                expected: Outcome::Equivalent,
                sampled: sample.len(),
                confirmed: outcomes.iter().filter(|o| **o == Outcome::Equivalent).count(),
            });
        }
        let mut others = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if uf.find(i) != uf.find(j) && entries[i].matrix().size() == entries[j].matrix().size() {
                    others.push((i, j));
                }
            }
        }
        let sample: Vec<(usize, usize)> = others.choose_multiple(&mut rng, config.audit_sample).copied().collect();
        if !sample.is_empty() {
            let outcomes = decide_pairs(entries, &sample, config.jobs)?;
            decisions += sample.len();
            audits.push(Audit {
                rule: "unpaired-distinct".into(),
                expected: Outcome::NotEquivalent,
                sampled: sample.len(),
                confirmed: outcomes.iter().filter(|o| **o == Outcome::NotEquivalent).count(),
            });
        }
    } else {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| entries[i].matrix().size() == entries[j].matrix().size())
            .collect();
        let outcomes = decide_pairs(entries, &pairs, config.jobs)?;
        decisions += pairs.len();
        for (&(i, j), o) in pairs.iter().zip(&outcomes) {
            if *o == Outcome::Equivalent {
                uf.union(i, j);
            }
        }
    }
    let classes = uf
        .groups()
        .into_iter()
        .enumerate()
        .map(|(id, members)| {
            let rep = &entries[members[0]];
            Class {
                id,
                family: rep.family().to_string(),
                params: rep.params().to_json(),
                representative: rep.name(),
                members: members.iter().map(|&m| entries[m].name()).collect(),
            }
        })
        .collect();
    Ok(ClassReport { classes, audits, decisions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{alpha, alpha_params, beta, enumerate_n3, eta, phi_ij, psi_ij, raw_case, TwoGenParams};
    use crate::cyclofield::cube_roots_of_minus_one;

    fn roots() -> [CycNum; 3] {
        cube_roots_of_minus_one()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(4, 0).len(), 1);
        assert_eq!(monomials_of_degree(4, 1).len(), 4);
        assert_eq!(monomials_of_degree(4, 2).len(), 10);
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
        assert_eq!(monomials_of_degree(0, 0).len(), 1);
    }

    #[test]
    fn ideal_shape_for_linear_matrices() {
        let a = alpha(&alpha_params()[0]);
        let ideal = build_equiv_ideal(&a, &a).unwrap();
        assert_eq!(ideal.vars().len(), 18);
        assert_eq!(linear_generator_count(&a, &a).unwrap(), 36);
        assert_eq!(ideal.generators().len(), 38);
        assert_eq!(build_graded_equiv_ideal(&a, &a).unwrap(), ideal);
    }

    #[test]
    fn reflexive() {
        let a = alpha(&alpha_params()[5]);
        let v = decide_equiv(&a, &a).unwrap();
        assert!(v.is_equivalent() && !v.certificate.is_trivial());
        let p = phi_ij(&TwoGenParams::new(2, 4, roots()[1].clone(), roots()[2].clone()).unwrap());
        assert!(decide_equiv(&p, &p).unwrap().is_equivalent());
    }

    #[test]
    fn twist_is_equivalent_and_transpose_is_not() {
        let p = &alpha_params()[7];
        let v = decide_equiv(&alpha(p), &alpha(&p.twist())).unwrap();
        assert!(v.is_equivalent());
        let v = decide_equiv(&alpha(p).transpose(), &alpha(p)).unwrap();
        assert_eq!(v.outcome, Outcome::NotEquivalent);
        assert!(v.certificate.is_trivial());
    }

    #[test]
    fn phi_and_psi_with_equal_fitting_ideals_differ() {
        let params = TwoGenParams::new(2, 3, roots()[0].clone(), roots()[0].clone()).unwrap();
        let (p, q) = (phi_ij(&params), psi_ij(&params));
        assert_eq!(decide_equiv(&p, &q).unwrap().outcome, Outcome::NotEquivalent);
    }

    #[test]
    fn graded_ops_preserve_equivalence() {
        let params = TwoGenParams::new(3, 4, roots()[2].clone(), roots()[0].clone()).unwrap();
        let p = phi_ij(&params);
        let y = crate::multipoly::VarTable::y4();
        let op = ElementaryOp::AddColMultiple { from: 0, to: 1, factor: Poly::var(&y, 2) };
        let q = p.apply_elementary(&op).unwrap();
        let v = decide_equiv(&p, &q).unwrap();
        assert!(v.graded && v.is_equivalent());
        let (u, w) = find_witness(&p, &q).unwrap().unwrap();
        assert_eq!(u.checked_mul(&p).unwrap(), q.checked_mul(&w).unwrap());
    }

    #[test]
    fn d_cycle_by_elementary_ops() {
        let r = roots();
        let x = [r[0].clone(), r[1].clone(), r[2].clone()];
        let y = [r[1].clone(), r[0].clone(), r[2].clone()];
        let d = raw_case(&RawCaseParams::permuted(RawCase::D, &x, &y).unwrap());
        let mut m = d.clone();
        for op in d_cycle_ops() {
            m = m.apply_elementary(&op).unwrap();
        }
        let map = reduction_maps().into_iter().find(|m| m.name == "D-cycle").unwrap();
        let src = RawCaseParams::permuted(RawCase::D, &x, &y).unwrap();
        assert_eq!(m, map.image(&src).unwrap());
    }

    #[test]
    fn witness_checks() {
        let a = alpha(&alpha_params()[3]);
        let vars = VarTable::new(Vec::<String>::new()).unwrap();
        let id = PolyMat::identity(&vars, 3);
        let w = Witness { u: id.clone(), v: id.clone(), relations: vec![] };
        assert!(verify_witness(&a, &a, &w).unwrap());
        let mut bad = id.clone();
        bad.set(0, 0, Poly::constant(&vars, CycNum::from(2)));
        let w = Witness { u: bad, v: id, relations: vec![] };
        assert!(!verify_witness(&a, &a, &w).unwrap());
    }

    #[test]
    fn lambda_witness_for_b_to_at() {
        let [m1, me, _] = roots();
        let (m, p) = (m1.clone(), me.clone());
        let (n, y) = (m1.clone(), CycNum::eps());
        // q from mq = npy
        let q = &(&(&n * &p) * &y) * &m.inv().unwrap();
        let b = RawCaseParams::new(RawCase::B, m.clone(), n, p.clone(), q, Some(y)).unwrap();
        let map = reduction_maps().into_iter().find(|r| r.name == "B->At").unwrap();
        let at = map.image(&b).unwrap();
        let w = b_to_at_witness(&m, &p);
        assert!(verify_witness(&at, &raw_case(&b), &w).unwrap());
    }

    #[test]
    fn alpha_conditions_identity_and_twist() {
        let ps = alpha_params();
        let mut hits = 0;
        for p in &ps {
            for q in &ps {
                let holds = alpha_self_equiv_conditions(p, q);
                assert_eq!(holds, q == p || *q == p.twist(), "{p:?} {q:?}");
                hits += usize::from(holds);
            }
        }
        assert_eq!(hits, 108);
    }

    #[test]
    fn small_classification() {
        let n3 = enumerate_n3();
        let sub: Vec<_> = n3.into_iter().take(4).collect();
        let report = classify(&sub, &ClassifyConfig { fast_rules: false, ..Default::default() }).unwrap();
        assert_eq!(report.len(), 4);
        assert_eq!(report.decisions, 6);
        let m3 = crate::catalog::enumerate_m3();
        let report = classify(&m3, &ClassifyConfig::default()).unwrap();
        assert_eq!(report.len(), 54);
        assert!(report.audits_passed(), "{:?}", report.audits);
        assert!(report.classes.iter().all(|c| c.members.len() == 2));
        let _ = (beta, eta);
    }

    #[test]
    fn union_find_groups() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(3, 1));
        assert!(!uf.union(1, 3));
        uf.union(4, 0);
        assert_eq!(uf.groups(), vec![vec![0, 4], vec![1, 3], vec![2]]);
    }
}
