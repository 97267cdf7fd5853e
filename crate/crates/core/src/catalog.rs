//! The parameterized families of rank-one matrix factorizations of `f4`:
//! constructors with constraint validation, enumerators, and the completion
//! of a generalized zero `[[0, α, β], [γ, *, *], [δ, *, *]]` to a
//! factorization.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::cyclofield::{cube_roots_of_minus_one, primitive_cube_roots_of_unity, CycNum};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{ideal_member, Ideal};
use crate::linsolve::{are_independent_linear_forms, solve, ScalarMatrix};
use crate::multipoly::{Monomial, MonomialOrder, VarTable};
use crate::{MatrixFactorization, Poly, PolyMat};

pub fn is_cube_root_of_minus_one(x: &CycNum) -> bool {
    x.pow(3) == CycNum::from(-1)
}

pub fn is_primitive_cube_root_of_unity(x: &CycNum) -> bool {
    x.pow(3) == CycNum::from(1) && *x != CycNum::from(1)
}

fn require_root(name: &str, x: &CycNum) -> Result<()> {
    if is_cube_root_of_minus_one(x) {
        Ok(())
    } else {
        Err(Error::Constraint(format!("{name} = {x} is not a cube root of -1")))
    }
}

fn require_primitive(name: &str, x: &CycNum) -> Result<()> {
    if is_primitive_cube_root_of_unity(x) {
        Ok(())
    } else {
        Err(Error::Constraint(format!("{name} = {x} is not a primitive cube root of 1")))
    }
}

fn require_permutation(roots: &[CycNum; 3]) -> Result<()> {
    for (name, r) in ["a", "b", "c"].iter().zip(roots) {
        require_root(name, r)?;
    }
    if roots[0] == roots[1] || roots[1] == roots[2] || roots[0] == roots[2] {
        return Err(Error::Constraint("(a, b, c) must be a permutation of the cube roots of -1".into()));
    }
    Ok(())
}

/// `φ_ij(a, b)` / `ψ_ij(a, b)` with `{i, j, s} = {2, 3, 4}`, `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoGenParams {
    pub i: usize,
    pub j: usize,
    pub a: CycNum,
    pub b: CycNum,
}

impl TwoGenParams {
    pub fn new(i: usize, j: usize, a: CycNum, b: CycNum) -> Result<Self> {
        if !(2..=4).contains(&i) || !(2..=4).contains(&j) || i >= j {
            return Err(Error::Constraint(format!("index pair ({i}, {j}) must satisfy 2 <= i < j <= 4")));
        }
        require_root("a", &a)?;
        require_root("b", &b)?;
        Ok(TwoGenParams { i, j, a, b })
    }

    /// The remaining index.
    pub fn s(&self) -> usize {
        9 - self.i - self.j
    }
}

/// Parameters of `α(b, c, d, ε)`; `a = ε⁻¹·bcd` is derived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaParams {
    b: CycNum,
    c: CycNum,
    d: CycNum,
    eps: CycNum,
    a: CycNum,
}

impl AlphaParams {
    pub fn new(b: CycNum, c: CycNum, d: CycNum, eps: CycNum) -> Result<Self> {
        require_root("b", &b)?;
        require_root("c", &c)?;
        require_root("d", &d)?;
        require_primitive("eps", &eps)?;
        let a = &(&(&b * &c) * &d) * &eps.inv().expect("nonzero");
        debug_assert!(is_cube_root_of_minus_one(&a));
        Ok(AlphaParams { b, c, d, eps, a })
    }

    pub fn a(&self) -> &CycNum {
        &self.a
    }
    pub fn b(&self) -> &CycNum {
        &self.b
    }
    pub fn c(&self) -> &CycNum {
        &self.c
    }
    pub fn d(&self) -> &CycNum {
        &self.d
    }
    pub fn eps(&self) -> &CycNum {
        &self.eps
    }

    /// `(bε, cε, dε, ε²)`, the partner of the isomorphic pair.
    pub fn twist(&self) -> AlphaParams {
        let e = &self.eps;
        AlphaParams::new(&self.b * e, &self.c * e, &self.d * e, e * e).expect("twist preserves the constraints")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaParams {
    pub roots: [CycNum; 3],
    pub eps: CycNum,
}

impl EtaParams {
    pub fn new(roots: [CycNum; 3], eps: CycNum) -> Result<Self> {
        require_permutation(&roots)?;
        require_primitive("eps", &eps)?;
        Ok(EtaParams { roots, eps })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaParams {
    pub roots: [CycNum; 3],
}

impl ThetaParams {
    pub fn new(roots: [CycNum; 3]) -> Result<Self> {
        require_permutation(&roots)?;
        Ok(ThetaParams { roots })
    }
}

/// The nine shapes of a generalized-zero presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RawCase {
    A,
    At,
    B,
    Bt,
    C,
    Ct,
    D,
    E,
    F,
}

impl RawCase {
    pub const ALL: [RawCase; 9] =
        [RawCase::A, RawCase::At, RawCase::B, RawCase::Bt, RawCase::C, RawCase::Ct, RawCase::D, RawCase::E, RawCase::F];

    fn needs_eps(self) -> bool {
        !matches!(self, RawCase::D | RawCase::E | RawCase::F)
    }
}

impl fmt::Display for RawCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RawCase::A => "A",
            RawCase::At => "At",
            RawCase::B => "B",
            RawCase::Bt => "Bt",
            RawCase::C => "C",
            RawCase::Ct => "Ct",
            RawCase::D => "D",
            RawCase::E => "E",
            RawCase::F => "F",
        };
        f.write_str(s)
    }
}

impl FromStr for RawCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RawCase::ALL
            .into_iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Input(format!("unknown case `{s}`")))
    }
}

/// Scalars `a, b, c, d` (and `ε` for the cases A–Ct) of one of the nine
/// shapes, with the case constraint:
/// A/At `bcd = εa`, B/Bt `ad = εbc`, C/Ct `ab = εcd`, D/E/F `a ≠ c`, `b ≠ d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawCaseParams {
    pub case: RawCase,
    pub a: CycNum,
    pub b: CycNum,
    pub c: CycNum,
    pub d: CycNum,
    pub eps: Option<CycNum>,
}

impl RawCaseParams {
    pub fn new(case: RawCase, a: CycNum, b: CycNum, c: CycNum, d: CycNum, eps: Option<CycNum>) -> Result<Self> {
        for (name, x) in [("a", &a), ("b", &b), ("c", &c), ("d", &d)] {
            require_root(name, x)?;
        }
        if case.needs_eps() {
            let e = eps.as_ref().ok_or_else(|| Error::Constraint(format!("case {case} needs eps")))?;
            require_primitive("eps", e)?;
            let (lhs, rhs, text) = match case {
                RawCase::A | RawCase::At => (&(&b * &c) * &d, e * &a, "bcd = eps*a"),
                RawCase::B | RawCase::Bt => (&a * &d, &(e * &b) * &c, "ad = eps*bc"),
                _ => (&a * &b, &(e * &c) * &d, "ab = eps*cd"),
            };
            if lhs != rhs {
                return Err(Error::Constraint(format!("case {case} requires {text}")));
            }
        } else {
            if eps.is_some() {
                return Err(Error::Constraint(format!("case {case} takes no eps")));
            }
            if a == c || b == d {
                return Err(Error::Constraint(format!("case {case} requires a != c and b != d")));
            }
        }
        Ok(RawCaseParams { case, a, b, c, d, eps })
    }

    /// The D/E/F matrix indexed by two permutations of the cube roots of
    /// −1, under the convention in which `η(p, q, r, ε) = D((−1, −ε, −ε²), (p, q, r))`:
    /// first row `Y1 − x0·Yk`, `Yl − y0·Ym`; first column entries
    /// `Y1 − x1·Yk`, `Yl − y1·Ym`; diagonal `−Yl + y2·Ym`, `−Y1 + x2·Yk`.
    pub fn permuted(case: RawCase, x: &[CycNum; 3], y: &[CycNum; 3]) -> Result<Self> {
        if case.needs_eps() {
            return Err(Error::Constraint(format!("case {case} is not indexed by permutations")));
        }
        require_permutation(x)?;
        require_permutation(y)?;
        RawCaseParams::new(case, x[0].clone(), y[0].clone(), x[1].clone(), y[1].clone(), None)
    }
}

/// Family tags for catalog entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Phi,
    Psi,
    Alpha,
    Beta,
    Eta,
    Theta,
    Raw,
}

impl Family {
    pub const ALL: [Family; 7] =
        [Family::Phi, Family::Psi, Family::Alpha, Family::Beta, Family::Eta, Family::Theta, Family::Raw];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Phi => "phi",
            Family::Psi => "psi",
            Family::Alpha => "alpha",
            Family::Beta => "beta",
            Family::Eta => "eta",
            Family::Theta => "theta",
            Family::Raw => "raw",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| Error::Input(format!("unknown family `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Params {
    TwoGen(TwoGenParams),
    Alpha(AlphaParams),
    Eta(EtaParams),
    Theta(ThetaParams),
    Raw(RawCaseParams),
}

impl Params {
    /// Ordered `(key, value)` pairs.
    pub fn fields(&self) -> Vec<(&'static str, String)> {
        let s = |x: &CycNum| x.to_string();
        match self {
            Params::TwoGen(p) => vec![("i", p.i.to_string()), ("j", p.j.to_string()), ("a", s(&p.a)), ("b", s(&p.b))],
            Params::Alpha(p) => vec![("b", s(&p.b)), ("c", s(&p.c)), ("d", s(&p.d)), ("eps", s(&p.eps)), ("a", s(&p.a))],
            Params::Eta(p) => vec![("a", s(&p.roots[0])), ("b", s(&p.roots[1])), ("c", s(&p.roots[2])), ("eps", s(&p.eps))],
            Params::Theta(p) => vec![("a", s(&p.roots[0])), ("b", s(&p.roots[1])), ("c", s(&p.roots[2]))],
            Params::Raw(p) => {
                let mut v = vec![("case", p.case.to_string()), ("a", s(&p.a)), ("b", s(&p.b)), ("c", s(&p.c)), ("d", s(&p.d))];
                if let Some(e) = &p.eps {
                    v.push(("eps", s(e)));
                }
                v
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let map = self.fields().into_iter().map(|(k, v)| (k.to_string(), Value::String(v))).collect();
        Value::Object(map)
    }

    /// Parses `k=v,k=v,...`; values are constants in the polynomial grammar
    /// (`-1`, `-e`, `1+e`, ...). For the families `phi`/`psi` the keys are
    /// `i, j, a, b`; `alpha`/`beta`: `b, c, d, eps`; `eta`: `a, b, c, eps`;
    /// `theta`: `a, b, c`; `raw`: `case, a, b, c, d[, eps]`.
    pub fn parse(family: Family, text: &str) -> Result<Params> {
        let mut kv: Vec<(String, String)> = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| Error::Input(format!("expected key=value, got `{part}`")))?;
            kv.push((k.trim().to_string(), v.trim().to_string()));
        }
        let allowed: &[&str] = match family {
            Family::Phi | Family::Psi => &["i", "j", "a", "b"],
            Family::Alpha | Family::Beta => &["b", "c", "d", "eps"],
            Family::Eta => &["a", "b", "c", "eps"],
            Family::Theta => &["a", "b", "c"],
            Family::Raw => &["case", "a", "b", "c", "d", "eps"],
        };
        if let Some((k, _)) = kv.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            return Err(Error::Input(format!("unknown parameter `{k}` for family {family}")));
        }
        let raw = |key: &str| kv.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
        let get = |key: &str| -> Result<&str> {
            raw(key).ok_or_else(|| Error::Input(format!("missing parameter `{key}` for family {family}")))
        };
        let num = |key: &str| -> Result<CycNum> { parse_scalar(get(key)?) };
        let index = |key: &str| -> Result<usize> {
            get(key)?.parse().map_err(|_| Error::Input(format!("parameter `{key}` must be an index")))
        };
        Ok(match family {
            Family::Phi | Family::Psi => Params::TwoGen(TwoGenParams::new(index("i")?, index("j")?, num("a")?, num("b")?)?),
            Family::Alpha | Family::Beta => Params::Alpha(AlphaParams::new(num("b")?, num("c")?, num("d")?, num("eps")?)?),
            Family::Eta => Params::Eta(EtaParams::new([num("a")?, num("b")?, num("c")?], num("eps")?)?),
            Family::Theta => Params::Theta(ThetaParams::new([num("a")?, num("b")?, num("c")?])?),
            Family::Raw => {
                let eps = raw("eps").map(parse_scalar).transpose()?;
                Params::Raw(RawCaseParams::new(get("case")?.parse()?, num("a")?, num("b")?, num("c")?, num("d")?, eps)?)
            }
        })
    }
}

/// Parses a constant of Q(ε) written in the polynomial grammar.
pub fn parse_scalar(text: &str) -> Result<CycNum> {
    let empty = VarTable::new(Vec::<String>::new())?;
    let p = Poly::parse(text, &empty)?;
    p.constant_value().ok_or_else(|| Error::Input(format!("`{text}` is not a constant")))
}

fn y(i: usize) -> Poly {
    Poly::var(&VarTable::y4(), i - 1)
}

/// `Σ k · Y_i` over the listed (1-based) indices.
fn form(terms: &[(usize, CycNum)]) -> Poly {
    terms.iter().fold(Poly::zero(&VarTable::y4()), |acc, (i, k)| &acc + &y(*i).scale(k))
}

fn one() -> CycNum {
    CycNum::from(1)
}

/// `Y_i − k·Y_j`
fn lin(i: usize, k: &CycNum, j: usize) -> Poly {
    form(&[(i, one()), (j, -k.clone())])
}

/// `Y_i² + k·Y_i·Y_j + k²·Y_j²`
fn quad(i: usize, k: &CycNum, j: usize) -> Poly {
    &(&(&y(i) * &y(i)) + &(&y(i) * &y(j)).scale(k)) + &(&y(j) * &y(j)).scale(&k.pow(2))
}

fn matrix(rows: Vec<Vec<Poly>>) -> PolyMat {
    PolyMat::from_rows(rows).expect("square matrix over Y1..Y4")
}

pub fn phi_ij(p: &TwoGenParams) -> PolyMat {
    let (i, j, s) = (p.i, p.j, p.s());
    matrix(vec![vec![lin(1, &p.a, s), -quad(i, &p.b, j)], vec![lin(i, &p.b, j), quad(1, &p.a, s)]])
}

pub fn psi_ij(p: &TwoGenParams) -> PolyMat {
    let (i, j, s) = (p.i, p.j, p.s());
    matrix(vec![vec![quad(1, &p.a, s), quad(i, &p.b, j)], vec![-lin(i, &p.b, j), lin(1, &p.a, s)]])
}

/// `⟨Y1 − aYs, Yi − bYj, Ys², Yj²⟩`, the first Fitting ideal of `φij(a, b)`.
pub fn expected_fitting_ideal(p: &TwoGenParams) -> Ideal<CycNum> {
    let (i, j, s) = (p.i, p.j, p.s());
    let gens = vec![lin(1, &p.a, s), lin(i, &p.b, j), &y(s) * &y(s), &y(j) * &y(j)];
    Ideal::new(&VarTable::y4(), gens, MonomialOrder::grevlex()).expect("generators over Y1..Y4")
}

fn case_a(a: &CycNum, b: &CycNum, c: &CycNum, d: &CycNum, e: &CycNum) -> PolyMat {
    let e2 = e.pow(2);
    let z = Poly::zero(&VarTable::y4());
    let m = |xs: &[&CycNum]| xs.iter().fold(one(), |acc, x| &acc * x);
    matrix(vec![
        vec![z, lin(1, a, 4), lin(2, b, 3)],
        vec![
            lin(1, c, 2),
            form(&[(3, -m(&[b, b])), (4, -m(&[a, b, c, c, &e2]))]),
            form(&[(3, m(&[b, b, c, c])), (4, -m(&[a, b, c, &e2]))]),
        ],
        vec![
            lin(3, d, 4),
            form(&[(2, m(&[c, c])), (3, m(&[b, c, c])), (4, m(&[a, c]))]),
            form(&[(1, -one()), (2, -c.clone()), (4, -a.clone())]),
        ],
    ])
}

pub fn alpha(p: &AlphaParams) -> PolyMat {
    case_a(&p.a, &p.b, &p.c, &p.d, &p.eps)
}

pub fn beta(p: &AlphaParams) -> PolyMat {
    alpha(p).transpose()
}

/// Generalized zero with diagonal lower block, shared by η, ϑ and D/E/F:
/// `[[0, α, β], [γ, m, 0], [δ, 0, t]]`.
fn diagonal_shape(alpha: Poly, beta: Poly, gamma: Poly, delta: Poly, m: Poly, t: Poly) -> PolyMat {
    let z = Poly::zero(&VarTable::y4());
    matrix(vec![vec![z.clone(), alpha, beta], vec![gamma, m, z.clone()], vec![delta, z, t]])
}

pub fn eta(p: &EtaParams) -> PolyMat {
    let [a, b, c] = &p.roots;
    let e = &p.eps;
    diagonal_shape(
        form(&[(1, one()), (2, one())]),
        lin(3, a, 4),
        form(&[(1, one()), (2, e.clone())]),
        lin(3, b, 4),
        form(&[(3, -one()), (4, c.clone())]),
        form(&[(1, -one()), (2, -e.pow(2))]),
    )
}

pub fn theta(p: &ThetaParams) -> PolyMat {
    let [a, b, c] = &p.roots;
    diagonal_shape(
        form(&[(1, one()), (3, one())]),
        lin(2, a, 4),
        lin(1, &(&a.pow(2) * b), 3),
        lin(2, b, 4),
        form(&[(2, -one()), (4, c.clone())]),
        form(&[(1, -one()), (3, a * &b.pow(2))]),
    )
}

pub fn raw_case(p: &RawCaseParams) -> PolyMat {
    let (a, b, c, d) = (&p.a, &p.b, &p.c, &p.d);
    let m = |xs: &[&CycNum]| xs.iter().fold(one(), |acc, x| &acc * x);
    let z = || Poly::zero(&VarTable::y4());
    match p.case {
        RawCase::A | RawCase::At => {
            let mat = case_a(a, b, c, d, p.eps.as_ref().expect("validated"));
            if p.case == RawCase::A {
                mat
            } else {
                mat.transpose()
            }
        }
        RawCase::B | RawCase::Bt => {
            let e = p.eps.as_ref().expect("validated");
            let mat = matrix(vec![
                vec![z(), lin(1, a, 3), lin(2, b, 4)],
                vec![
                    lin(1, c, 2),
                    form(&[(3, m(&[a, a, c])), (4, &m(&[a, b, c, c]) + &m(&[a, a, c, d]))]),
                    form(&[(3, m(&[a, a])), (4, -m(&[a, a, d, e]))]),
                ],
                vec![
                    lin(3, d, 4),
                    form(&[(2, m(&[c, c])), (3, m(&[a, c])), (4, m(&[b, c, c]))]),
                    form(&[(1, -one()), (2, -c.clone()), (3, -a.clone())]),
                ],
            ]);
            if p.case == RawCase::B {
                mat
            } else {
                mat.transpose()
            }
        }
        RawCase::C | RawCase::Ct => {
            let e = p.eps.as_ref().expect("validated");
            let e2 = e.pow(2);
            let corner = form(&[(3, m(&[b, b, c, c])), (4, -m(&[b, c, c, d, &e2]))]);
            let mat = matrix(vec![
                vec![z(), lin(1, a, 4), lin(2, b, 3)],
                vec![lin(1, c, 3), form(&[(2, -one()), (3, -b.clone()), (4, -d.clone())]), -corner.clone()],
                vec![lin(2, d, 4), corner, form(&[(1, -one()), (3, -c.clone()), (4, -a.clone())])],
            ]);
            if p.case == RawCase::C {
                mat
            } else {
                mat.transpose()
            }
        }
        RawCase::D | RawCase::E | RawCase::F => {
            // (k, l, m): first pair Y1/Yk, second pair Yl/Ym
            let (k, l, mm) = match p.case {
                RawCase::D => (2, 3, 4),
                RawCase::E => (3, 2, 4),
                _ => (4, 2, 3),
            };
            diagonal_shape(
                lin(1, a, k),
                lin(l, b, mm),
                lin(1, c, k),
                lin(l, d, mm),
                form(&[(l, -one()), (mm, -(b + d))]),
                form(&[(1, -one()), (k, -(a + c))]),
            )
        }
    }
}

/// A catalog matrix together with its adjugate factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    family: Family,
    params: Params,
    mf: MatrixFactorization,
    /// Row-0 scalar applied to bring `det` to exactly `f4`.
    det_scale: CycNum,
}

impl CatalogEntry {
    pub fn new(family: Family, params: Params) -> Result<Self> {
        let phi = match (family, &params) {
            (Family::Phi, Params::TwoGen(p)) => phi_ij(p),
            (Family::Psi, Params::TwoGen(p)) => psi_ij(p),
            (Family::Alpha, Params::Alpha(p)) => alpha(p),
            (Family::Beta, Params::Alpha(p)) => beta(p),
            (Family::Eta, Params::Eta(p)) => eta(p),
            (Family::Theta, Params::Theta(p)) => theta(p),
            (Family::Raw, Params::Raw(p)) => raw_case(p),
            _ => return Err(Error::Input(format!("parameters do not belong to family {family}"))),
        };
        let (phi, det_scale) = normalize_det(phi)?;
        let mf = if phi.size() == 2 {
            // the displayed partner, which is the adjugate
            let psi = match (&family, &params) {
                (Family::Phi, Params::TwoGen(p)) => psi_ij(p),
                (Family::Psi, Params::TwoGen(p)) => phi_ij(p),
                _ => phi.adjugate(),
            };
            MatrixFactorization::new(phi, psi, Poly::f4())?
        } else {
            MatrixFactorization::from_adjugate(phi)?
        };
        Ok(CatalogEntry { family, params, mf, det_scale })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn mf(&self) -> &MatrixFactorization {
        &self.mf
    }

    pub fn matrix(&self) -> &PolyMat {
        self.mf.phi()
    }

    pub fn det_scale(&self) -> &CycNum {
        &self.det_scale
    }

    /// E.g. `phi_23(a=-1,b=-e)`, `alpha(b=-1,c=-1,d=-1,eps=e)`.
    pub fn name(&self) -> String {
        let fields: Vec<String> = self
            .params
            .fields()
            .into_iter()
            .filter(|(k, _)| !matches!((self.family, *k), (Family::Phi | Family::Psi, "i" | "j") | (Family::Alpha | Family::Beta, "a")))
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let tag = match &self.params {
            Params::TwoGen(p) => format!("{}_{}{}", self.family, p.i, p.j),
            _ => self.family.to_string(),
        };
        format!("{tag}({})", fields.join(","))
    }

    pub fn to_json(&self) -> Value {
        let m = self.matrix().to_json();
        json!({
            "family": self.family.to_string(),
            "name": self.name(),
            "params": self.params.to_json(),
            "rows": m.rows,
            "vars": m.vars,
        })
    }
}

/// Scales row 0 so that `det = f4` exactly; returns the scalar used.
fn normalize_det(phi: PolyMat) -> Result<(PolyMat, CycNum)> {
    let det = phi.det();
    let f4 = Poly::f4();
    let lead = f4.terms()[0].0.clone();
    let c = det.coefficient(&lead);
    if c.is_zero() || det != f4.scale(&c) {
        return Err(Error::NotPowerOfF(det.to_string()));
    }
    let k = c.inv().expect("nonzero");
    if k.is_one() {
        return Ok((phi, k));
    }
    let scaled = phi.apply_elementary(&crate::ElementaryOp::ScaleRow(0, k.clone()))?;
    Ok((scaled, k))
}

fn roots() -> [CycNum; 3] {
    cube_roots_of_minus_one()
}

/// Permutations of the cube roots of −1, lexicographic in root indices.
pub fn root_permutations() -> Vec<[CycNum; 3]> {
    let r = roots();
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
        .iter()
        .map(|p| [r[p[0]].clone(), r[p[1]].clone(), r[p[2]].clone()])
        .collect()
}

pub fn two_gen_params() -> Vec<TwoGenParams> {
    let mut out = Vec::new();
    for (i, j) in [(2, 3), (2, 4), (3, 4)] {
        for a in roots() {
            for b in roots() {
                out.push(TwoGenParams::new(i, j, a.clone(), b).expect("valid"));
            }
        }
    }
    out
}

pub fn alpha_params() -> Vec<AlphaParams> {
    let mut out = Vec::new();
    for b in roots() {
        for c in roots() {
            for d in roots() {
                for e in primitive_cube_roots_of_unity() {
                    out.push(AlphaParams::new(b.clone(), c.clone(), d.clone(), e).expect("valid"));
                }
            }
        }
    }
    out
}

fn build(family: Family, params: Params) -> CatalogEntry {
    CatalogEntry::new(family, params).expect("catalog entries are valid factorizations")
}

/// 27 `φ_ij(a, b)` followed by 27 `ψ_ij(a, b)`.
pub fn enumerate_two_gen() -> Vec<CatalogEntry> {
    [Family::Phi, Family::Psi]
        .into_iter()
        .flat_map(|f| two_gen_params().into_iter().map(move |p| build(f, Params::TwoGen(p))))
        .collect()
}

/// 54 `α(b, c, d, ε)` followed by 54 `β(b, c, d, ε)`.
pub fn enumerate_m3() -> Vec<CatalogEntry> {
    [Family::Alpha, Family::Beta]
        .into_iter()
        .flat_map(|f| alpha_params().into_iter().map(move |p| build(f, Params::Alpha(p))))
        .collect()
}

/// 12 `η(a, b, c, ε)` followed by 6 `ϑ(a, b, c)`.
pub fn enumerate_n3() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for roots in root_permutations() {
        for e in primitive_cube_roots_of_unity() {
            out.push(build(Family::Eta, Params::Eta(EtaParams::new(roots.clone(), e).expect("valid"))));
        }
    }
    for roots in root_permutations() {
        out.push(build(Family::Theta, Params::Theta(ThetaParams::new(roots).expect("valid"))));
    }
    out
}

/// Every entry of the given family, in enumeration order. For `raw` this is
/// all valid parameter tuples of all nine cases.
pub fn enumerate_family(family: Family) -> Vec<CatalogEntry> {
    match family {
        Family::Phi | Family::Psi => {
            two_gen_params().into_iter().map(|p| build(family, Params::TwoGen(p))).collect()
        }
        Family::Alpha | Family::Beta => {
            alpha_params().into_iter().map(|p| build(family, Params::Alpha(p))).collect()
        }
        Family::Eta => enumerate_n3().into_iter().filter(|e| e.family == Family::Eta).collect(),
        Family::Theta => enumerate_n3().into_iter().filter(|e| e.family == Family::Theta).collect(),
        Family::Raw => raw_params().into_iter().map(|p| build(Family::Raw, Params::Raw(p))).collect(),
    }
}

/// All valid raw-case parameter tuples, case by case.
pub fn raw_params() -> Vec<RawCaseParams> {
    let mut out = Vec::new();
    for case in RawCase::ALL {
        for a in roots() {
            for b in roots() {
                for c in roots() {
                    for d in roots() {
                        let epss: Vec<Option<CycNum>> = if case.needs_eps() {
                            primitive_cube_roots_of_unity().into_iter().map(Some).collect()
                        } else {
                            vec![None]
                        };
                        for e in epss {
                            if let Ok(p) = RawCaseParams::new(case, a.clone(), b.clone(), c.clone(), d.clone(), e) {
                                out.push(p);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// The affine space of completions `[[0, α, β], [γ, m, n], [δ, w, t]]` with
/// linear `m, n, w, t` and determinant `f4`.
#[derive(Clone, Debug)]
pub struct CompletionSpace {
    forms: [Poly; 4],
    particular: Vec<CycNum>,
    kernel: Vec<Vec<CycNum>>,
}

impl CompletionSpace {
    /// Checks the hypotheses (independence, `f4 ∈ (α, β) ∩ (γ, δ)`) and
    /// solves `−αγt + αδn + βγw − βδm = f4` for the 16 coefficients of
    /// `m, n, w, t`.
    pub fn new(alpha: &Poly, beta: &Poly, gamma: &Poly, delta: &Poly) -> Result<Self> {
        let y4 = VarTable::y4();
        let forms = [alpha.clone(), beta.clone(), gamma.clone(), delta.clone()];
        if forms.iter().any(|f| **f.vars() != *y4) {
            return Err(Error::VarMismatch);
        }
        match are_independent_linear_forms(&forms) {
            Ok(true) => {}
            Ok(false) => return Err(Error::Precondition("alpha, beta, gamma, delta are linearly dependent".into())),
            Err(Error::NotLinear(s)) => return Err(Error::Precondition(format!("`{s}` is not a linear form"))),
            Err(e) => return Err(e),
        }
        let f4 = Poly::f4();
        let order = MonomialOrder::grevlex();
        for (pair, name) in [([alpha, beta], "(alpha, beta)"), ([gamma, delta], "(gamma, delta)")] {
            let ideal = Ideal::new(&y4, pair.iter().map(|p| (*p).clone()).collect(), order.clone())?;
            if !ideal_member(&f4, &ideal)? {
                return Err(Error::Precondition(format!("f4 is not in the ideal {name}")));
            }
        }
        // unknown layout: m(0..4), n(4..8), w(8..12), t(12..16)
        let products = [-(beta * delta), alpha * delta, beta * gamma, -(alpha * gamma)];
        let cubics = cubic_monomials();
        let mut a = ScalarMatrix::zeros(cubics.len(), 16);
        for (block, prod) in products.iter().enumerate() {
            for v in 0..4 {
                let col = prod * &y(v + 1);
                for (row, mono) in cubics.iter().enumerate() {
                    a[(row, block * 4 + v)] = col.coefficient(mono);
                }
            }
        }
        let rhs: Vec<CycNum> = cubics.iter().map(|m| f4.coefficient(m)).collect();
        let particular = solve(&a, &rhs)?
            .ok_or_else(|| Error::Internal("completion system infeasible under valid hypotheses".into()))?;
        let kernel = a.nullspace();
        Ok(CompletionSpace { forms, particular, kernel })
    }

    /// Dimension of the solution space.
    pub fn dimension(&self) -> usize {
        self.kernel.len()
    }

    /// The completion `particular + Σ combo[k] · kernel[k]`; missing
    /// combination coefficients count as zero.
    pub fn completion(&self, combo: &[CycNum]) -> PolyMat {
        let mut x = self.particular.clone();
        for (k, c) in combo.iter().enumerate().take(self.kernel.len()) {
            for (xi, ki) in x.iter_mut().zip(&self.kernel[k]) {
                *xi = &*xi + &(c * ki);
            }
        }
        let lf = |block: usize| form(&(0..4).map(|v| (v + 1, x[block * 4 + v].clone())).collect::<Vec<_>>());
        let [alpha, beta, gamma, delta] = self.forms.clone();
        let z = Poly::zero(&VarTable::y4());
        matrix(vec![vec![z, alpha, beta], vec![gamma, lf(0), lf(1)], vec![delta, lf(2), lf(3)]])
    }
}

fn cubic_monomials() -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..=3u16 {
        for b in 0..=3 - a {
            for c in 0..=3 - a - b {
                out.push(Monomial::from_exponents(&[a, b, c, 3 - a - b - c]));
            }
        }
    }
    out
}

/// Some completion of `(α, β, γ, δ)` with determinant `f4`.
pub fn complete_factorization(alpha: &Poly, beta: &Poly, gamma: &Poly, delta: &Poly) -> Result<PolyMat> {
    Ok(CompletionSpace::new(alpha, beta, gamma, delta)?.completion(&[]))
}

/// The pairs `(Y1 − a·Ys, Yi − b·Yj)` generating ideals that contain `f4`.
pub fn generalized_zero_pairs() -> Vec<(Poly, Poly)> {
    two_gen_params().iter().map(|p| (lin(1, &p.a, p.s()), lin(p.i, &p.b, p.j))).collect()
}
