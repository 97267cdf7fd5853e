//! Square matrices over a polynomial ring and matrix factorizations.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::multipoly::{MonomialOrder, Polynomial, VarTable};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix<F> {
    n: usize,
    vars: Arc<VarTable>,
    entries: Vec<Polynomial<F>>,
}

/// Elementary transformation of a square polynomial matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ElementaryOp<F> {
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    /// Multiply a row by a nonzero scalar.
    ScaleRow(usize, F),
    ScaleCol(usize, F),
    /// `row[to] += factor · row[from]`
    AddRowMultiple { from: usize, to: usize, factor: Polynomial<F> },
    /// `col[to] += factor · col[from]`
    AddColMultiple { from: usize, to: usize, factor: Polynomial<F> },
}

impl<F: Field> PolyMatrix<F> {
    pub fn from_rows(rows: Vec<Vec<Polynomial<F>>>) -> Result<Self> {
        let n = rows.len();
        let vars = match rows.first().and_then(|r| r.first()) {
            Some(p) => p.vars().clone(),
            None => return Err(Error::Input("empty matrix".into())),
        };
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::SizeMismatch(n, r.len()));
        }
        let entries: Vec<_> = rows.into_iter().flatten().collect();
        if entries.iter().any(|p| !Arc::ptr_eq(p.vars(), &vars) && **p.vars() != *vars) {
            return Err(Error::VarMismatch);
        }
        Ok(PolyMatrix { n, vars, entries })
    }

    /// Parses each entry in the polynomial grammar.
    pub fn parse<S: AsRef<str>>(vars: &Arc<VarTable>, rows: &[Vec<S>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| Polynomial::parse(s.as_ref(), vars).map_err(Error::from)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Self::from_rows(parsed)
    }

    pub fn from_fn(vars: &Arc<VarTable>, n: usize, f: impl Fn(usize, usize) -> Polynomial<F>) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        PolyMatrix { n, vars: vars.clone(), entries }
    }

    pub fn identity(vars: &Arc<VarTable>, n: usize) -> Self {
        Self::scalar(vars, n, &Polynomial::one(vars))
    }

    /// `p · I_n`.
    pub fn scalar(vars: &Arc<VarTable>, n: usize, p: &Polynomial<F>) -> Self {
        Self::from_fn(vars, n, |i, j| if i == j { p.clone() } else { Polynomial::zero(vars) })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial<F>) {
        self.entries[i * self.n + j] = p;
    }

    pub fn entries(&self) -> &[Polynomial<F>] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial<F>>> {
        self.entries.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.vars, self.n, |i, j| self.get(j, i).clone())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        if *self.vars != *other.vars {
            return Err(Error::VarMismatch);
        }
        let n = self.n;
        Ok(Self::from_fn(&self.vars, n, |i, j| {
            (0..n).fold(Polynomial::zero(&self.vars), |acc, k| &acc + &(self.get(i, k) * other.get(k, j)))
        }))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        if *self.vars != *other.vars {
            return Err(Error::VarMismatch);
        }
        Ok(Self::from_fn(&self.vars, self.n, |i, j| self.get(i, j) - other.get(i, j)))
    }

    pub fn scale(&self, p: &Polynomial<F>) -> Self {
        Self::from_fn(&self.vars, self.n, |i, j| self.get(i, j) * p)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// Rewrites every entry over `target`, matching variables by name.
    pub fn embed(&self, target: &Arc<VarTable>) -> Result<Self> {
        let entries = self.entries.iter().map(|p| p.embed(target)).collect::<Result<_>>()?;
        Ok(PolyMatrix { n: self.n, vars: target.clone(), entries })
    }

    /// Cofactor expansion along the first row.
    pub fn det(&self) -> Polynomial<F> {
        let idx: Vec<usize> = (0..self.n).collect();
        self.minor_det(&idx, &idx)
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor_det(&self, rows: &[usize], cols: &[usize]) -> Polynomial<F> {
        match rows.len() {
            0 => Polynomial::one(&self.vars),
            1 => self.get(rows[0], cols[0]).clone(),
            2 => {
                &(self.get(rows[0], cols[0]) * self.get(rows[1], cols[1]))
                    - &(self.get(rows[0], cols[1]) * self.get(rows[1], cols[0]))
            }
            _ => {
                let mut acc = Polynomial::zero(&self.vars);
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = a * &self.minor_det(&rows[1..], &sub_cols);
                    acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Transpose of the cofactor matrix; `A · adj(A) = det(A) · I`.
    pub fn adjugate(&self) -> Self {
        let n = self.n;
        if n == 1 {
            return Self::identity(&self.vars, 1);
        }
        Self::from_fn(&self.vars, n, |i, j| {
            // entry (i, j) is the (j, i) cofactor
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let m = self.minor_det(&rows, &cols);
            if (i + j) % 2 == 0 {
                m
            } else {
                -m
            }
        })
    }

    /// All nonzero `k × k` minors, rows and columns in lexicographic order.
    pub fn minors(&self, k: usize) -> Vec<Polynomial<F>> {
        let subsets = subsets(self.n, k);
        let mut out = Vec::new();
        for rows in &subsets {
            for cols in &subsets {
                let m = self.minor_det(rows, cols);
                if !m.is_zero() {
                    out.push(m);
                }
            }
        }
        out
    }

    /// `Fitt_t`: the ideal of `(n − t) × (n − t)` minors, with the empty minor
    /// equal to 1 (so `Fitt_t = ⟨1⟩` for `t ≥ n`).
    pub fn fitting_ideal(&self, t: usize, order: MonomialOrder) -> Ideal<F> {
        let gens = if t >= self.n { vec![Polynomial::one(&self.vars)] } else { self.minors(self.n - t) };
        Ideal::new(&self.vars, gens, order).expect("minors share the matrix ring")
    }

    pub fn apply_elementary(&self, op: &ElementaryOp<F>) -> Result<Self> {
        let n = self.n;
        let check = |i: usize| {
            if i < n {
                Ok(())
            } else {
                Err(Error::InvalidOp(format!("index {i} out of range for a {n}x{n} matrix")))
            }
        };
        let mut m = self.clone();
        match op {
            ElementaryOp::SwapRows(a, b) => {
                check(*a)?;
                check(*b)?;
                for j in 0..n {
                    m.set(*a, j, self.get(*b, j).clone());
                    m.set(*b, j, self.get(*a, j).clone());
                }
            }
            ElementaryOp::SwapCols(a, b) => {
                check(*a)?;
                check(*b)?;
                for i in 0..n {
                    m.set(i, *a, self.get(i, *b).clone());
                    m.set(i, *b, self.get(i, *a).clone());
                }
            }
            ElementaryOp::ScaleRow(r, c) | ElementaryOp::ScaleCol(r, c) => {
                check(*r)?;
                if c.is_zero() {
                    return Err(Error::InvalidOp("scaling by zero".into()));
                }
                let by_row = matches!(op, ElementaryOp::ScaleRow(..));
                for k in 0..n {
                    let (i, j) = if by_row { (*r, k) } else { (k, *r) };
                    m.set(i, j, self.get(i, j).scale(c));
                }
            }
            ElementaryOp::AddRowMultiple { from, to, factor } | ElementaryOp::AddColMultiple { from, to, factor } => {
                check(*from)?;
                check(*to)?;
                if from == to {
                    return Err(Error::InvalidOp("source and target coincide".into()));
                }
                if **factor.vars() != *self.vars {
                    return Err(Error::VarMismatch);
                }
                let by_row = matches!(op, ElementaryOp::AddRowMultiple { .. });
                for k in 0..n {
                    let ((ti, tj), (si, sj)) = if by_row { ((*to, k), (*from, k)) } else { ((k, *to), (k, *from)) };
                    m.set(ti, tj, self.get(ti, tj) + &(factor * self.get(si, sj)));
                }
            }
        }
        Ok(m)
    }

    /// Degree shifts making the matrix a homogeneous map of graded free
    /// modules: `deg a_ij = col[j] − row[i]` for every nonzero entry, with
    /// `min(row) = 0`. `None` if some entry is inhomogeneous, the shifts are
    /// inconsistent, or the nonzero pattern does not connect all rows and
    /// columns.
    pub fn grading(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let n = self.n;
        if self.entries.iter().any(|p| !p.is_homogeneous()) {
            return None;
        }
        let mut row: Vec<Option<i64>> = vec![None; n];
        let mut col: Vec<Option<i64>> = vec![None; n];
        row[0] = Some(0);
        // queue of (is_row, index)
        let mut queue = VecDeque::from([(true, 0usize)]);
        while let Some((is_row, k)) = queue.pop_front() {
            for other in 0..n {
                let (i, j) = if is_row { (k, other) } else { (other, k) };
                let Some(d) = self.get(i, j).degree() else { continue };
                let d = d as i64;
                if is_row {
                    let want = row[i].expect("visited") + d;
                    match col[j] {
                        None => {
                            col[j] = Some(want);
                            queue.push_back((false, j));
                        }
                        Some(c) if c != want => return None,
                        _ => {}
                    }
                } else {
                    let want = col[j].expect("visited") - d;
                    match row[i] {
                        None => {
                            row[i] = Some(want);
                            queue.push_back((true, i));
                        }
                        Some(r) if r != want => return None,
                        _ => {}
                    }
                }
            }
        }
        let row: Vec<i64> = row.into_iter().collect::<Option<_>>()?;
        let col: Vec<i64> = col.into_iter().collect::<Option<_>>()?;
        let base = *row.iter().min().expect("nonempty");
        Some((row.iter().map(|r| r - base).collect(), col.iter().map(|c| c - base).collect()))
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
            vars: self.vars.names().to_vec(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        let vars = VarTable::new(json.vars.iter().cloned())?;
        Self::parse(&vars, &json.rows)
    }
}

impl<F: Field> fmt::Display for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.rows() {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// On-disk matrix format: `{"rows": [[entry, ...], ...], "vars": [name, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: Vec<Vec<String>>,
    pub vars: Vec<String>,
}

/// A pair `(phi, psi)` with `phi · psi = psi · phi = f · I`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixFactorization<F> {
    phi: PolyMatrix<F>,
    psi: PolyMatrix<F>,
    f: Polynomial<F>,
}

impl<F: Field> MatrixFactorization<F> {
    /// Verifies both products symbolically.
    pub fn new(phi: PolyMatrix<F>, psi: PolyMatrix<F>, f: Polynomial<F>) -> Result<Self> {
        if phi.n != psi.n {
            return Err(Error::SizeMismatch(phi.n, psi.n));
        }
        if *phi.vars != *psi.vars || **f.vars() != *phi.vars {
            return Err(Error::VarMismatch);
        }
        for (label, prod) in [("phi*psi", phi.checked_mul(&psi)?), ("psi*phi", psi.checked_mul(&phi)?)] {
            for i in 0..phi.n {
                for j in 0..phi.n {
                    let want = if i == j { f.clone() } else { Polynomial::zero(&phi.vars) };
                    if *prod.get(i, j) != want {
                        return Err(Error::NotFactorization { product: label, row: i, col: j });
                    }
                }
            }
        }
        Ok(MatrixFactorization { phi, psi, f })
    }

    /// `(phi, adj(phi))` as a factorization of `det(phi)`.
    pub fn from_adjugate(phi: PolyMatrix<F>) -> Result<Self> {
        let f = phi.det();
        let psi = phi.adjugate();
        Self::new(phi, psi, f)
    }

    pub fn phi(&self) -> &PolyMatrix<F> {
        &self.phi
    }

    pub fn psi(&self) -> &PolyMatrix<F> {
        &self.psi
    }

    pub fn f(&self) -> &Polynomial<F> {
        &self.f
    }

    pub fn size(&self) -> usize {
        self.phi.n
    }

    /// The factorization of the first syzygy: `(psi, phi)`.
    pub fn syzygy(&self) -> Self {
        MatrixFactorization { phi: self.psi.clone(), psi: self.phi.clone(), f: self.f.clone() }
    }

    /// The factorization of the dual module: `(phiᵗ, psiᵗ)`.
    pub fn dual(&self) -> Self {
        MatrixFactorization { phi: self.phi.transpose(), psi: self.psi.transpose(), f: self.f.clone() }
    }

    /// The `r` in `det(phi) = unit · f^r`, which is the rank of `Coker phi`
    /// over `S/(f)` when `f` is irreducible.
    pub fn rank(&self) -> Result<u32> {
        let mut d = self.phi.det();
        if d.is_zero() {
            return Err(Error::ZeroDeterminant);
        }
        let mut r = 0;
        while let Some(q) = d.exact_div(&self.f)? {
            d = q;
            r += 1;
            if d.is_constant() {
                break;
            }
        }
        if d.is_constant() {
            Ok(r)
        } else {
            Err(Error::NotPowerOfF(self.phi.det().to_string()))
        }
    }
}

pub fn make_mf<F: Field>(phi: PolyMatrix<F>, psi: PolyMatrix<F>, f: Polynomial<F>) -> Result<MatrixFactorization<F>> {
    MatrixFactorization::new(phi, psi, f)
}

/// Tensor product of the 1×1 factorizations `a1 · a2 = f` and `b1 · b2 = g`:
/// `phi = [[a1, −b1], [b2, a2]]`, `psi = [[a2, b1], [−b2, a1]]`, a factorization
/// of `f + g`.
pub fn tensor_1x1<F: Field>(
    a1: &Polynomial<F>,
    a2: &Polynomial<F>,
    b1: &Polynomial<F>,
    b2: &Polynomial<F>,
) -> Result<MatrixFactorization<F>> {
    let all = [a1, a2, b1, b2];
    if all.iter().any(|p| p.is_zero()) {
        return Err(Error::Precondition("tensor factors must be nonzero".into()));
    }
    if all.iter().any(|p| !p.same_ring(a1)) {
        return Err(Error::VarMismatch);
    }
    let f = a1 * a2;
    let g = b1 * b2;
    let phi = PolyMatrix::from_rows(vec![vec![a1.clone(), -b1], vec![b2.clone(), a2.clone()]])?;
    let psi = PolyMatrix::from_rows(vec![vec![a2.clone(), b1.clone()], vec![-b2, a1.clone()]])?;
    MatrixFactorization::new(phi, psi, &f + &g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclofield::{cube_roots_of_minus_one, CycNum};
    use crate::groebner::ideal_equal;
    use crate::field::Rat;
    use proptest::prelude::*;

    type P = Polynomial<CycNum>;
    type M = PolyMatrix<CycNum>;

    fn y() -> Arc<VarTable> {
        VarTable::y4()
    }

    fn p(s: &str) -> P {
        P::parse(s, &y()).unwrap()
    }

    fn m(rows: &[&[&str]]) -> M {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        M::parse(&y(), &rows).unwrap()
    }

    fn phi23() -> M {
        m(&[&["Y1+Y4", "-(Y2^2-Y2*Y3+Y3^2)"], &["Y2+Y3", "Y1^2-Y1*Y4+Y4^2"]])
    }

    fn psi23() -> M {
        m(&[&["Y1^2-Y1*Y4+Y4^2", "Y2^2-Y2*Y3+Y3^2"], &["-(Y2+Y3)", "Y1+Y4"]])
    }

    #[test]
    fn products_and_transpose() {
        let a = phi23();
        assert_eq!(a.checked_mul(&M::identity(&y(), 2)).unwrap(), a);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.checked_mul(&psi23()).unwrap(), M::scalar(&y(), 2, &P::f4()));
        assert!(matches!(a.checked_mul(&M::identity(&y(), 3)), Err(Error::SizeMismatch(2, 3))));
    }

    #[test]
    fn determinants_and_adjugates() {
        assert_eq!(phi23().det(), P::f4());
        assert_eq!(M::identity(&y(), 3).adjugate(), M::identity(&y(), 3));
        assert_eq!(phi23().adjugate(), psi23());
    }

    #[test]
    fn fitting_ideals() {
        let a = phi23();
        let order = MonomialOrder::grevlex();
        let expected = Ideal::new(&y(), vec![p("Y1+Y4"), p("Y2+Y3"), p("Y4^2"), p("Y3^2")], order.clone()).unwrap();
        assert!(ideal_equal(&a.fitting_ideal(1, order.clone()), &expected).unwrap());
        assert_eq!(a.fitting_ideal(0, order.clone()).generators(), &[P::f4()]);
        assert!(a.fitting_ideal(2, order.clone()).is_trivial());
        assert!(a.fitting_ideal(5, order).is_trivial());
    }

    #[test]
    fn factorizations() {
        for a in cube_roots_of_minus_one() {
            for b in cube_roots_of_minus_one() {
                let phi = m(&[&["Y1", "-(Y2^2)"], &["Y2", "Y1^2"]]);
                let _ = phi; // shape only
                let lin = |x: &str, k: &CycNum, z: &str| &p(x) - &p(z).scale(k);
                let quad = |x: &str, k: &CycNum, z: &str| {
                    &(&p(&format!("{x}^2")) + &p(&format!("{x}*{z}")).scale(k)) + &p(&format!("{z}^2")).scale(&k.pow(2))
                };
                let phi = M::from_rows(vec![
                    vec![lin("Y1", &a, "Y4"), -quad("Y2", &b, "Y3")],
                    vec![lin("Y2", &b, "Y3"), quad("Y1", &a, "Y4")],
                ])
                .unwrap();
                let mf = MatrixFactorization::from_adjugate(phi).unwrap();
                assert_eq!(mf.f(), &P::f4());
                assert_eq!(mf.rank().unwrap(), 1);
            }
        }
        let one = M::identity(&y(), 2);
        assert!(make_mf(one.clone(), one.clone(), P::one(&y())).is_ok());
        let f4i = M::scalar(&y(), 2, &P::f4());
        let mf = make_mf(f4i, one, P::f4()).unwrap();
        assert_eq!(mf.rank().unwrap(), 2);
    }

    #[test]
    fn verification_names_the_bad_entry() {
        let mut bad = psi23();
        bad.set(1, 0, p("Y2+Y3"));
        assert_eq!(
            make_mf(phi23(), bad, P::f4()),
            Err(Error::NotFactorization { product: "phi*psi", row: 0, col: 0 })
        );
    }

    #[test]
    fn syzygy_and_dual() {
        let mf = make_mf(phi23(), psi23(), P::f4()).unwrap();
        let syz = mf.syzygy();
        assert_eq!((syz.phi(), syz.psi()), (&psi23(), &phi23()));
        let dual = mf.dual();
        assert!(make_mf(dual.phi().clone(), dual.psi().clone(), P::f4()).is_ok());
        assert!(make_mf(syz.phi().clone(), syz.psi().clone(), P::f4()).is_ok());
    }

    #[test]
    fn rank_errors() {
        let z = M::scalar(&y(), 2, &P::zero(&y()));
        let mf = MatrixFactorization { phi: z.clone(), psi: z, f: P::f4() };
        assert_eq!(mf.rank(), Err(Error::ZeroDeterminant));
        let mf = MatrixFactorization { phi: M::scalar(&y(), 1, &p("Y1")), psi: M::identity(&y(), 1), f: P::f4() };
        assert!(matches!(mf.rank(), Err(Error::NotPowerOfF(_))));
    }

    #[test]
    fn tensor_products() {
        let mf = tensor_1x1(&p("Y1+Y4"), &p("Y1^2-Y1*Y4+Y4^2"), &p("Y2+Y3"), &p("Y2^2-Y2*Y3+Y3^2")).unwrap();
        assert_eq!(mf.f(), &P::f4());
        let mf = tensor_1x1(&p("Y1"), &p("Y1^2"), &p("Y2"), &p("Y2^2")).unwrap();
        assert_eq!(mf.f(), &p("Y1^3+Y2^3"));
        assert!(matches!(tensor_1x1(&p("0"), &p("Y1"), &p("Y2"), &p("Y2")), Err(Error::Precondition(_))));
    }

    #[test]
    fn elementary_operations() {
        let a = phi23();
        let swapped = a.apply_elementary(&ElementaryOp::SwapRows(0, 1)).unwrap();
        assert_eq!(swapped.apply_elementary(&ElementaryOp::SwapRows(0, 1)).unwrap(), a);
        let op = ElementaryOp::AddColMultiple { from: 0, to: 1, factor: p("Y1") };
        assert_eq!(a.apply_elementary(&op).unwrap().det(), a.det());
        assert!(a.apply_elementary(&ElementaryOp::SwapRows(0, 2)).is_err());
        assert!(a.apply_elementary(&ElementaryOp::ScaleRow(0, CycNum::from(0))).is_err());
        let same = ElementaryOp::AddRowMultiple { from: 1, to: 1, factor: p("1") };
        assert!(matches!(a.apply_elementary(&same), Err(Error::InvalidOp(_))));
    }

    #[test]
    fn gradings() {
        assert_eq!(phi23().grading(), Some((vec![0, 0], vec![1, 2])));
        assert_eq!(psi23().grading(), Some((vec![0, 1], vec![2, 2])));
        assert_eq!(m(&[&["Y1", "Y2"], &["Y3", "Y4^2"]]).grading(), None);
        assert_eq!(m(&[&["Y1", "0"], &["0", "Y2"]]).grading(), None);
        assert_eq!(m(&[&["Y1+1"]]).grading(), None);
    }

    #[test]
    fn json_round_trip() {
        let a = phi23();
        let json = serde_json::to_string(&a.to_json()).unwrap();
        assert!(json.starts_with("{\"rows\""));
        let back: MatrixJson = serde_json::from_str(&json).unwrap();
        assert_eq!(M::from_json(&back).unwrap(), a);
    }

    fn arb_entry(vars: Arc<VarTable>) -> impl Strategy<Value = Polynomial<Rat>> {
        prop::collection::vec((0usize..3, -2i64..3), 0..3).prop_map(move |ts| {
            let mut acc = Polynomial::zero(&vars);
            for (v, c) in ts {
                acc = &acc + &Polynomial::var(&vars, v).scale(&Rat::from_i64(c));
            }
            acc
        })
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = PolyMatrix<Rat>> {
        let vars = VarTable::new(["x", "y", "z"]).unwrap();
        prop::collection::vec(arb_entry(vars.clone()), n * n)
            .prop_map(move |es| PolyMatrix::from_fn(&vars, n, |i, j| es[i * n + j].clone()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn adjugate_identity(a in arb_matrix(3)) {
            let prod = a.checked_mul(&a.adjugate()).unwrap();
            prop_assert_eq!(prod, PolyMatrix::scalar(a.vars(), 3, &a.det()));
        }

        #[test]
        fn det_is_multiplicative(a in arb_matrix(2), b in arb_matrix(2)) {
            prop_assert_eq!(a.checked_mul(&b).unwrap().det(), &a.det() * &b.det());
        }
    }
}
