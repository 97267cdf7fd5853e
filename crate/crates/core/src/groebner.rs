//! Buchberger's algorithm, normal forms and ideal predicates.
//!
//! Pairs are pruned with the Gebauer–Möller installation (which subsumes the
//! coprime-leading-monomial and chain criteria) and selected by sugar degree,
//! ties broken by the monomial order and then by insertion index so the
//! output never depends on hashing or scheduling.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::multipoly::{Monomial, MonomialOrder, Polynomial, VarTable};

/// Terms sorted descending under the active order, leading term first.
type Terms<F> = Vec<(Monomial, F)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal<F> {
    vars: Arc<VarTable>,
    generators: Vec<Polynomial<F>>,
    order: MonomialOrder,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped; all generators must share `vars`.
    pub fn new(vars: &Arc<VarTable>, generators: Vec<Polynomial<F>>, order: MonomialOrder) -> Result<Self> {
        if generators.iter().any(|g| **g.vars() != **vars) {
            return Err(Error::VarMismatch);
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { vars: vars.clone(), generators, order })
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Sum of ideals.
    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        if *self.vars != *other.vars {
            return Err(Error::VarMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.vars, gens, self.order.clone())
    }

    pub fn groebner_basis(&self) -> GroebnerBasis<F> {
        buchberger(self)
    }

    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool> {
        ideal_member(p, self)
    }

    pub fn is_trivial(&self) -> bool {
        ideal_is_trivial(self)
    }
}

/// A reduced Gröbner basis: monic elements, sorted ascending by leading
/// monomial, none reducible by the others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<F> {
    vars: Arc<VarTable>,
    elements: Vec<Polynomial<F>>,
    order: MonomialOrder,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True when the basis is `{1}`.
    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_one()
    }

    pub fn reduce(&self, p: &Polynomial<F>) -> Polynomial<F> {
        let basis: Vec<Terms<F>> = self.elements.iter().map(|g| sorted_terms(g, &self.order)).collect();
        let refs: Vec<&Terms<F>> = basis.iter().collect();
        let nf = reduce_full(sorted_terms(p, &self.order), &refs, &self.order);
        Polynomial::from_terms(p.vars(), nf)
    }

    pub fn contains(&self, p: &Polynomial<F>) -> bool {
        self.reduce(p).is_zero()
    }

    /// Canonical text, one element per line.
    pub fn to_lines(&self) -> Vec<String> {
        self.elements.iter().map(|g| g.to_string_with(&self.order)).collect()
    }
}

fn sorted_terms<F: Field>(p: &Polynomial<F>, order: &MonomialOrder) -> Terms<F> {
    let mut t = p.terms().to_vec();
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

fn make_monic<F: Field>(mut t: Terms<F>) -> Terms<F> {
    if let Some((_, lc)) = t.first() {
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero leading coefficient");
            for (_, c) in t.iter_mut() {
                *c = c.clone() * inv.clone();
            }
        }
    }
    t
}

/// `p − c · shift · g`, with `p` and `g` sorted under `order`.
fn sub_scaled<F: Field>(p: &[(Monomial, F)], g: &[(Monomial, F)], shift: &Monomial, c: &F, order: &MonomialOrder) -> Terms<F> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut gi = g.iter().map(|(m, x)| (m.mul(shift), x.clone() * c.clone())).peekable();
    while i < p.len() {
        let Some((gm, _)) = gi.peek() else { break };
        match order.cmp(&p[i].0, gm) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (m, x) = gi.next().expect("peeked");
                out.push((m, -x));
            }
            Ordering::Equal => {
                let (m, x) = gi.next().expect("peeked");
                let v = p[i].1.clone() - x;
                if !v.is_zero() {
                    out.push((m, v));
                }
                i += 1;
            }
        }
    }
    out.extend_from_slice(&p[i..]);
    out.extend(gi.map(|(m, x)| (m, -x)));
    out
}

/// Full reduction of `p` against monic, sorted `basis`.
fn reduce_full<F: Field>(mut p: Terms<F>, basis: &[&Terms<F>], order: &MonomialOrder) -> Terms<F> {
    let mut rem: Terms<F> = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let (m, c) = &p[start];
        let divisor = basis.iter().find(|g| g[0].0.divides(m));
        match divisor {
            Some(g) => {
                let shift = m.div(&g[0].0).expect("divides");
                let c = c.clone();
                p = sub_scaled(&p[start..], g, &shift, &c, order);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    rem
}

/// `lcm/LT(f) · f − lcm/LT(g) · g` for the leading monomials of `f` and `g`;
/// zero if either is zero.
pub fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, order: &MonomialOrder) -> Polynomial<F> {
    let (Some((mf, cf)), Some((mg, cg))) = (f.leading_term(order), g.leading_term(order)) else {
        return Polynomial::zero(f.vars());
    };
    let l = mf.lcm(mg);
    let lhs = f.mul_term(&l.div(mf).expect("lcm"), &cf.inv().expect("nonzero"));
    let rhs = g.mul_term(&l.div(mg).expect("lcm"), &cg.inv().expect("nonzero"));
    &lhs - &rhs
}

/// Normal form of `p` with respect to the (not necessarily Gröbner) list `g`.
/// The remainder has no term divisible by a leading term of `g`.
pub fn normal_form<F: Field>(p: &Polynomial<F>, g: &[Polynomial<F>], order: &MonomialOrder) -> Polynomial<F> {
    let basis: Vec<Terms<F>> = g.iter().filter(|q| !q.is_zero()).map(|q| make_monic(sorted_terms(q, order))).collect();
    let refs: Vec<&Terms<F>> = basis.iter().collect();
    Polynomial::from_terms(p.vars(), reduce_full(sorted_terms(p, order), &refs, order))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Builder<'a, F> {
    order: &'a MonomialOrder,
    polys: Vec<Terms<F>>,
    sugar: Vec<u32>,
    basis: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<'a, F: Field> Builder<'a, F> {
    fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    fn reduce(&self, p: Terms<F>) -> Terms<F> {
        let refs: Vec<&Terms<F>> = self.basis.iter().map(|&i| &self.polys[i]).collect();
        reduce_full(p, &refs, self.order)
    }

    /// Installs a new monic element `h` (Gebauer–Möller update).
    fn install(&mut self, h: Terms<F>, sugar: u32) {
        let k = self.polys.len();
        self.polys.push(h);
        self.sugar.push(sugar);
        let mh = self.lm(k).clone();

        let mut candidates: Vec<usize> = self.basis.clone();
        let mut accepted: Vec<usize> = Vec::new();
        while let Some(g) = candidates.pop() {
            let mg = self.lm(g);
            let lcm = mh.lcm(mg);
            let coprime = mh.is_coprime(mg);
            let dominated = |x: &usize| lcm_divides(&mh.lcm(self.lm(*x)), &lcm);
            if coprime || (!candidates.iter().any(dominated) && !accepted.iter().any(dominated)) {
                accepted.push(g);
            }
        }
        let fresh: Vec<Pair> = accepted
            .into_iter()
            .filter(|&g| !mh.is_coprime(self.lm(g)))
            .map(|g| {
                let lcm = mh.lcm(self.lm(g));
                let sugar = pair_sugar(&lcm, self.lm(g), self.sugar[g], &mh, sugar);
                Pair { i: g, j: k, lcm, sugar }
            })
            .collect();

        let old = std::mem::take(&mut self.pairs);
        self.pairs = old
            .into_iter()
            .filter(|p| {
                !mh.divides(&p.lcm) || mh.lcm(self.lm(p.i)) == p.lcm || mh.lcm(self.lm(p.j)) == p.lcm
            })
            .collect();
        self.pairs.extend(fresh);

        let keep: Vec<usize> = self.basis.iter().copied().filter(|&g| !mh.divides(self.lm(g))).collect();
        self.basis = keep;
        self.basis.push(k);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.sugar
                .cmp(&pb.sugar)
                .then_with(|| order.cmp(&pa.lcm, &pb.lcm))
                .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn s_polynomial(&self, pair: &Pair) -> Terms<F> {
        let (a, b) = (&self.polys[pair.i], &self.polys[pair.j]);
        let sa = pair.lcm.div(&a[0].0).expect("lcm");
        let sb = pair.lcm.div(&b[0].0).expect("lcm");
        let left: Terms<F> = a[1..].iter().map(|(m, c)| (m.mul(&sa), c.clone())).collect();
        sub_scaled(&left, &b[1..], &sb, &F::one(), self.order)
    }
}

fn lcm_divides(a: &Monomial, b: &Monomial) -> bool {
    a.divides(b)
}

fn pair_sugar(lcm: &Monomial, ma: &Monomial, sa: u32, mb: &Monomial, sb: u32) -> u32 {
    let d = lcm.degree();
    (sa + d - ma.degree()).max(sb + d - mb.degree())
}

fn poly_sugar<F>(t: &Terms<F>) -> u32 {
    t.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
}

fn trivial_basis<F: Field>(vars: &Arc<VarTable>, order: &MonomialOrder) -> GroebnerBasis<F> {
    GroebnerBasis { vars: vars.clone(), elements: vec![Polynomial::one(vars)], order: order.clone() }
}

/// Reduced Gröbner basis of `ideal` under its order.
pub fn buchberger<F: Field>(ideal: &Ideal<F>) -> GroebnerBasis<F> {
    let order = &ideal.order;
    let mut b = Builder { order, polys: Vec::new(), sugar: Vec::new(), basis: Vec::new(), pairs: Vec::new() };

    let mut inputs: Vec<Terms<F>> = ideal.generators.iter().map(|g| sorted_terms(g, order)).collect();
    inputs.sort_by(|x, y| order.cmp(&x[0].0, &y[0].0).then_with(|| x.len().cmp(&y.len())));
    for f in inputs {
        let sugar = poly_sugar(&f);
        let h = b.reduce(f);
        if h.is_empty() {
            continue;
        }
        if h[0].0.is_one() {
            return trivial_basis(&ideal.vars, order);
        }
        b.install(make_monic(h), sugar);
    }

    while let Some(pair) = b.next_pair() {
        let s = b.s_polynomial(&pair);
        let h = b.reduce(s);
        if h.is_empty() {
            continue;
        }
        if h[0].0.is_one() {
            return trivial_basis(&ideal.vars, order);
        }
        b.install(make_monic(h), pair.sugar);
    }

    // interreduce the minimal basis
    let mut minimal: Vec<Terms<F>> = b.basis.iter().map(|&i| b.polys[i].clone()).collect();
    minimal.sort_by(|x, y| order.cmp(&x[0].0, &y[0].0));
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Terms<F>> = minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, t)| t).collect();
        let head = minimal[k][0].clone();
        let tail = reduce_full(minimal[k][1..].to_vec(), &others, order);
        let mut t = vec![head];
        t.extend(tail);
        reduced.push(t);
    }
    let elements = reduced.into_iter().map(|t| Polynomial::from_terms(&ideal.vars, t)).collect();
    GroebnerBasis { vars: ideal.vars.clone(), elements, order: order.clone() }
}

pub fn ideal_member<F: Field>(p: &Polynomial<F>, ideal: &Ideal<F>) -> Result<bool> {
    if **p.vars() != *ideal.vars {
        return Err(Error::VarMismatch);
    }
    Ok(buchberger(ideal).contains(p))
}

/// Equality of ideals: their reduced bases under the order of `a` coincide.
pub fn ideal_equal<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<bool> {
    if *a.vars != *b.vars {
        return Err(Error::VarMismatch);
    }
    let b = Ideal { order: a.order.clone(), ..b.clone() };
    Ok(buchberger(a).elements == buchberger(&b).elements)
}

pub fn ideal_is_trivial<F: Field>(ideal: &Ideal<F>) -> bool {
    buchberger(ideal).is_trivial()
}
