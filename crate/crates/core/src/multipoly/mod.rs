//! Sparse multivariate polynomials over an exact [`Field`].

mod monomial;
mod order;
mod parse;
mod vars;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;


pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use parse::{infer_variables, parse, ParseError};
pub use vars::VarTable;

use crate::error::{Error, Result};
use crate::field::Field;

/// A polynomial in the variables of a shared [`VarTable`].
///
/// Terms are kept sorted by descending [`Monomial`] (lex) order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<F> {
    vars: Arc<VarTable>,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        Polynomial { vars: vars.clone(), terms: Vec::new() }
    }

    pub fn constant(vars: &Arc<VarTable>, c: F) -> Self {
        Self::term(vars, Monomial::one(vars.len()), c)
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::constant(vars, F::one())
    }

    pub fn var(vars: &Arc<VarTable>, i: usize) -> Self {
        Self::term(vars, Monomial::var(vars.len(), i, 1), F::one())
    }

    pub fn var_named(vars: &Arc<VarTable>, name: &str) -> Result<Self> {
        vars.index_of(name)
            .map(|i| Self::var(vars, i))
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn term(vars: &Arc<VarTable>, m: Monomial, c: F) -> Self {
        debug_assert_eq!(m.nvars(), vars.len());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { vars: vars.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms, merging repeated monomials.
    pub fn from_terms(vars: &Arc<VarTable>, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut acc: BTreeMap<Monomial, F> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), vars.len());
            match acc.get_mut(&m) {
                Some(v) => *v = v.clone() + c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_sorted_map(vars, acc)
    }

    fn from_sorted_map(vars: &Arc<VarTable>, acc: BTreeMap<Monomial, F>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { vars: vars.clone(), terms }
    }

    /// The `f_n = Y1^3 + ... + Yn^3` over the given table (every variable).
    pub fn fermat_cubic(vars: &Arc<VarTable>) -> Self {
        Self::from_terms(vars, (0..vars.len()).map(|i| (Monomial::var(vars.len(), i, 3), F::one())))
    }

    /// `f4 = Y1^3 + Y2^3 + Y3^3 + Y4^3`.
    pub fn f4() -> Self {
        Self::fermat_cubic(&VarTable::y4())
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<F> {
        match self.terms.as_slice() {
            [] => Some(F::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| F::zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::VarMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, |c| c.clone()))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, |c| -c.clone()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        let mut acc: BTreeMap<Monomial, F> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.clone() * cb.clone();
                match acc.get_mut(&m) {
                    Some(v) => *v = v.clone() + c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(Self::from_sorted_map(&self.vars, acc))
    }

    /// `self + map(other)` by merging the two sorted term lists.
    fn merge(&self, other: &Self, map: impl Fn(&F) -> F) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), map(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.clone() + map(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), map(c))));
        Polynomial { vars: self.vars.clone(), terms: out }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect(),
        }
    }

    /// `self · c · m`; multiplication by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(t, x)| (t.mul(m), x.clone() * c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&F) -> F) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Polynomial { vars: self.vars.clone(), terms }
    }

    /// Homomorphic evaluation: each variable named in `assignments` is
    /// replaced by its polynomial, the others are kept. All assignment values
    /// must live over the same table; variables of `self` that are not
    /// assigned are looked up by name in that table.
    pub fn substitute(&self, assignments: &HashMap<String, Polynomial<F>>) -> Result<Self> {
        let target = match assignments.values().next() {
            Some(p) => p.vars.clone(),
            None => return Ok(self.clone()),
        };
        if assignments.values().any(|p| !Arc::ptr_eq(&p.vars, &target) && *p.vars != *target) {
            return Err(Error::VarMismatch);
        }
        let images = (0..self.nvars())
            .map(|i| {
                let name = self.vars.name(i);
                match assignments.get(name) {
                    Some(p) => Ok(p.clone()),
                    None => Polynomial::var_named(&target, name),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.eval_with(&target, &images))
    }

    /// Rewrites `self` over `target`, matching variables by name. Only the
    /// variables that actually occur need to exist in `target`.
    pub fn embed(&self, target: &Arc<VarTable>) -> Result<Self> {
        if self.vars == *target {
            return Ok(Polynomial { vars: target.clone(), terms: self.terms.clone() });
        }
        let used: Vec<bool> =
            (0..self.nvars()).map(|i| self.terms.iter().any(|(m, _)| m.exponent(i) > 0)).collect();
        let map = (0..self.nvars())
            .map(|i| {
                let name = self.vars.name(i);
                match target.index_of(name) {
                    Some(k) => Ok(Some(k)),
                    None if used[i] => Err(Error::UnknownVariable(name.to_string())),
                    None => Ok(None),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let n = target.len();
        Ok(Self::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0u16; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    if let Some(k) = map[i] {
                        e[k] += x;
                    }
                }
                (Monomial::from_exponents(&e), c.clone())
            }),
        ))
    }

    fn eval_with(&self, target: &Arc<VarTable>, images: &[Polynomial<F>]) -> Self {
        let mut powers: HashMap<(usize, u16), Polynomial<F>> = HashMap::new();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers.entry((i, e)).or_insert_with(|| images[i].pow(e as u32));
                t = &t * p;
            }
            out = &out + &t;
        }
        out
    }

    /// Coefficients of `self` by powers of variable `v`:
    /// `self = Σ result[k] · v^k`, each `result[k]` free of `v`.
    pub fn coeff_decompose(&self, v: usize) -> Vec<Polynomial<F>> {
        let top = self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0) as usize;
        let mut buckets: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); top + 1];
        for (m, c) in &self.terms {
            let k = m.exponent(v);
            let mut e = m.exponents().to_vec();
            e[v] = 0;
            buckets[k as usize].push((Monomial::from_exponents(&e), c.clone()));
        }
        buckets.into_iter().map(|ts| Self::from_terms(&self.vars, ts)).collect()
    }

    /// Groups terms by their exponents on the `mask` variables. Returns pairs
    /// `(monomial in the mask variables, coefficient polynomial free of them)`.
    pub fn coefficients_wrt(&self, mask: &[bool]) -> Vec<(Monomial, Polynomial<F>)> {
        let mut groups: BTreeMap<Monomial, Vec<(Monomial, F)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(mask);
            groups.entry(inside).or_default().push((outside, c.clone()));
        }
        groups.into_iter().rev().map(|(k, ts)| (k, Self::from_terms(&self.vars, ts))).collect()
    }

    /// Leading term under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<&(Monomial, F)> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    /// `Some(r)` with `self = q · r` when `q` divides `self`, else `None`.
    pub fn exact_div(&self, q: &Self) -> Result<Option<Self>> {
        self.check_ring(q)?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let order = MonomialOrder::grevlex();
        let (lm, lc) = q.leading_term(&order).cloned().expect("nonzero");
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.leading_term(&order).cloned() {
            let Some(shift) = m.div(&lm) else {
                return Ok(None);
            };
            let k = c * lc_inv.clone();
            rest = rest.merge(&q.mul_term(&shift, &k), |x| -x.clone());
            quotient.push((shift, k));
        }
        Ok(Some(Self::from_terms(&self.vars, quotient)))
    }

    /// Canonical text with terms sorted descending by `order`.
    pub fn to_string_with(&self, order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<&(Monomial, F)> = self.terms.iter().collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let (negative, abs) = c.split_sign();
            if negative {
                out.push('-');
            } else if k > 0 {
                out.push('+');
            }
            let mono = self.monomial_string(m);
            match (m.is_one(), abs.is_one()) {
                (true, _) => out.push_str(&abs.to_string()),
                (false, true) => out.push_str(&mono),
                (false, false) => {
                    out.push_str(&abs.to_string());
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }

    fn monomial_string(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars.name(i).to_string()),
                _ => parts.push(format!("{}^{}", self.vars.name(i), e)),
            }
        }
        parts.join("*")
    }

    pub fn parse(text: &str, vars: &Arc<VarTable>) -> std::result::Result<Self, ParseError> {
        parse(text, vars)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&MonomialOrder::grevlex()))
    }
}

// Operator forms panic on mismatched variable tables, the checked_* methods
// report it instead.
impl<'a, F: Field> Add<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        self.checked_add(rhs).expect("polynomials over different variable tables")
    }
}

impl<'a, F: Field> Sub<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        self.checked_sub(rhs).expect("polynomials over different variable tables")
    }
}

impl<'a, F: Field> Mul<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        self.checked_mul(rhs).expect("polynomials over different variable tables")
    }
}

impl<F: Field> Add for Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Polynomial<F>) -> Polynomial<F> {
        &self + &rhs
    }
}

impl<F: Field> Sub for Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Polynomial<F>) -> Polynomial<F> {
        &self - &rhs
    }
}

impl<F: Field> Mul for Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Polynomial<F>) -> Polynomial<F> {
        &self * &rhs
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclofield::{cube_roots_of_minus_one, CycNum};
    use crate::field::Rat;
    use proptest::prelude::*;

    type P = Polynomial<CycNum>;

    fn y() -> Arc<VarTable> {
        VarTable::y4()
    }

    fn p(s: &str) -> P {
        P::parse(s, &y()).unwrap()
    }

    #[test]
    fn sum_of_cubes_factorization() {
        assert_eq!(p("Y1+Y4") * p("Y1^2-Y1*Y4+Y4^2"), p("Y1^3+Y4^3"));
        assert!((p("Y1+Y2") * P::zero(&y())).is_zero());
        for a in cube_roots_of_minus_one() {
            let lin = &p("Y1") - &p("Y4").scale(&a);
            let quad = &(&p("Y1^2") + &p("Y1*Y4").scale(&a)) + &p("Y4^2").scale(&a.pow(2));
            assert_eq!(&lin * &quad, p("Y1^3+Y4^3"));
        }
    }

    #[test]
    fn substitution() {
        let f4 = P::f4();
        let mut asg = HashMap::new();
        asg.insert("Y1".to_string(), -p("Y2"));
        asg.insert("Y3".to_string(), -p("Y4"));
        assert!(f4.substitute(&asg).unwrap().is_zero());
        assert_eq!(f4.substitute(&HashMap::new()).unwrap(), f4);

        let abcd = VarTable::new(["Y1", "Y2", "Y3", "Y4", "a", "b", "c", "d"]).unwrap();
        let q = P::parse("Y1^2+a*Y1*Y4+a^2*Y4^2", &abcd).unwrap();
        let mut asg = HashMap::new();
        for (k, v) in [("Y1", "b*c*d"), ("Y2", "b*d"), ("Y3", "d"), ("Y4", "1")] {
            asg.insert(k.to_string(), P::parse(v, &abcd).unwrap());
        }
        let expected = P::parse("b^2*c^2*d^2+a*b*c*d+a^2", &abcd).unwrap();
        assert_eq!(q.substitute(&asg).unwrap(), expected);
    }

    #[test]
    fn coefficient_decomposition() {
        let parts = p("Y1^2*Y2+Y2+Y3").coeff_decompose(1);
        assert_eq!(parts, vec![p("Y3"), p("Y1^2+1")]);
        let parts = P::f4().coeff_decompose(0);
        assert_eq!(parts, vec![p("Y2^3+Y3^3+Y4^3"), p("0"), p("0"), p("1")]);
        assert_eq!(P::zero(&y()).coeff_decompose(2), vec![p("0")]);
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("Y1^3+Y4^3").exact_div(&p("Y1+Y4")).unwrap(), Some(p("Y1^2-Y1*Y4+Y4^2")));
        let f4 = P::f4();
        assert_eq!(f4.pow(2).exact_div(&f4).unwrap(), Some(f4.clone()));
        assert_eq!(p("Y1").exact_div(&p("Y2")).unwrap(), None);
        assert_eq!(p("Y1").exact_div(&P::zero(&y())), Err(Error::DivisionByZero));
    }

    #[test]
    fn degrees() {
        let f4 = P::f4();
        assert!(f4.is_homogeneous());
        assert_eq!(f4.degree(), Some(3));
        assert!(!p("Y1+Y2^2").is_homogeneous());
        assert_eq!(p("5").degree(), Some(0));
        assert_eq!(P::zero(&y()).degree(), None);
    }

    #[test]
    fn mismatched_tables_are_reported() {
        let other = VarTable::new(["x"]).unwrap();
        let q = P::var(&other, 0);
        assert_eq!(p("Y1").checked_add(&q), Err(Error::VarMismatch));
        assert_eq!(p("Y1").checked_mul(&q), Err(Error::VarMismatch));
    }

    #[test]
    fn printing_is_ordered() {
        let q = p("Y4^2+Y1*Y2-3*Y3+(1/2-e)");
        assert_eq!(q.to_string(), "Y1*Y2+Y4^2-3*Y3+(1/2-e)");
        assert_eq!(q.to_string_with(&MonomialOrder::lex()), "Y1*Y2-3*Y3+Y4^2+(1/2-e)");
        assert_eq!(p("Y1-e*Y4").to_string(), "Y1-e*Y4");
        assert_eq!(p("-(1/2+e)*Y1").to_string(), "-(1/2+e)*Y1");
        assert_eq!(p("0").to_string(), "0");
    }

    #[test]
    fn generic_over_rationals() {
        let t = VarTable::new(["x", "y"]).unwrap();
        let a = Polynomial::<Rat>::parse("x^2-1/4*y", &t).unwrap();
        let b = Polynomial::<Rat>::parse("x+y", &t).unwrap();
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b).unwrap(), Some(a));
        assert!(Polynomial::<Rat>::parse("e*x", &t).is_err());
    }

    pub(crate) fn arb_poly() -> impl Strategy<Value = P> {
        let term = (prop::collection::vec(0u16..3, 4), -3i64..4, -2i64..3);
        prop::collection::vec(term, 0..5).prop_map(|ts| {
            P::from_terms(
                &VarTable::y4(),
                ts.into_iter().map(|(e, re, im)| (Monomial::from_exponents(&e), CycNum::from_ints(re, im))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn decomposition_reassembles(a in arb_poly(), v in 0usize..4) {
            let parts = a.coeff_decompose(v);
            let x = P::var(&VarTable::y4(), v);
            let mut sum = P::zero(&VarTable::y4());
            for (k, part) in parts.iter().enumerate() {
                prop_assert_eq!(part.coeff_decompose(v).len(), 1);
                sum = &sum + &(part * &x.pow(k as u32));
            }
            prop_assert_eq!(sum, a);
        }

        #[test]
        fn exact_division_recovers_factor(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), Some(a));
        }

        #[test]
        fn print_parse_round_trip(a in arb_poly()) {
            for order in [MonomialOrder::grevlex(), MonomialOrder::lex()] {
                let text = a.to_string_with(&order);
                prop_assert_eq!(P::parse(&text, &VarTable::y4()).unwrap(), a.clone());
            }
        }
    }
}
