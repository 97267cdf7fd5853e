use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::Monomial;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum OrderKind {
    /// Pure lexicographic, SINGULAR's `lp`.
    Lex,
    /// Graded reverse lexicographic, SINGULAR's `dp`.
    #[default]
    GrevLex,
}

/// A monomial order together with a variable priority list.
///
/// Without an explicit priority the variable table order is used, so
/// variable 0 is the largest.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Option<Arc<[usize]>>,
}

impl MonomialOrder {
    pub fn lex() -> Self {
        MonomialOrder { kind: OrderKind::Lex, priority: None }
    }

    pub fn grevlex() -> Self {
        MonomialOrder { kind: OrderKind::GrevLex, priority: None }
    }

    /// `priority[k]` is the index of the k-th largest variable. It must be a
    /// permutation of `0..nvars` for the polynomials it is used with.
    pub fn with_priority(mut self, priority: Vec<usize>) -> Self {
        self.priority = Some(priority.into());
        self
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> Option<&[usize]> {
        self.priority.as_deref()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match (&self.priority, self.kind) {
            (None, OrderKind::Lex) => ea.cmp(eb),
            (None, OrderKind::GrevLex) => a.degree().cmp(&b.degree()).then_with(|| {
                for i in (0..ea.len()).rev() {
                    if ea[i] != eb[i] {
                        return eb[i].cmp(&ea[i]);
                    }
                }
                Ordering::Equal
            }),
            (Some(p), OrderKind::Lex) => {
                for &i in p.iter() {
                    if ea[i] != eb[i] {
                        return ea[i].cmp(&eb[i]);
                    }
                }
                Ordering::Equal
            }
            (Some(p), OrderKind::GrevLex) => a.degree().cmp(&b.degree()).then_with(|| {
                for &i in p.iter().rev() {
                    if ea[i] != eb[i] {
                        return eb[i].cmp(&ea[i]);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OrderKind::Lex => write!(f, "lex"),
            OrderKind::GrevLex => write!(f, "grevlex"),
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lex" | "lp" => Ok(MonomialOrder::lex()),
            "grevlex" | "dp" => Ok(MonomialOrder::grevlex()),
            other => Err(format!("unknown monomial order `{other}`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn lex_first_variable_dominates() {
        let o = MonomialOrder::lex();
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 2]), &m(&[1, 1])), Ordering::Greater);
    }

    #[test]
    fn grevlex_tie_break() {
        let o = MonomialOrder::grevlex();
        // same degree: x^2 > xy > y^2, and xz < y^2 since z is smallest
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn priority_reorders_variables() {
        let o = MonomialOrder::lex().with_priority(vec![1, 0]);
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Less);
        let g = MonomialOrder::grevlex().with_priority(vec![1, 0]);
        assert_eq!(g.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Less);
    }
}
