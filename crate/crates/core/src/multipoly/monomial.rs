/// Exponent vector over a [`VarTable`](super::VarTable).
///
/// The derived `Ord` is lexicographic with variable 0 most significant; it is
/// the canonical storage order of polynomial terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial(Box<[u16]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn var(nvars: usize, i: usize, exp: u16) -> Self {
        let mut e = vec![0; nvars];
        e[i] = exp;
        Monomial(e.into_boxed_slice())
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(exps.into())
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Splits into the part supported on `mask` variables and the rest.
    pub(crate) fn split(&self, mask: &[bool]) -> (Monomial, Monomial) {
        let inside = self.0.iter().zip(mask).map(|(&e, &m)| if m { e } else { 0 }).collect();
        let outside = self.0.iter().zip(mask).map(|(&e, &m)| if m { 0 } else { e }).collect();
        (Monomial(inside), Monomial(outside))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exponents(&[2, 0, 1]);
        let b = Monomial::from_exponents(&[1, 3, 0]);
        assert_eq!(a.lcm(&b).exponents(), &[2, 3, 1]);
        assert!(!a.divides(&b));
        assert!(Monomial::from_exponents(&[1, 0, 1]).divides(&a));
        assert_eq!(a.div(&Monomial::from_exponents(&[1, 0, 0])).unwrap().exponents(), &[1, 0, 1]);
        assert!(a.div(&b).is_none());
        assert!(Monomial::from_exponents(&[1, 0, 0]).is_coprime(&Monomial::from_exponents(&[0, 2, 2])));
        assert_eq!(a.mul(&b).degree(), 7);
    }
}
