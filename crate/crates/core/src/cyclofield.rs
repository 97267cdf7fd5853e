//! Exact arithmetic in Q(ε), ε a primitive cube root of unity.
//!
//! Elements are stored as `re + im·ε` over the basis `{1, ε}` and multiplied
//! with the rewrite rule `ε² = −1 − ε`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::field::{Field, Rat};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycNum {
    re: Rat,
    im: Rat,
}

impl CycNum {
    pub fn new(re: Rat, im: Rat) -> Self {
        CycNum { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        CycNum::new(Rat::from_integer(BigInt::from(re)), Rat::from_integer(BigInt::from(im)))
    }

    /// ε itself.
    pub fn eps() -> Self {
        CycNum::from_ints(0, 1)
    }

    /// ε² = −1 − ε.
    pub fn eps2() -> Self {
        CycNum::from_ints(-1, -1)
    }

    pub fn re(&self) -> &Rat {
        &self.re
    }

    pub fn im(&self) -> &Rat {
        &self.im
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    /// Image under the Galois automorphism ε ↦ ε².
    pub fn conj(&self) -> Self {
        CycNum::new(&self.re - &self.im, -self.im.clone())
    }

    /// Field norm `x · conj(x) = re² − re·im + im²`, a non-negative rational.
    pub fn norm(&self) -> Rat {
        &self.re * &self.re - &self.re * &self.im + &self.im * &self.im
    }
}

/// The three cube roots of −1 in the fixed order −1, −ε, −ε².
pub fn cube_roots_of_minus_one() -> [CycNum; 3] {
    [CycNum::from_ints(-1, 0), CycNum::from_ints(0, -1), CycNum::from_ints(1, 1)]
}

/// The primitive cube roots of unity in the order ε, ε².
pub fn primitive_cube_roots_of_unity() -> [CycNum; 2] {
    [CycNum::eps(), CycNum::eps2()]
}

impl Zero for CycNum {
    fn zero() -> Self {
        CycNum::new(Rat::zero(), Rat::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for CycNum {
    fn one() -> Self {
        CycNum::new(Rat::one(), Rat::zero())
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        CycNum::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        CycNum::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        CycNum::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        CycNum::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::new(-self.re, -self.im)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        // (a + bε)(c + dε) = ac + (ad + bc)ε + bdε², ε² = −1 − ε
        if self.im.is_zero() {
            return CycNum::new(&self.re * &rhs.re, &self.re * &rhs.im);
        }
        if rhs.im.is_zero() {
            return CycNum::new(&self.re * &rhs.re, &self.im * &rhs.re);
        }
        let ac = &self.re * &rhs.re;
        let bd = &self.im * &rhs.im;
        let cross = &self.re * &rhs.im + &self.im * &rhs.re;
        CycNum::new(&ac - &bd, cross - bd)
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        &self * &rhs
    }
}

impl Field for CycNum {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(CycNum::new(c.re / &n, c.im / n))
    }

    fn from_rational(r: Rat) -> Self {
        CycNum::new(r, Rat::zero())
    }

    fn generator() -> Option<Self> {
        Some(CycNum::eps())
    }

    fn split_sign(&self) -> (bool, Self) {
        let negative = if self.re.is_zero() { self.im.is_negative() } else { self.re.is_negative() };
        if negative {
            (true, -self.clone())
        } else {
            (false, self.clone())
        }
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::from_ints(n, 0)
    }
}

impl From<Rat> for CycNum {
    fn from(r: Rat) -> Self {
        CycNum::from_rational(r)
    }
}

/// Text form: `3/2`, `e`, `-e`, `2*e`, `(-1/2+3*e)`.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn eps_part(im: &Rat) -> String {
            if im.is_one() {
                "e".to_string()
            } else if *im == -Rat::one() {
                "-e".to_string()
            } else {
                format!("{im}*e")
            }
        }
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", eps_part(&self.im)),
            (false, false) => {
                let im = eps_part(&self.im);
                if im.starts_with('-') {
                    write!(f, "({}{})", self.re, im)
                } else {
                    write!(f, "({}+{})", self.re, im)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn eps_squared_rewrites() {
        let e = CycNum::eps();
        assert_eq!(&e * &e, CycNum::from_ints(-1, -1));
        assert_eq!((-e.clone()).pow(3), CycNum::from(-1));
        assert_eq!(e.pow(3), CycNum::one());
        let x = CycNum::from_ints(1, 1);
        assert!((x.clone() + (-x)).is_zero());
    }

    #[test]
    fn inverses() {
        assert_eq!(CycNum::eps().inv().unwrap(), CycNum::eps2());
        assert_eq!(CycNum::from(2).inv().unwrap(), CycNum::new(rat(1, 2), Rat::zero()));
        let x = CycNum::from_ints(1, 2);
        // norm(1 + 2ε) = 1 − 2 + 4 = 3, conj = −1 − 2ε
        assert_eq!(x.norm(), rat(3, 1));
        let inv = x.inv().unwrap();
        assert_eq!(inv, CycNum::new(rat(-1, 3), rat(-2, 3)));
        assert_eq!(&x * &inv, CycNum::one());
        assert!(CycNum::zero().inv().is_none());
    }

    #[test]
    fn roots_of_minus_one() {
        let roots = cube_roots_of_minus_one();
        assert_eq!(roots[2], CycNum::from_ints(1, 1));
        for r in &roots {
            assert_eq!(r.pow(3), CycNum::from(-1));
        }
        for i in 0..3 {
            for j in 0..i {
                assert_ne!(roots[i], roots[j]);
            }
        }
        // closed under multiplication by primitive cube roots of unity
        for w in primitive_cube_roots_of_unity() {
            for r in &roots {
                assert!(roots.contains(&(r * &w)));
            }
        }
    }

    #[test]
    fn primitive_roots() {
        let ws = primitive_cube_roots_of_unity();
        assert_eq!(ws[1], CycNum::from_ints(-1, -1));
        for w in ws {
            assert_eq!(w.pow(3), CycNum::one());
            assert_ne!(w, CycNum::one());
            assert!((&(&w * &w) + &w + CycNum::one()).is_zero());
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(CycNum::from(3).to_string(), "3");
        assert_eq!(CycNum::eps().to_string(), "e");
        assert_eq!(CycNum::from_ints(0, -1).to_string(), "-e");
        assert_eq!(CycNum::new(rat(-1, 2), rat(3, 1)).to_string(), "(-1/2+3*e)");
        assert_eq!(CycNum::from_ints(1, -1).to_string(), "(1-e)");
        assert_eq!(CycNum::from_ints(0, 2).to_string(), "2*e");
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_cyc() -> impl Strategy<Value = CycNum> {
        (arb_rat(), arb_rat()).prop_map(|(a, b)| CycNum::new(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn inverse_multiplies_to_one(x in arb_cyc()) {
            prop_assume!(!x.is_zero());
            prop_assert_eq!(&x * &x.inv().unwrap(), CycNum::one());
        }

        #[test]
        fn subtraction_undoes_addition(a in arb_cyc(), b in arb_cyc()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn multiplication_distributes(a in arb_cyc(), b in arb_cyc(), c in arb_cyc()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }
    }
}
