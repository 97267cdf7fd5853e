//! Scalar abstraction shared by polynomials, linear algebra and Gröbner bases.
//!
//! Everything above this module is generic over [`Field`]. Only exact fields
//! are supported: Buchberger's algorithm and the equivalence test rely on
//! exact zero tests, so floating point types deliberately do not implement it.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number, always stored reduced with a positive
/// denominator.
pub type Rat = BigRational;

/// An exact field of characteristic zero.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Image of a rational number.
    fn from_rational(r: Rat) -> Self;

    /// The adjoined generator written `e` in the text grammar, if any.
    fn generator() -> Option<Self> {
        None
    }

    /// Splits off a sign for printing: returns `(true, -self)` when the value
    /// reads as negative (its first nonzero component is negative).
    fn split_sign(&self) -> (bool, Self);

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rat::from_integer(BigInt::from(n)))
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|o| self.clone() * o)
    }

    fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            k >>= 1;
            if k > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Field for Rat {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(r: Rat) -> Self {
        r
    }

    fn split_sign(&self) -> (bool, Self) {
        if self.is_negative() {
            (true, -self.clone())
        } else {
            (false, self.clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_pow_and_inverse() {
        let two = Rat::from_i64(2);
        assert_eq!(two.pow(10), Rat::from_i64(1024));
        assert_eq!(two.inv().unwrap() * two.clone(), Rat::one());
        assert!(Rat::zero().inv().is_none());
        assert_eq!(Field::div(&Rat::from_i64(3), &two).unwrap().to_string(), "3/2");
    }

    #[test]
    fn split_sign_flips_negatives() {
        let (neg, abs) = Rat::from_i64(-7).split_sign();
        assert!(neg);
        assert_eq!(abs, Rat::from_i64(7));
        assert!(!Rat::zero().split_sign().0);
    }
}
