//! Q(ω) with ω = (−1 + √−3)/2, a primitive cube root of unity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::CoeffDisplay;
use super::{rat_string, Field, Rational, Ring};

/// `a + b·ω`, with ω² = −1 − ω.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadExt { a, b }
    }

    pub fn omega() -> Self {
        QuadExt::new(Rational::zero(), Rational::one())
    }

    pub fn omega_squared() -> Self {
        let one = Rational::one();
        QuadExt::new(-one.clone(), -one)
    }

    /// Image under ω ↦ ω² = −1 − ω.
    pub fn conj(&self) -> Self {
        QuadExt::new(self.a.clone() - self.b.clone(), -self.b.clone())
    }

    /// `a² − ab + b²`.
    pub fn norm(&self) -> Rational {
        self.a.clone() * self.a.clone() - self.a.clone() * self.b.clone()
            + self.b.clone() * self.b.clone()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
}

impl From<Rational> for QuadExt {
    fn from(a: Rational) -> Self {
        QuadExt::new(a, Rational::zero())
    }
}

impl Add for QuadExt {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        QuadExt::new(self.a + r.a, self.b + r.b)
    }
}

impl Sub for QuadExt {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        QuadExt::new(self.a - r.a, self.b - r.b)
    }
}

impl Neg for QuadExt {
    type Output = Self;
    fn neg(self) -> Self {
        QuadExt::new(-self.a, -self.b)
    }
}

impl Mul for QuadExt {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        // (a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω
        let bd = self.b.clone() * r.b.clone();
        QuadExt::new(
            self.a.clone() * r.a.clone() - bd.clone(),
            self.a * r.b + self.b * r.a - bd,
        )
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::from(Rational::one())
    }
}

impl Ring for QuadExt {
    fn from_i64(n: i64) -> Self {
        QuadExt::from(<Rational as Ring>::from_i64(n))
    }
}

impl Field for QuadExt {
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(QuadExt::new(c.a / n.clone(), c.b / n))
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", rat_string(&self.a))
        } else if self.a.is_zero() {
            write!(f, "{}*w", rat_string(&self.b))
        } else {
            write!(f, "{} + {}*w", rat_string(&self.a), rat_string(&self.b))
        }
    }
}

impl CoeffDisplay for QuadExt {
    fn coeff_text(&self) -> (String, bool) {
        (self.to_string(), !self.a.is_zero() && !self.b.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn omega_is_primitive_cube_root() {
        let w = QuadExt::omega();
        assert_eq!(w.clone() * w.clone(), QuadExt::omega_squared());
        assert_eq!(w.pow(3), QuadExt::one());
        assert_eq!(QuadExt::one() + w.clone() + w.clone() * w.clone(), QuadExt::zero());
        assert_eq!(w.conj(), QuadExt::omega_squared());
        assert_eq!(w.norm(), rat(1, 1));
    }

    #[test]
    fn inverse_roundtrip() {
        let x = QuadExt::new(rat(3, 2), rat(-5, 7));
        assert_eq!(x.clone() * x.inv().unwrap(), QuadExt::one());
        assert!(QuadExt::zero().inv().is_none());
    }
}
