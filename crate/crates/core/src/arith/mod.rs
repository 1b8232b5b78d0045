//! Exact arithmetic substrate.
//!
//! Integers and rationals are arbitrary precision. Polynomials and rational
//! functions are generic over [`Ring`] / [`Field`] coefficient types, so the
//! same code runs over Q, Q(ω) and towers such as Q\[B\]\[A\]. Finite fields
//! carry runtime moduli and therefore expose their arithmetic through the
//! context-style [`FieldOps`] trait instead.

pub mod factor;
pub mod finite_field;
pub mod fp_poly;
pub mod integer;
pub mod parse;
pub mod poly;
pub mod quad;
pub mod ratfunc;
pub mod series;

use std::fmt::Debug;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use finite_field::{FfElem, FiniteField};
pub use integer::{cubefree_part, Integer};
pub use poly::Polynomial;
pub use quad::QuadExt;
pub use ratfunc::RationalFunction;
pub use series::series_expand;

pub type Rational = num_rational::BigRational;

/// Commutative ring with identity; values are immutable and cheap enough to clone.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_i64(n: i64) -> Self {
        let mut acc = Self::zero();
        let mut base = Self::one();
        let mut m = n.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc + base.clone();
            }
            base = base.clone() + base;
            m >>= 1;
        }
        if n < 0 {
            -acc
        } else {
            acc
        }
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

pub trait Field: Ring {
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }

    /// Specialized monic gcd, when the field has a faster route than Euclid.
    fn poly_gcd(_a: &Polynomial<Self>, _b: &Polynomial<Self>) -> Option<Polynomial<Self>> {
        None
    }
}

impl Ring for Integer {
    fn from_i64(n: i64) -> Self {
        Integer::from(n)
    }
}

impl Ring for Rational {
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(Integer::from(n))
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn poly_gcd(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Option<Polynomial<Self>> {
        if a.is_zero() && b.is_zero() {
            return Some(Polynomial::zero());
        }
        let (_, pa) = poly::primitive_part(a);
        let (_, pb) = poly::primitive_part(b);
        Some(poly::to_rational(&poly::primitive_gcd(&pa, &pb)).monic())
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn int_rat(n: &Integer) -> Rational {
    Rational::from_integer(n.clone())
}

/// Formats a rational as `n` or `n/d`.
pub fn rat_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Integer = n.trim().parse().ok()?;
            let d: Integer = d.trim().parse().ok()?;
            if Zero::is_zero(&d) {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<Integer>().ok().map(Rational::from_integer),
    }
}

/// Field arithmetic through an explicit context object.
///
/// Finite fields need their modulus at hand for every operation; fields with
/// static arithmetic are adapted through [`Std`].
pub trait FieldOps {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }
}

/// Adapter exposing a [`Field`] type through [`FieldOps`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Std<F>(PhantomData<F>);

impl<F> Std<F> {
    pub fn new() -> Self {
        Std(PhantomData)
    }
}

impl<F: Field> FieldOps for Std<F> {
    type Elem = F;

    fn zero(&self) -> F {
        F::zero()
    }
    fn one(&self) -> F {
        F::one()
    }
    fn is_zero(&self, a: &F) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &F, b: &F) -> F {
        a.clone() + b.clone()
    }
    fn sub(&self, a: &F, b: &F) -> F {
        a.clone() - b.clone()
    }
    fn neg(&self, a: &F) -> F {
        -a.clone()
    }
    fn mul(&self, a: &F, b: &F) -> F {
        a.clone() * b.clone()
    }
    fn inv(&self, a: &F) -> Option<F> {
        a.inv()
    }
    fn from_i64(&self, n: i64) -> F {
        F::from_i64(n)
    }
}
