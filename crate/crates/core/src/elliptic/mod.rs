//! The Hesse cubic `X³ + Y³ = d`, its Weierstrass model `v² = u³ − 432d²`,
//! and the chord-tangent group law over any field of characteristic ≠ 2, 3.

pub mod counting;

pub use counting::{build_trace_table, count_points, torsion_order_bound, TraceTable};

use crate::arith::{FieldOps, Rational, Std};
use crate::error::{Error, Result};

/// Projective point of a Weierstrass curve; `Infinity` is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point<E> {
    Infinity,
    Affine(E, E),
}

impl<E> Point<E> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

/// `v² = u³ + A` over the field `K`; `A ≠ 0`.
#[derive(Clone, Debug)]
pub struct WeierstrassCurve<K: FieldOps> {
    field: K,
    a: K::Elem,
}

impl<K: FieldOps> WeierstrassCurve<K> {
    pub fn new(field: K, a: K::Elem) -> Result<Self> {
        if field.is_zero(&a) {
            return Err(Error::SingularCurve("A = 0".into()));
        }
        Ok(WeierstrassCurve { field, a })
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn a(&self) -> &K::Elem {
        &self.a
    }

    pub fn is_on_curve(&self, p: &Point<K::Elem>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(u, v) => {
                let f = &self.field;
                let rhs = f.add(&f.mul(&f.square(u), u), &self.a);
                f.square(v) == rhs
            }
        }
    }

    pub fn point(&self, u: K::Elem, v: K::Elem) -> Result<Point<K::Elem>> {
        let p = Point::Affine(u, v);
        if self.is_on_curve(&p) {
            Ok(p)
        } else {
            Err(Error::NotOnCurve)
        }
    }

    pub fn neg(&self, p: &Point<K::Elem>) -> Point<K::Elem> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(u, v) => Point::Affine(u.clone(), self.field.neg(v)),
        }
    }

    /// `P ⊕ Q`, rejecting off-curve inputs.
    pub fn add(&self, p: &Point<K::Elem>, q: &Point<K::Elem>) -> Result<Point<K::Elem>> {
        if !self.is_on_curve(p) || !self.is_on_curve(q) {
            return Err(Error::NotOnCurve);
        }
        Ok(self.add_unchecked(p, q))
    }

    /// `P ⊕ Q` for inputs already known to lie on the curve.
    pub fn add_unchecked(&self, p: &Point<K::Elem>, q: &Point<K::Elem>) -> Point<K::Elem> {
        let f = &self.field;
        let (u1, v1, u2, v2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(u1, v1), Point::Affine(u2, v2)) => (u1, v1, u2, v2),
        };
        let slope = if u1 == u2 {
            if f.is_zero(&f.add(v1, v2)) {
                return Point::Infinity;
            }
            // Tangent: 3u²/(2v); v ≠ 0 here since v1 = v2 = −v2 would force v1 = 0.
            let num = f.mul(&f.from_i64(3), &f.square(u1));
            let den = f.mul(&f.from_i64(2), v1);
            f.mul(&num, &f.inv(&den).expect("nonzero"))
        } else {
            let den = f.inv(&f.sub(u2, u1)).expect("distinct abscissae");
            f.mul(&f.sub(v2, v1), &den)
        };
        let u3 = f.sub(&f.sub(&f.square(&slope), u1), u2);
        let v3 = f.sub(&f.mul(&slope, &f.sub(u1, &u3)), v1);
        Point::Affine(u3, v3)
    }

    pub fn double(&self, p: &Point<K::Elem>) -> Point<K::Elem> {
        self.add_unchecked(p, p)
    }

    /// `[n]P` by double-and-add.
    pub fn mul(&self, p: &Point<K::Elem>, n: i64) -> Point<K::Elem> {
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        self.mul_u64(&base, n.unsigned_abs())
    }

    pub fn mul_u64(&self, p: &Point<K::Elem>, mut n: u64) -> Point<K::Elem> {
        let mut acc = Point::Infinity;
        let mut base = p.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.double(&base);
            }
        }
        acc
    }
}

/// Point of `X³ + Y³ = d`. `Flex` is the identity `(1 : −1 : 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HessePoint<E> {
    Flex,
    Affine(E, E),
}

/// `(x, y) ↦ (12d/(x+y), 36d(x−y)/(x+y))`; the flex goes to infinity.
pub fn hesse_to_weierstrass_point<K: FieldOps>(
    field: &K,
    d: &K::Elem,
    p: &HessePoint<K::Elem>,
) -> Result<Point<K::Elem>> {
    match p {
        HessePoint::Flex => Ok(Point::Infinity),
        HessePoint::Affine(x, y) => {
            let s = field.add(x, y);
            let inv = field.inv(&s).ok_or(Error::DivisionByZero)?;
            let u = field.mul(&field.mul(&field.from_i64(12), d), &inv);
            let v = field.mul(
                &field.mul(&field.mul(&field.from_i64(36), d), &field.sub(x, y)),
                &inv,
            );
            Ok(Point::Affine(u, v))
        }
    }
}

/// `(u, v) ↦ ((36d + v)/(6u), (36d − v)/(6u))`. Points with `u = 0` are the two
/// non-identity points at infinity of the cubic and have no affine image.
pub fn weierstrass_to_hesse_point<K: FieldOps>(
    field: &K,
    d: &K::Elem,
    p: &Point<K::Elem>,
) -> Result<HessePoint<K::Elem>> {
    match p {
        Point::Infinity => Ok(HessePoint::Flex),
        Point::Affine(u, v) => {
            let inv = field
                .inv(&field.mul(&field.from_i64(6), u))
                .ok_or(Error::DivisionByZero)?;
            let c = field.mul(&field.from_i64(36), d);
            Ok(HessePoint::Affine(
                field.mul(&field.add(&c, v), &inv),
                field.mul(&field.sub(&c, v), &inv),
            ))
        }
    }
}

pub fn on_hesse<K: FieldOps>(field: &K, d: &K::Elem, p: &HessePoint<K::Elem>) -> bool {
    match p {
        HessePoint::Flex => true,
        HessePoint::Affine(x, y) => {
            let x3 = field.mul(&field.square(x), x);
            let y3 = field.mul(&field.square(y), y);
            field.add(&x3, &y3) == *d
        }
    }
}

/// Group law on the cubic itself: `P ⊕ Q = −R` where `R` is the third point
/// of the chord (or tangent) and `−(x, y) = (y, x)`.
pub fn hesse_add<K: FieldOps>(
    field: &K,
    d: &K::Elem,
    p: &HessePoint<K::Elem>,
    q: &HessePoint<K::Elem>,
) -> Result<HessePoint<K::Elem>> {
    if !on_hesse(field, d, p) || !on_hesse(field, d, q) {
        return Err(Error::NotOnCurve);
    }
    let f = field;
    let ((x1, y1), (x2, y2)) = match (p, q) {
        (HessePoint::Flex, _) => return Ok(q.clone()),
        (_, HessePoint::Flex) => return Ok(p.clone()),
        (HessePoint::Affine(a, b), HessePoint::Affine(c, e)) => ((a, b), (c, e)),
    };
    // A chord parallel to x + y = 0 meets the cubic again at the flex.
    if x1 == y2 && y1 == x2 {
        return Ok(HessePoint::Flex);
    }
    let same = x1 == x2 && y1 == y2;
    let vertical = if same { f.is_zero(y1) } else { x1 == x2 };
    let (x3, y3) = if vertical {
        // x = x1 meets the cubic where y³ = d − x1³; the y-roots sum to 0.
        (x1.clone(), f.neg(&f.add(y1, y2)))
    } else {
        let m = if same {
            // 3x² + 3y²y' = 0
            f.neg(&f.mul(&f.square(x1), &f.inv(&f.square(y1)).expect("y ≠ 0")))
        } else {
            f.mul(&f.sub(y2, y1), &f.inv(&f.sub(x2, x1)).expect("distinct"))
        };
        let c = f.sub(y1, &f.mul(&m, x1));
        let lead = f.add(&f.one(), &f.mul(&f.square(&m), &m));
        let lead_inv = f.inv(&lead).ok_or(Error::DivisionByZero)?;
        // (1+m³)x³ + 3m²c x² + ... : the roots sum to −3m²c/(1+m³).
        let sum = f.neg(&f.mul(&f.mul(&f.from_i64(3), &f.mul(&f.square(&m), &c)), &lead_inv));
        let x3 = f.sub(&f.sub(&sum, x1), x2);
        let y3 = f.add(&f.mul(&m, &x3), &c);
        (x3, y3)
    };
    Ok(HessePoint::Affine(y3, x3))
}

/// `X³ + Y³ = d` over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicTwistCurve {
    d: Rational,
}

impl CubicTwistCurve {
    pub fn new(d: Rational) -> Result<Self> {
        if num_traits::Zero::is_zero(&d) {
            return Err(Error::InvalidInput("d must be nonzero".into()));
        }
        Ok(CubicTwistCurve { d })
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    /// `v² = u³ − 432d²`.
    pub fn weierstrass(&self) -> WeierstrassCurve<Std<Rational>> {
        let a = Rational::from_integer((-432).into()) * self.d.clone() * self.d.clone();
        WeierstrassCurve::new(Std::new(), a).expect("d ≠ 0")
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        on_hesse(&Std::new(), &self.d, &HessePoint::Affine(x.clone(), y.clone()))
    }

    pub fn to_weierstrass(&self, x: &Rational, y: &Rational) -> Result<Point<Rational>> {
        if !self.contains(x, y) {
            return Err(Error::NotOnCurve);
        }
        hesse_to_weierstrass_point(&Std::new(), &self.d, &HessePoint::Affine(x.clone(), y.clone()))
    }

    pub fn from_weierstrass(&self, p: &Point<Rational>) -> Result<HessePoint<Rational>> {
        if !self.weierstrass().is_on_curve(p) {
            return Err(Error::NotOnCurve);
        }
        weierstrass_to_hesse_point(&Std::new(), &self.d, p)
    }
}
