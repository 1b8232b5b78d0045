use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::CoeffDisplay;
use super::{Field, Polynomial, Ring};

/// `num / den` in lowest terms with `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction<F> {
    num: Polynomial<F>,
    den: Polynomial<F>,
}

impl<F: Field> RationalFunction<F> {
    /// `None` if `den` is zero.
    pub fn new(num: Polynomial<F>, den: Polynomial<F>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::from_poly(Polynomial::zero()));
        }
        let g = num.gcd(&den);
        let mut n = num.exact_div(&g).expect("gcd divides");
        let mut d = den.exact_div(&g).expect("gcd divides");
        let lc = d.leading().expect("nonzero").inv().expect("field");
        n = n.scale(&lc);
        d = d.scale(&lc);
        Some(RationalFunction { num: n, den: d })
    }

    pub fn from_poly(p: Polynomial<F>) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::constant(F::one()),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn num(&self) -> &Polynomial<F> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Value at `t`, `None` at a pole.
    pub fn eval(&self, t: &F) -> Option<F> {
        let d = self.den.eval(t);
        self.num.eval(t).div(&d)
    }

    /// Formal derivative `(n'd − nd')/d²`.
    pub fn derivative(&self) -> Self {
        let n = self.num.derivative() * self.den.clone() - self.num.clone() * self.den.derivative();
        let d = self.den.clone() * self.den.clone();
        Self::new(n, d).expect("nonzero denominator")
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> RationalFunction<G> {
        RationalFunction::new(self.num.map(&f), self.den.map(&f)).expect("nonzero denominator")
    }
}

impl<F: Field> Add for RationalFunction<F> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        if self.den == r.den {
            return Self::new(self.num + r.num, self.den).expect("nonzero");
        }
        let n = self.num * r.den.clone() + r.num * self.den.clone();
        Self::new(n, self.den * r.den).expect("nonzero")
    }
}

impl<F: Field> Neg for RationalFunction<F> {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<F: Field> Sub for RationalFunction<F> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        self + (-r)
    }
}

impl<F: Field> Mul for RationalFunction<F> {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        if self.num.is_zero() || r.num.is_zero() {
            return Self::from_poly(Polynomial::zero());
        }
        // Cross-cancel first to keep intermediate degrees small.
        let g1 = self.num.gcd(&r.den);
        let g2 = r.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).expect("divides");
        let d2 = r.den.exact_div(&g1).expect("divides");
        let n2 = r.num.exact_div(&g2).expect("divides");
        let d1 = self.den.exact_div(&g2).expect("divides");
        Self::new(n1 * n2, d1 * d2).expect("nonzero")
    }
}

impl<F: Field> num_traits::Zero for RationalFunction<F> {
    fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> num_traits::One for RationalFunction<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Field> Ring for RationalFunction<F> {
    fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }
}

impl<F: Field> Field for RationalFunction<F> {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Self::new(self.den.clone(), self.num.clone())
        }
    }
}

impl<F: Field + CoeffDisplay> RationalFunction<F> {
    pub fn display_with(&self, var: &str) -> String {
        if self.is_polynomial() {
            self.num.display_with(var)
        } else {
            format!("({})/({})", self.num.display_with(var), self.den.display_with(var))
        }
    }
}

impl<F: Field + CoeffDisplay> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("T"))
    }
}

impl<F: fmt::Debug> fmt::Debug for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Rational};

    type Rf = RationalFunction<Rational>;

    fn qp(cs: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_i64s(cs)
    }

    #[test]
    fn normalizes_to_lowest_terms() {
        let f = Rf::new(qp(&[-2, 0, 2]), qp(&[2, 2])).unwrap();
        assert_eq!(f.num(), &qp(&[-1, 1]));
        assert_eq!(f.den(), &qp(&[1]));
        assert!(Rf::new(qp(&[1]), Polynomial::zero()).is_none());
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dx 1/(1 − x) = 1/(1 − x)²
        let f = Rf::new(qp(&[1]), qp(&[1, -1])).unwrap();
        let expect = Rf::new(qp(&[1]), qp(&[1, -2, 1])).unwrap();
        assert_eq!(f.derivative(), expect);
        assert_eq!(f.eval(&rat(1, 1)), None);
    }
}
