//! Dense univariate polynomials, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{Field, Integer, Rational, Ring};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> Polynomial<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate.
    pub fn x() -> Self {
        Self::new(vec![C::zero(), C::one()])
    }

    pub fn monomial(c: C, degree: usize) -> Self {
        let mut coeffs = vec![C::zero(); degree];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| C::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, t: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| C::from_i64(i as i64) * c.clone())
                .collect(),
        )
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc * g.clone() + Self::constant(c.clone()))
    }

    /// `x^n · self(1/x)` with `n = deg self`; coefficient reversal.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// `x^n · self(1/x)` for an explicit `n ≥ deg self`.
    pub fn reversed_to(&self, n: usize) -> Self {
        let mut c = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[n - i] = a.clone();
        }
        Self::new(c)
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![C::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(C::one());
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Index and value of the first nonzero coefficient, for diagnostics.
    pub fn first_nonzero(&self) -> Option<(usize, &C)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }
}

impl<F: Field> Polynomial<F> {
    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead_inv = divisor.leading()?.inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = rem[i - dd + j].clone() - c.clone() * dc.clone();
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Option<Self> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Exact quotient, `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        if let Some(g) = F::poly_gcd(self, other) {
            return g;
        }
        // Monic remainders keep coefficient growth in check.
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor").monic();
            a = b;
            b = r;
        }
        a
    }

    /// Squarefree decomposition `self = c · Π fᵢ^i` (Yun), as `(fᵢ, i)` with
    /// nonconstant monic `fᵢ`. Valid in characteristic zero.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let mut c = df.exact_div(&a0).expect("gcd divides");
        let mut d = c - b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).expect("gcd divides");
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.exact_div(&a).expect("gcd divides");
            d = c - b.derivative();
            i += 1;
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }
}

impl<C: Ring> Add for Polynomial<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (i, c) in short.into_iter().enumerate() {
            long[i] = long[i].clone() + c;
        }
        Self::new(long)
    }
}

impl<C: Ring> Neg for Polynomial<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Polynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<C: Ring> Sub for Polynomial<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Ring> Mul for Polynomial<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<C: Ring> num_traits::Zero for Polynomial<C> {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Ring> num_traits::One for Polynomial<C> {
    fn one() -> Self {
        Polynomial::constant(C::one())
    }
}

impl<C: Ring> Ring for Polynomial<C> {
    fn from_i64(n: i64) -> Self {
        Polynomial::constant(C::from_i64(n))
    }
}

/// Coefficient formatting for [`Polynomial::display_with`].
pub trait CoeffDisplay {
    /// Returns the coefficient text, and whether it needs parentheses when
    /// multiplied by a monomial.
    fn coeff_text(&self) -> (String, bool);
}

impl CoeffDisplay for Rational {
    fn coeff_text(&self) -> (String, bool) {
        (super::rat_string(self), false)
    }
}

impl CoeffDisplay for Integer {
    fn coeff_text(&self) -> (String, bool) {
        (self.to_string(), false)
    }
}

impl<C: Ring + CoeffDisplay> Polynomial<C> {
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (mut text, compound) = c.coeff_text();
            let negative = !compound && text.starts_with('-');
            if negative {
                text.remove(0);
            }
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&text);
            } else if text == "1" {
                out.push_str(&mono);
            } else if compound {
                out.push_str(&format!("({text})*{mono}"));
            } else {
                out.push_str(&format!("{text}*{mono}"));
            }
        }
        out
    }
}

impl<C: Ring + CoeffDisplay> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("T"))
    }
}

impl<C: fmt::Debug> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Polynomial").field(&self.coeffs).finish()
    }
}

/// Content and primitive integer part: `f = content · primitive`, with the
/// primitive part having positive leading coefficient.
pub fn primitive_part(f: &Polynomial<Rational>) -> (Rational, Polynomial<Integer>) {
    if f.is_zero() {
        return (Rational::zero(), Polynomial::zero());
    }
    let lcm_den = f
        .coeffs()
        .iter()
        .fold(Integer::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<Integer> = f
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm_den.clone())).to_integer())
        .collect();
    let mut g = ints.iter().fold(Integer::zero(), |acc, c| acc.gcd(c));
    if ints.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    let prim = Polynomial::new(ints.into_iter().map(|c| c / &g).collect());
    (Rational::new(g, lcm_den), prim)
}

/// Primitive gcd in Z[x] by the primitive remainder sequence; positive
/// leading coefficient.
pub fn primitive_gcd(a: &Polynomial<Integer>, b: &Polynomial<Integer>) -> Polynomial<Integer> {
    fn content(v: &[Integer]) -> Integer {
        v.iter().fold(Integer::zero(), |acc, c| acc.gcd(c))
    }
    fn primitive(v: Vec<Integer>) -> Vec<Integer> {
        let mut g = content(&v);
        if v.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        if g.is_zero() {
            return v;
        }
        v.into_iter().map(|c| c / &g).collect()
    }
    let trim = |mut v: Vec<Integer>| {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    };
    let mut x = primitive(trim(a.coeffs().to_vec()));
    let mut y = primitive(trim(b.coeffs().to_vec()));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        // Pseudo-remainder of x by y.
        let dy = y.len() - 1;
        let ly = y[dy].clone();
        let mut r = x;
        while r.len() > dy {
            let top = r.len() - 1;
            let lr = r[top].clone();
            let g = lr.gcd(&ly);
            let (mr, my) = (&ly / &g, &lr / &g);
            for c in r.iter_mut() {
                *c *= &mr;
            }
            for (j, c) in y.iter().enumerate() {
                r[top - dy + j] -= &my * c;
            }
            r = trim(r);
        }
        x = y;
        y = primitive(r);
    }
    Polynomial::new(primitive(x))
}

pub fn to_rational(f: &Polynomial<Integer>) -> Polynomial<Rational> {
    f.map(|c| Rational::from_integer(c.clone()))
}

/// Integer coefficients if every coefficient is integral.
pub fn to_integer(f: &Polynomial<Rational>) -> Option<Polynomial<Integer>> {
    f.coeffs()
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect::<Option<Vec<_>>>()
        .map(Polynomial::new)
}

/// Fraction-free determinant (Bareiss) of a square integer matrix.
fn bareiss_det(mut m: Vec<Vec<Integer>>) -> Integer {
    let n = m.len();
    if n == 0 {
        return Integer::one();
    }
    let mut sign = Integer::one();
    let mut prev = Integer::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Integer::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant via the Sylvester determinant, after clearing denominators.
pub fn resultant(f: &Polynomial<Rational>, g: &Polynomial<Rational>) -> Rational {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Rational::zero();
    };
    if m == 0 && n == 0 {
        return Rational::one();
    }
    let (cf, pf) = primitive_part(f);
    let (cg, pg) = primitive_part(g);
    let size = m + n;
    let mut rows = vec![vec![Integer::zero(); size]; size];
    for r in 0..n {
        for (i, c) in pf.coeffs().iter().enumerate() {
            rows[r][r + m - i] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in pg.coeffs().iter().enumerate() {
            rows[n + r][r + n - i] = c.clone();
        }
    }
    let det = bareiss_det(rows);
    Rational::from_integer(det) * cf.pow(n as i32) * cg.pow(m as i32)
}

/// Discriminant `(-1)^{n(n-1)/2} · Res(f, f') / lc(f)`.
pub fn discriminant(f: &Polynomial<Rational>) -> Result<Rational> {
    let n = f.degree().filter(|&d| d >= 1).ok_or_else(|| {
        Error::InvalidInput("discriminant of a constant polynomial".into())
    })?;
    let res = resultant(f, &f.derivative());
    let lc = f.leading().expect("nonzero").clone();
    let sign = if (n * (n - 1) / 2) % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };
    Ok(sign * res / lc)
}
