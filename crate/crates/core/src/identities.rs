//! Ramanujan's cube identities, the taxicab search and the near-miss families
//! `a³ + b³ = c³ ± 1`.
//!
//! Every identity is checked as an exact polynomial identity by expanding the
//! difference of both sides coefficient by coefficient.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::arith::{
    rat, series_expand, Integer, Polynomial, Rational, RationalFunction, Ring,
};
use crate::error::{Error, Result};

type Q = Rational;
type P1 = Polynomial<Q>;
type P2 = Polynomial<P1>;
type P3 = Polynomial<P2>;

/// `x³ + y³ = z³ + w³`, checked on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CubeQuadruple<T> {
    pub x: T,
    pub y: T,
    pub z: T,
    pub w: T,
}

impl<T: Ring> CubeQuadruple<T> {
    pub fn new(x: T, y: T, z: T, w: T) -> Result<Self> {
        let lhs = x.pow(3) + y.pow(3);
        let rhs = z.pow(3) + w.pow(3);
        if lhs != rhs {
            return Err(Error::IdentityFailed {
                name: "cube quadruple".into(),
                detail: format!("{x:?}^3 + {y:?}^3 != {z:?}^3 + {w:?}^3"),
            });
        }
        Ok(CubeQuadruple { x, y, z, w })
    }

    pub fn sum(&self) -> T {
        self.x.pow(3) + self.y.pow(3)
    }
}

/// Outcome of a symbolic identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub name: String,
    /// Monomials in the expanded sum of cubes on the left.
    pub expanded_terms: usize,
    pub specializations: Vec<Specialization>,
}

/// An integer instance of an identity, `lhs³ = Σ rhs³` after an optional scaling.
#[derive(Debug, Clone, PartialEq)]
pub struct Specialization {
    pub parameters: Vec<(String, Integer)>,
    pub divisor: Integer,
    pub lhs: Integer,
    pub rhs: Vec<Integer>,
}

impl Specialization {
    pub fn holds(&self) -> bool {
        self.lhs.pow(3) == self.rhs.iter().map(|c| c.pow(3)).sum::<Integer>()
    }
}

fn v1() -> P1 {
    Polynomial::x()
}

fn c2(c: i64) -> P2 {
    Polynomial::constant(Polynomial::constant(rat(c, 1)))
}

/// Bivariate polynomial from `(coefficient, deg_outer, deg_inner)` terms.
fn bivariate(terms: &[(i64, usize, usize)]) -> P2 {
    let mut acc = P2::zero();
    for &(c, i, j) in terms {
        acc = acc + Polynomial::monomial(Polynomial::monomial(rat(c, 1), j), i);
    }
    acc
}

fn count_terms2(f: &P2) -> usize {
    f.coeffs()
        .iter()
        .map(|c| c.coeffs().iter().filter(|x| !x.is_zero()).count())
        .sum()
}

fn first_term2(f: &P2, outer: &str, inner: &str) -> String {
    for (i, c) in f.coeffs().iter().enumerate() {
        if let Some((j, v)) = c.first_nonzero() {
            return format!("{v}*{outer}^{i}*{inner}^{j}");
        }
    }
    "0".into()
}

fn first_term3(f: &P3) -> String {
    for (i, c) in f.coeffs().iter().enumerate() {
        for (j, d) in c.coeffs().iter().enumerate() {
            if let Some((k, v)) = d.first_nonzero() {
                return format!("{v}*alpha^{i}*beta^{j}*gamma^{k}");
            }
        }
    }
    "0".into()
}

fn eval2(f: &P2, outer: i64, inner: i64) -> Integer {
    let inner_q = rat(inner, 1);
    let reduced = f.map(|c| c.eval(&inner_q));
    let v = reduced.eval(&rat(outer, 1));
    assert!(v.is_integer(), "integer polynomial at integer point");
    v.to_integer()
}

fn check_zero2(name: &str, diff: &P2, outer: &str, inner: &str) -> Result<()> {
    if !diff.is_zero() {
        return Err(Error::IdentityFailed {
            name: name.into(),
            detail: format!("nonzero term {}", first_term2(diff, outer, inner)),
        });
    }
    Ok(())
}

/// `(6A²−4AB+4B²)³ = (3A²+5AB−5B²)³ + (4A²−4AB+6B²)³ + (5A²−5AB−3B²)³` in Q[B][A].
pub fn verify_ramanujan_1913() -> Result<IdentityReport> {
    let name = "ramanujan_1913";
    let lhs = bivariate(&[(6, 2, 0), (-4, 1, 1), (4, 0, 2)]);
    let rhs = [
        bivariate(&[(3, 2, 0), (5, 1, 1), (-5, 0, 2)]),
        bivariate(&[(4, 2, 0), (-4, 1, 1), (6, 0, 2)]),
        bivariate(&[(5, 2, 0), (-5, 1, 1), (-3, 0, 2)]),
    ];
    let rhs_sum = rhs.iter().fold(P2::zero(), |acc, r| acc + r.pow(3));
    check_zero2(name, &(lhs.pow(3) - rhs_sum.clone()), "A", "B")?;

    let mut specializations = Vec::new();
    // (2, −1) has every term divisible by 3, giving 12³ = (−1)³ + 10³ + 9³.
    for (a, b, divisor) in [(1i64, 0i64, 1i64), (2, -1, 3)] {
        let d = Integer::from(divisor);
        let scale = |v: Integer| -> Integer {
            debug_assert!((&v % &d).is_zero());
            v / &d
        };
        let sp = Specialization {
            parameters: vec![("A".into(), a.into()), ("B".into(), b.into())],
            divisor: d.pow(3),
            lhs: scale(eval2(&lhs, a, b)),
            rhs: rhs.iter().map(|r| scale(eval2(r, a, b))).collect(),
        };
        if !sp.holds() {
            return Err(Error::IdentityFailed {
                name: name.into(),
                detail: format!("specialization ({a}, {b}) fails"),
            });
        }
        specializations.push(sp);
    }
    Ok(IdentityReport {
        name: name.into(),
        expanded_terms: count_terms2(&rhs_sum),
        specializations,
    })
}

/// Entry 20(iii): a four-cube identity in Q[P][M].
pub fn verify_entry20() -> Result<IdentityReport> {
    let name = "entry20_iii";
    let m = Polynomial::<P1>::x();
    let p = Polynomial::constant(v1());
    let one = c2(1);
    let one_p = one.clone() + p.clone();
    let s = one.clone() + c2(3) * p.clone() + c2(3) * p.clone() * p.clone();
    let t1 = m.pow(7) - c2(3) * m.pow(4) * one_p.clone()
        + m.clone() * (c2(3) * one_p.pow(2) - one.clone());
    let t2 = c2(2) * m.pow(6) - c2(3) * m.pow(3) * (one.clone() + c2(2) * p.clone()) + s.clone();
    let t3 = m.pow(6) - s;
    let rhs = m.pow(7) - c2(3) * m.pow(4) * p.clone() + m * (c2(3) * p.pow(2) - one);
    let lhs_sum = t1.pow(3) + t2.pow(3) + t3.pow(3);
    check_zero2(name, &(lhs_sum.clone() - rhs.pow(3)), "M", "P")?;

    let mut specializations = Vec::new();
    for (mv, pv) in [(2i64, 0i64), (1, 0), (3, 1)] {
        // Stored as rhs³ = t1³ + t2³ + t3³.
        let sp = Specialization {
            parameters: vec![("M".into(), mv.into()), ("P".into(), pv.into())],
            divisor: Integer::one(),
            lhs: eval2(&rhs, mv, pv),
            rhs: [&t1, &t2, &t3].iter().map(|t| eval2(t, mv, pv)).collect(),
        };
        if !sp.holds() {
            return Err(Error::IdentityFailed {
                name: name.into(),
                detail: format!("specialization ({mv}, {pv}) fails"),
            });
        }
        specializations.push(sp);
    }
    Ok(IdentityReport {
        name: name.into(),
        expanded_terms: count_terms2(&lhs_sum),
        specializations,
    })
}

/// Euler's two-parameter family: with `λ = (α²+αβ+β²)/(3γ²)`,
/// `(α+λ²γ)³ + (λβ+γ)³ = (λα+γ)³ + (β+λ²γ)³`.
pub fn verify_euler_family(alpha: &Q, beta: &Q, gamma: &Q) -> Result<(Q, CubeQuadruple<Q>)> {
    if gamma.is_zero() {
        return Err(Error::InvalidInput("gamma must be nonzero".into()));
    }
    let lambda = (alpha.clone() * alpha.clone() + alpha.clone() * beta.clone() + beta.clone() * beta.clone())
        / (rat(3, 1) * gamma.clone() * gamma.clone());
    let l2 = lambda.clone() * lambda.clone();
    let quad = CubeQuadruple::new(
        alpha.clone() + l2.clone() * gamma.clone(),
        lambda.clone() * beta.clone() + gamma.clone(),
        lambda.clone() * alpha.clone() + gamma.clone(),
        beta.clone() + l2 * gamma.clone(),
    )?;
    Ok((lambda, quad))
}

/// The Euler family with λ eliminated, as a polynomial identity in Q[γ][β][α].
///
/// With `N = α²+αβ+β²` and `D = 3γ²`, multiplying through by `D⁶` gives
/// `(αD²+N²γ)³ + D³(Nβ+Dγ)³ − D³(Nα+Dγ)³ − (βD²+N²γ)³ = 0`.
pub fn verify_euler_family_symbolic() -> Result<IdentityReport> {
    let name = "euler_family";
    let c3 = |c: i64| -> P3 { Polynomial::constant(c2(c)) };
    let alpha = P3::x();
    let beta: P3 = Polynomial::constant(Polynomial::x());
    let gamma: P3 = Polynomial::constant(Polynomial::constant(v1()));
    let n = alpha.pow(2) + alpha.clone() * beta.clone() + beta.pow(2);
    let d = c3(3) * gamma.pow(2);
    let d2 = d.pow(2);
    let d3 = d.pow(3);
    let n2g = n.pow(2) * gamma.clone();
    let terms = [
        (alpha.clone() * d2.clone() + n2g.clone()).pow(3),
        d3.clone() * (n.clone() * beta.clone() + d.clone() * gamma.clone()).pow(3),
        d3 * (n * alpha + d * gamma).pow(3),
        (beta * d2 + n2g).pow(3),
    ];
    let diff = terms[0].clone() + terms[1].clone() - terms[2].clone() - terms[3].clone();
    if !diff.is_zero() {
        return Err(Error::IdentityFailed {
            name: name.into(),
            detail: format!("nonzero term {}", first_term3(&diff)),
        });
    }
    let lhs = terms[0].clone() + terms[1].clone();
    let expanded_terms = lhs
        .coeffs()
        .iter()
        .map(count_terms2)
        .sum();

    let (_, q) = verify_euler_family(&rat(3, 1), &rat(0, 1), &rat(1, 1))?;
    let int = |r: &Q| r.to_integer();
    let sp = Specialization {
        parameters: vec![
            ("alpha".into(), 3.into()),
            ("beta".into(), 0.into()),
            ("gamma".into(), 1.into()),
        ],
        divisor: Integer::one(),
        lhs: Integer::zero(),
        rhs: vec![int(&q.x), int(&q.y), -int(&q.z), -int(&q.w)],
    };
    Ok(IdentityReport {
        name: name.into(),
        expanded_terms,
        specializations: vec![sp],
    })
}

/// All three symbolic suites in a fixed order.
pub fn verify_all() -> Result<Vec<IdentityReport>> {
    Ok(vec![
        verify_ramanujan_1913()?,
        verify_entry20()?,
        verify_euler_family_symbolic()?,
    ])
}

/// `n` with its representations `n = a³ + b³`, `1 ≤ a ≤ b`, in increasing `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaxicabEntry {
    pub n: u64,
    pub representations: Vec<(u64, u64)>,
}

/// Every `n ≤ bound` with at least `reps` positive two-cube representations.
pub fn taxicab_search(bound: u64, reps: usize) -> Result<Vec<TaxicabEntry>> {
    if bound < 2 {
        return Err(Error::InvalidInput("bound must be at least 2".into()));
    }
    if reps < 2 {
        return Err(Error::InvalidInput("reps must be at least 2".into()));
    }
    if bound > 1 << 62 {
        return Err(Error::TooLarge(format!("bound {bound}")));
    }
    let mut sums: HashMap<u64, Vec<(u64, u64)>> = HashMap::new();
    let mut a = 1u64;
    while 2 * a * a * a <= bound {
        let a3 = a * a * a;
        let mut b = a;
        while a3 + b * b * b <= bound {
            sums.entry(a3 + b * b * b).or_default().push((a, b));
            b += 1;
        }
        a += 1;
    }
    let mut out: Vec<TaxicabEntry> = sums
        .into_iter()
        .filter(|(_, r)| r.len() >= reps)
        .map(|(n, representations)| TaxicabEntry { n, representations })
        .collect();
    out.sort_by_key(|e| e.n);
    Ok(out)
}

/// Sign attached to the n-th tuple of a near-miss family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignRule {
    Constant(i8),
    /// `start · (−1)ⁿ`.
    Alternating(i8),
}

impl SignRule {
    pub fn eval(&self, n: usize) -> i8 {
        match *self {
            SignRule::Constant(s) => s,
            SignRule::Alternating(s) if n % 2 == 0 => s,
            SignRule::Alternating(s) => -s,
        }
    }
}

/// Three generating functions over one denominator; the n-th coefficients
/// `(aₙ, bₙ, cₙ)` satisfy `aₙ³ + bₙ³ − cₙ³ = sign_rule(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NearMissConfig {
    pub name: String,
    pub fa: RationalFunction<Q>,
    pub fb: RationalFunction<Q>,
    pub fc: RationalFunction<Q>,
    pub sign_rule: SignRule,
}

fn qp(cs: &[i64]) -> P1 {
    Polynomial::from_i64s(cs)
}

impl NearMissConfig {
    pub fn new(
        name: &str,
        fa: RationalFunction<Q>,
        fb: RationalFunction<Q>,
        fc: RationalFunction<Q>,
        sign_rule: SignRule,
    ) -> Result<Self> {
        if fa.den() != fb.den() || fa.den() != fc.den() {
            return Err(Error::InvalidInput(
                "generating functions must share one denominator".into(),
            ));
        }
        if fa.den().coeff(0).is_zero() {
            return Err(Error::InvalidInput("denominator vanishes at 0".into()));
        }
        if !matches!(sign_rule, SignRule::Constant(1 | -1) | SignRule::Alternating(1 | -1)) {
            return Err(Error::InvalidInput("signs must be +1 or -1".into()));
        }
        Ok(NearMissConfig {
            name: name.into(),
            fa,
            fb,
            fc,
            sign_rule,
        })
    }

    /// Expansion at zero.
    pub fn default_zero() -> Self {
        let den = qp(&[1, -82, -82, 1]);
        let f = |num: &[i64]| RationalFunction::new(qp(num), den.clone()).expect("nonzero");
        NearMissConfig::new(
            "zero",
            f(&[1, 53, 9]),
            f(&[2, -26, -12]),
            f(&[2, 8, -10]),
            SignRule::Alternating(1),
        )
        .expect("valid config")
    }

    /// Expansion at infinity, obtained from [`Self::default_zero`] by
    /// [`Self::reciprocal`].
    pub fn default_infinity() -> Self {
        NearMissConfig::default_zero()
            .reciprocal("infinity", SignRule::Alternating(1))
            .expect("valid config")
    }

    /// Substitutes `x → 1/x` in all three functions, clears the denominator's
    /// degree and removes the largest power of `x` common to the numerators.
    /// The sign rule of the new family is not determined by the old one and is
    /// supplied by the caller; emission re-verifies it.
    pub fn reciprocal(&self, name: &str, sign_rule: SignRule) -> Result<Self> {
        let dd = self.fa.den().degree().expect("nonzero");
        let fs = [&self.fa, &self.fb, &self.fc];
        if fs.iter().any(|f| f.num().degree().unwrap_or(0) > dd) {
            return Err(Error::InvalidInput(
                "numerator degree exceeds denominator degree".into(),
            ));
        }
        // f(1/x) = x^dd·num(1/x) / (x^dd·den(1/x)).
        let nums: Vec<P1> = fs.iter().map(|f| f.num().reversed_to(dd)).collect();
        let shift = nums
            .iter()
            .filter_map(|n| n.valuation())
            .min()
            .unwrap_or(0);
        let den = self.fa.den().reversed_to(dd);
        let strip = |n: &P1| -> RationalFunction<Q> {
            let cs = n.coeffs().iter().skip(shift).cloned().collect();
            RationalFunction::new(Polynomial::new(cs), den.clone()).expect("nonzero")
        };
        NearMissConfig::new(name, strip(&nums[0]), strip(&nums[1]), strip(&nums[2]), sign_rule)
    }
}

/// `aₙ³ + bₙ³ = cₙ³ + εₙ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearMissTuple {
    pub n: usize,
    pub a: Integer,
    pub b: Integer,
    pub c: Integer,
    pub epsilon: i8,
}

fn integral(v: Vec<Q>, index_of: &str) -> Result<Vec<Integer>> {
    v.into_iter()
        .enumerate()
        .map(|(n, c)| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::VerificationFailed {
                    index: n,
                    detail: format!("coefficient of {index_of} is not integral: {c}"),
                })
            }
        })
        .collect()
}

/// First `count` tuples, each verified by exact integer arithmetic before it is
/// emitted.
pub fn nearmiss_stream(config: &NearMissConfig, count: usize) -> Result<Vec<NearMissTuple>> {
    if count == 0 {
        return Err(Error::InvalidInput("count must be at least 1".into()));
    }
    let a = integral(series_expand(&config.fa, count)?, "fa")?;
    let b = integral(series_expand(&config.fb, count)?, "fb")?;
    let c = integral(series_expand(&config.fc, count)?, "fc")?;
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        let epsilon = config.sign_rule.eval(n);
        let lhs = a[n].pow(3) + b[n].pow(3) - c[n].pow(3);
        if lhs != Integer::from(epsilon) {
            return Err(Error::VerificationFailed {
                index: n,
                detail: format!(
                    "{}^3 + {}^3 - {}^3 = {lhs}, expected {epsilon}",
                    a[n], b[n], c[n]
                ),
            });
        }
        out.push(NearMissTuple {
            n,
            a: a[n].clone(),
            b: b[n].clone(),
            c: c[n].clone(),
            epsilon,
        });
    }
    Ok(out)
}
