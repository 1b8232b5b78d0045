//! The curve `X³ + Y³ = k(T)` over Q(T) and over Q(ω)(T).
//!
//! A section `P = (x(T), y(T))` gives `φ_P(T, S) = (x/S, y/S)` from the cyclic
//! cover `C: S³ = k(T)` to `X³ + Y³ = 1`. Pulling back the invariant
//! differential `dX/Y²` and reducing with `S³ = k` and `x³ + y³ = k` leaves
//! `(x′y − xy′)·dT/S²`, so every differential is represented by the single
//! rational function `w = x′y − xy′`.

pub mod lfunction;

pub use lfunction::{lfunction, rank_bounds, LMethod, LPolynomial};

use crate::arith::poly::discriminant;
use crate::arith::{
    rat, Field, Polynomial, QuadExt, Rational, RationalFunction, Ring, Std,
};
use crate::elliptic::{
    hesse_to_weierstrass_point, weierstrass_to_hesse_point, HessePoint, WeierstrassCurve,
};
use crate::error::{Error, Result};

use num_traits::{One, Zero};

type Q = Rational;

/// `X³ + Y³ = k(T)` with `k` squarefree of degree 6; Weierstrass model
/// `v² = u³ − 432k²`.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionFieldCurve {
    k: Polynomial<Q>,
}

impl FunctionFieldCurve {
    pub fn new(k: Polynomial<Q>) -> Result<Self> {
        if k.degree() != Some(6) {
            return Err(Error::InvalidInput(format!(
                "k must have degree 6, got {:?}",
                k.degree()
            )));
        }
        if num_traits::Zero::is_zero(&discriminant(&k)?) {
            let g = k.gcd(&k.derivative());
            return Err(Error::NotSquarefree(g.to_string()));
        }
        Ok(FunctionFieldCurve { k })
    }

    pub fn k(&self) -> &Polynomial<Q> {
        &self.k
    }

    /// `A(T) = −432k(T)²`.
    pub fn weierstrass_coefficient(&self) -> Polynomial<Q> {
        self.k.pow(2).scale(&rat(-432, 1))
    }
}

/// A point of the curve over `C(T)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionPoint<C> {
    pub x: RationalFunction<C>,
    pub y: RationalFunction<C>,
}

impl<C: Field> SectionPoint<C> {
    /// Checks `x³ + y³ = k` exactly.
    pub fn new(k: &Polynomial<C>, x: RationalFunction<C>, y: RationalFunction<C>) -> Result<Self> {
        let lhs = x.pow(3) + y.pow(3);
        let diff = lhs - RationalFunction::from_poly(k.clone());
        if !diff.is_zero() {
            return Err(Error::IdentityFailed {
                name: "section on curve".into(),
                detail: format!("x^3 + y^3 - k = {:?}", diff),
            });
        }
        Ok(SectionPoint { x, y })
    }

    pub fn polynomial(k: &Polynomial<C>, x: Polynomial<C>, y: Polynomial<C>) -> Result<Self> {
        Self::new(k, RationalFunction::from_poly(x), RationalFunction::from_poly(y))
    }

    /// Hesse negation `(x, y) ↦ (y, x)`.
    pub fn neg(&self) -> Self {
        SectionPoint {
            x: self.y.clone(),
            y: self.x.clone(),
        }
    }

    pub fn eval(&self, t: &C) -> Option<(C, C)> {
        Some((self.x.eval(t)?, self.y.eval(t)?))
    }

    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> SectionPoint<D> {
        SectionPoint {
            x: self.x.map(&f),
            y: self.y.map(&f),
        }
    }
}

impl SectionPoint<Q> {
    pub fn to_quad(&self) -> SectionPoint<QuadExt> {
        self.map(|c| QuadExt::from(c.clone()))
    }
}

/// CM action `ζ·(x, y) = (ζx, ζy)` with `ζ = ω`.
pub fn cm_twist(p: &SectionPoint<QuadExt>) -> SectionPoint<QuadExt> {
    let w = RationalFunction::constant(QuadExt::omega());
    SectionPoint {
        x: w.clone() * p.x.clone(),
        y: w * p.y.clone(),
    }
}

/// Ramanujan's family with both sections verified on the curve.
#[derive(Clone, Debug)]
pub struct Family {
    pub curve: FunctionFieldCurve,
    pub p1: SectionPoint<Q>,
    pub p2: SectionPoint<Q>,
}

fn qp(cs: &[i64]) -> Polynomial<Q> {
    Polynomial::from_i64s(cs)
}

/// `k(T) = 63(3T²−3T+1)(T²+T+1)(T²−3T+3)` with
/// `P₁ = (6T²−4T+4, −3T²−5T+5)` and `P₂ = (4T²−4T+6, 5T²−5T−3)`.
pub fn build_family() -> Result<Family> {
    let k = (qp(&[1, -3, 3]) * qp(&[1, 1, 1]) * qp(&[3, -3, 1])).scale(&rat(63, 1));
    let curve = FunctionFieldCurve::new(k)?;
    let p1 = SectionPoint::polynomial(curve.k(), qp(&[4, -4, 6]), qp(&[5, -5, -3]))?;
    let p2 = SectionPoint::polynomial(curve.k(), qp(&[6, -4, 4]), qp(&[-3, -5, 5]))?;
    Ok(Family { curve, p1, p2 })
}

/// Pullbacks of `P₁, P₂, [ω]P₁, [ω]P₂` over Q(ω).
pub fn cm_extended_differentials(f: &Family) -> Vec<HolDifferential<QuadExt>> {
    let base = [f.p1.to_quad(), f.p2.to_quad()];
    let twisted: Vec<_> = base.iter().map(cm_twist).collect();
    base.iter()
        .chain(twisted.iter())
        .map(pullback_differential)
        .collect()
}

/// Coefficient `w` of `dT/S²`.
#[derive(Clone, Debug, PartialEq)]
pub struct HolDifferential<C> {
    pub w: RationalFunction<C>,
}

impl<C: Field> HolDifferential<C> {
    pub fn zero() -> Self {
        HolDifferential {
            w: RationalFunction::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero()
    }

    pub fn scale(&self, c: &C) -> Self {
        HolDifferential {
            w: RationalFunction::constant(c.clone()) * self.w.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        HolDifferential {
            w: self.w.clone() + other.w.clone(),
        }
    }
}

impl HolDifferential<Q> {
    pub fn to_quad(&self) -> HolDifferential<QuadExt> {
        HolDifferential {
            w: self.w.map(|c| QuadExt::from(c.clone())),
        }
    }
}

/// `w = x′y − xy′`.
pub fn pullback_differential<C: Field>(p: &SectionPoint<C>) -> HolDifferential<C> {
    HolDifferential {
        w: p.x.derivative() * p.y.clone() - p.x.clone() * p.y.derivative(),
    }
}

/// Rank over Q of a list of rational vectors by Gauss–Jordan elimination.
fn rank_q(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    for r in rows.iter_mut() {
        r.resize(cols, Q::zero());
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = rows[rank][c].inv().expect("nonzero pivot");
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = rows[i][c].clone() * inv.clone();
                for j in c..cols {
                    let t = rows[rank][j].clone() * f.clone();
                    rows[i][j] = rows[i][j].clone() - t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the additive span of the differentials, with Q(ω) coefficients
/// flattened to pairs of rationals. Rational functions are first brought to a
/// common denominator.
pub fn z_rank(diffs: &[HolDifferential<QuadExt>]) -> usize {
    let mut den = Polynomial::constant(QuadExt::one());
    for d in diffs {
        let g = den.gcd(d.w.den());
        den = den.clone() * d.w.den().exact_div(&g).expect("gcd divides");
    }
    let rows = diffs
        .iter()
        .map(|d| {
            let scale = den.exact_div(d.w.den()).expect("common multiple");
            let num = d.w.num().clone() * scale;
            num.coeffs()
                .iter()
                .flat_map(|c| [c.a.clone(), c.b.clone()])
                .collect()
        })
        .collect();
    rank_q(rows)
}

type WCurve<C> = WeierstrassCurve<Std<RationalFunction<C>>>;

fn weierstrass_of<C: Field>(k: &Polynomial<C>) -> WCurve<C> {
    let k = RationalFunction::from_poly(k.clone());
    let a = RationalFunction::from_i64(-432) * k.clone() * k;
    WeierstrassCurve::new(Std::new(), a).expect("k ≠ 0")
}

fn to_weierstrass<C: Field>(
    k: &Polynomial<C>,
    p: &SectionPoint<C>,
) -> Result<crate::elliptic::Point<RationalFunction<C>>> {
    let d = RationalFunction::from_poly(k.clone());
    hesse_to_weierstrass_point(&Std::new(), &d, &HessePoint::Affine(p.x.clone(), p.y.clone()))
}

/// `None` for the identity.
fn from_weierstrass<C: Field>(
    k: &Polynomial<C>,
    p: &crate::elliptic::Point<RationalFunction<C>>,
) -> Result<Option<SectionPoint<C>>> {
    let d = RationalFunction::from_poly(k.clone());
    match weierstrass_to_hesse_point(&Std::new(), &d, p)? {
        HessePoint::Flex => Ok(None),
        HessePoint::Affine(x, y) => Ok(Some(SectionPoint::new(k, x, y)?)),
    }
}

/// `m·P ⊕ n·Q` computed on the Weierstrass model; `None` for the identity.
pub fn combination<C: Field>(
    k: &Polynomial<C>,
    p: &SectionPoint<C>,
    m: i64,
    q: &SectionPoint<C>,
    n: i64,
) -> Result<Option<SectionPoint<C>>> {
    let e = weierstrass_of(k);
    let wp = to_weierstrass(k, p)?;
    let wq = to_weierstrass(k, q)?;
    let s = e.add_unchecked(&e.mul(&wp, m), &e.mul(&wq, n));
    from_weierstrass(k, &s)
}

/// Outcome of checking `λ(P ⊕ Q) = λ(P) + λ(Q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaCheck<C> {
    pub sum: Option<SectionPoint<C>>,
    pub w_p: HolDifferential<C>,
    pub w_q: HolDifferential<C>,
    pub w_sum: HolDifferential<C>,
}

impl<C: Field> LambdaCheck<C> {
    pub fn holds(&self) -> bool {
        self.w_sum == self.w_p.add(&self.w_q)
    }
}

pub fn lambda_homomorphism_check<C: Field>(
    k: &Polynomial<C>,
    p: &SectionPoint<C>,
    q: &SectionPoint<C>,
) -> Result<LambdaCheck<C>> {
    for s in [p, q] {
        if (s.x.clone() + s.y.clone()).is_zero() {
            return Err(Error::InvalidInput("section with x + y = 0".into()));
        }
    }
    let sum = combination(k, p, 1, q, 1).map_err(|e| Error::Stage {
        stage: "chord".into(),
        detail: e.to_string(),
    })?;
    let w_sum = sum
        .as_ref()
        .map_or_else(HolDifferential::zero, pullback_differential);
    Ok(LambdaCheck {
        w_p: pullback_differential(p),
        w_q: pullback_differential(q),
        w_sum,
        sum,
    })
}

/// The pullbacks as printed, rewritten on the basis `dT/S²`:
/// `5S(6T+5)/(4(3T²−2T+2)²) dT` and `5S(2T−1)/(4(2T²−2T+3)²) dT`, with
/// `S·dT = k·dT/S²`.
pub fn printed_pullbacks(k: &Polynomial<Q>) -> [HolDifferential<Q>; 2] {
    let mk = |lin: &[i64], quad: &[i64]| {
        let num = (qp(lin) * k.clone()).scale(&rat(5, 1));
        let den = qp(quad).pow(2).scale(&rat(4, 1));
        HolDifferential {
            w: RationalFunction::new(num, den).expect("nonzero"),
        }
    };
    [mk(&[5, 6], &[2, -2, 3]), mk(&[-1, 2], &[3, -2, 2])]
}

/// `printed / computed`, and whether it is a constant.
pub fn compare_with_printed(
    computed: &HolDifferential<Q>,
    printed: &HolDifferential<Q>,
) -> (RationalFunction<Q>, bool) {
    let ratio = printed.w.clone() * computed.w.inv().expect("nonzero differential");
    let constant = ratio.is_polynomial() && ratio.num().degree().unwrap_or(0) == 0;
    (ratio, constant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn family_examples() {
        let f = build_family().unwrap();
        assert_eq!(f.curve.k(), &qp(&[189, -567, 630, -315, 630, -567, 189]));
        assert_eq!(f.curve.k().eval(&rat(0, 1)), rat(189, 1));
        assert_eq!(f.p1.eval(&rat(0, 1)), Some((rat(4, 1), rat(5, 1))));
        assert_eq!(f.curve.k().eval(&rat(3, 1)), rat(46683, 1));
        assert_eq!(f.p2.eval(&rat(3, 1)), Some((rat(30, 1), rat(27, 1))));
        assert!(SectionPoint::polynomial(f.curve.k(), qp(&[4, -4, 6]), qp(&[5, -5, -2])).is_err());
    }

    #[test]
    fn curve_rejects_bad_k() {
        assert!(FunctionFieldCurve::new(qp(&[1, 0, 1])).is_err());
        let sq = qp(&[0, 0, 1]) * qp(&[1, 0, 0, 0, 1]);
        assert!(matches!(FunctionFieldCurve::new(sq), Err(Error::NotSquarefree(_))));
    }

    #[test]
    fn wronskian_pullbacks() {
        let f = build_family().unwrap();
        let w1 = pullback_differential(&f.p1);
        let w2 = pullback_differential(&f.p2);
        assert_eq!(w1.w, RationalFunction::from_poly(qp(&[0, 84, -42])));
        assert_eq!(w2.w, RationalFunction::from_poly(qp(&[42, -84])));
        // Oracle: (12T−4)(−3T²−5T+5) − (6T²−4T+4)(−6T−5) expanded by hand.
        let lhs = qp(&[-4, 12]) * qp(&[5, -5, -3]) - qp(&[4, -4, 6]) * qp(&[-5, -6]);
        assert_eq!(lhs, qp(&[0, 84, -42]));
    }

    #[test]
    fn cm_twist_scales_by_omega_squared() {
        let f = build_family().unwrap();
        let k = f.curve.k().map(|c| QuadExt::from(c.clone()));
        let p = f.p1.to_quad();
        let tp = cm_twist(&p);
        SectionPoint::new(&k, tp.x.clone(), tp.y.clone()).unwrap();
        let w = pullback_differential(&p);
        assert_eq!(pullback_differential(&tp), w.scale(&QuadExt::omega_squared()));
        assert_eq!(pullback_differential(&cm_twist(&tp)), w.scale(&QuadExt::omega()));
    }

    #[test]
    fn z_rank_examples() {
        let f = build_family().unwrap();
        let w1 = pullback_differential(&f.p1).to_quad();
        let w2 = pullback_differential(&f.p2).to_quad();
        assert_eq!(z_rank(&[w1.clone(), w2.clone()]), 2);
        let z = QuadExt::omega();
        assert_eq!(z_rank(&[w1.clone(), w2.clone(), w1.scale(&z), w2.scale(&z)]), 4);
        assert_eq!(z_rank(&[w1.clone(), w1.scale(&QuadExt::from(rat(-1, 1)))]), 1);
        assert_eq!(z_rank(&[]), 0);
        assert_eq!(z_rank(&cm_extended_differentials(&f)), 4);
    }

    #[test]
    fn printed_forms_are_not_constant_multiples() {
        let f = build_family().unwrap();
        let printed = printed_pullbacks(f.curve.k());
        let w = [pullback_differential(&f.p1), pullback_differential(&f.p2)];
        for i in 0..2 {
            let (_, constant) = compare_with_printed(&w[i], &printed[i]);
            assert!(!constant);
        }
        // The printed P₂ numerator shares the factor 2T − 1 with the Wronskian.
        assert_eq!(printed[1].w.num().eval(&rat(1, 2)), rat(0, 1));
        let pq: Vec<_> = printed.iter().map(HolDifferential::to_quad).collect();
        assert_eq!(z_rank(&pq), 2);
    }

    #[test]
    fn lambda_additivity_examples() {
        let f = build_family().unwrap();
        let k = f.curve.k();
        let c = lambda_homomorphism_check(k, &f.p1, &f.p2).unwrap();
        assert!(c.holds());
        assert_eq!(c.w_sum.w, RationalFunction::from_poly(qp(&[42, 0, -42])));
        let c = lambda_homomorphism_check(k, &f.p1, &f.p1).unwrap();
        assert!(c.holds());
        assert_eq!(c.w_sum, c.w_p.scale(&rat(2, 1)));
        let c = lambda_homomorphism_check(k, &f.p1, &f.p1.neg()).unwrap();
        assert!(c.sum.is_none());
        assert!(c.w_sum.is_zero() && c.holds());
    }

    #[test]
    fn lambda_additivity_over_q_omega() {
        let f = build_family().unwrap();
        let k = f.curve.k().map(|c| QuadExt::from(c.clone()));
        let p = cm_twist(&f.p1.to_quad());
        let q = f.p2.to_quad();
        assert!(lambda_homomorphism_check(&k, &p, &q).unwrap().holds());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10))]

        #[test]
        fn lambda_is_additive_on_combinations(m in -2i64..=2, n in -2i64..=2, s in -1i64..=1, t in -1i64..=1) {
            let f = build_family().unwrap();
            let k = f.curve.k();
            let w1 = pullback_differential(&f.p1);
            let w2 = pullback_differential(&f.p2);
            let a = combination(k, &f.p1, m, &f.p2, n).unwrap();
            let b = combination(k, &f.p1, s, &f.p2, t).unwrap();
            let wa = a.as_ref().map_or_else(HolDifferential::zero, pullback_differential);
            prop_assert_eq!(&wa, &w1.scale(&rat(m, 1)).add(&w2.scale(&rat(n, 1))));
            if let (Some(a), Some(b)) = (a, b) {
                if !(a.x.clone() + a.y.clone()).is_zero() && !(b.x.clone() + b.y.clone()).is_zero() {
                    prop_assert!(lambda_homomorphism_check(k, &a, &b).unwrap().holds());
                }
            }
        }

        #[test]
        fn holomorphy_of_quadratic_sections(a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9, e in -9i64..9, g in -9i64..9) {
            // Any pair of quadratics defines a section of X³ + Y³ = x³ + y³.
            let x = qp(&[a, b, c]);
            let y = qp(&[d, e, g]);
            let k = x.pow(3) + y.pow(3);
            prop_assume!(!k.is_zero());
            let p = SectionPoint::polynomial(&k, x, y).unwrap();
            let w = pullback_differential(&p);
            prop_assert!(w.w.is_polynomial());
            prop_assert!(w.w.num().degree().map_or(true, |d| d <= 2));
        }
    }
}
