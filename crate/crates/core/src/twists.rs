//! Specializations `T = t` of Ramanujan's family and rank-2 certificates.
//!
//! At `t = a/b` the sections give `X³ + Y³ = K` with `K = b⁶k(t)` and
//! `X, Y = b²x(t), b²y(t)`. Writing `K = d·c³` with `d` cube-free and
//! dividing by `c` lands on the twist `X³ + Y³ = d`.
//!
//! A certificate is a good prime `p` at which the reduced points generate a
//! non-cyclic subgroup of `E(F_p)`. For torsion-free `E(Q)` of rank at most 1
//! every such image is cyclic, so a certificate proves rank ≥ 2.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::integer::{factor_u64, is_prime_u64};
use crate::arith::{cubefree_part, FfElem, FiniteField, Integer, Rational};
use crate::elliptic::counting::{count_points, torsion_order_bound};
use crate::elliptic::{CubicTwistCurve, Point, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::function_field::{build_family, Family, SectionPoint};

type Q = Rational;

/// Rational point of `X³ + Y³ = d`.
pub type AffinePoint = (Q, Q);

#[derive(Clone, Debug, PartialEq)]
pub struct TwistRecord {
    pub t: Q,
    pub k_t: Q,
    /// Cube-free integer with `b⁶k(t) = d·c³`.
    pub d: Integer,
    /// The cube root `c` divided out of the coordinates.
    pub scale: Integer,
    pub p1: AffinePoint,
    pub p2: AffinePoint,
    pub certificate: Option<CertificateOutcome>,
}

/// Witness that `⟨P̄₁, P̄₂⟩ ⊂ E(F_p)` is not cyclic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub p: u64,
    pub group_order: u64,
    pub order_p1: u64,
    pub order_p2: u64,
    /// `|⟨P̄₁, P̄₂⟩|`; exceeds the exponent `lcm(order_p1, order_p2)`.
    pub subgroup_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateOutcome {
    Certified(RankCertificate),
    /// No certificate among this many good primes. Not a disproof.
    Exhausted { primes_tried: usize },
}

impl CertificateOutcome {
    pub fn prime(&self) -> Option<u64> {
        match self {
            CertificateOutcome::Certified(c) => Some(c.p),
            CertificateOutcome::Exhausted { .. } => None,
        }
    }
}

fn eval_section(p: &SectionPoint<Q>, t: &Q) -> Result<AffinePoint> {
    p.eval(t)
        .ok_or_else(|| Error::InvalidInput(format!("section has a pole at t = {t}")))
}

/// Evaluates the family at `t` and normalizes to the cube-free twist.
pub fn specialize(t: &Q) -> Result<TwistRecord> {
    specialize_family(&build_family()?, t)
}

pub fn specialize_family(family: &Family, t: &Q) -> Result<TwistRecord> {
    let k_t = family.curve.k().eval(t);
    if k_t.is_zero() {
        return Err(Error::InvalidInput(format!("k({t}) = 0 is not an elliptic curve")));
    }
    let b = Q::from_integer(t.denom().clone());
    let b2 = &b * &b;
    let big_k = &k_t * b2.pow(3);
    if !big_k.is_integer() {
        return Err(Error::InvalidInput("k must have integral coefficients".into()));
    }
    let (d, c) = cubefree_part(&big_k.to_integer())?;
    let cq = Q::from_integer(c.clone());
    let scale = |(x, y): AffinePoint| (x * &b2 / &cq, y * &b2 / &cq);
    let p1 = scale(eval_section(&family.p1, t)?);
    let p2 = scale(eval_section(&family.p2, t)?);
    let curve = CubicTwistCurve::new(Q::from_integer(d.clone()))?;
    for (x, y) in [&p1, &p2] {
        if !curve.contains(x, y) {
            return Err(Error::Stage {
                stage: "specialize".into(),
                detail: format!("({x}, {y}) is not on X³ + Y³ = {d}"),
            });
        }
    }
    Ok(TwistRecord {
        t: t.clone(),
        k_t,
        d,
        scale: c,
        p1,
        p2,
        certificate: None,
    })
}

fn reduce(r: &Q, p: u64) -> Option<u64> {
    let m = Integer::from(p);
    let den = r.denom().mod_floor(&m);
    if den.is_zero() {
        return None;
    }
    let inv = den.extended_gcd(&m).x.mod_floor(&m);
    (r.numer().mod_floor(&m) * inv).mod_floor(&m).to_u64()
}

/// `v² = u³ − 432d²` over F_p with both points reduced, or `None` if a
/// coordinate denominator vanishes mod `p`.
fn reduce_points(
    d: &Integer,
    points: [&Point<Q>; 2],
    p: u64,
) -> Result<Option<(WeierstrassCurve<FiniteField>, [Point<FfElem>; 2])>> {
    let field = FiniteField::prime(p)?;
    let dm = d.mod_floor(&Integer::from(p)).to_u64().expect("reduced");
    let dd = field.from_u64(dm);
    let a = field.mul_elem(&field.from_i64(-432), &field.mul_elem(&dd, &dd));
    let curve = WeierstrassCurve::new(field.clone(), a)?;
    let mut out = [Point::Infinity, Point::Infinity];
    for (slot, pt) in out.iter_mut().zip(points) {
        let Point::Affine(u, v) = pt else {
            return Err(Error::InvalidInput("points must differ from O".into()));
        };
        let (Some(u), Some(v)) = (reduce(u, p), reduce(v, p)) else {
            return Ok(None);
        };
        *slot = curve.point(field.from_u64(u), field.from_u64(v))?;
    }
    Ok(Some((curve, out)))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (q, e) in factor_u64(n) {
        let base = ds.clone();
        let mut pw = 1;
        for _ in 0..e {
            pw *= q;
            ds.extend(base.iter().map(|d| d * pw));
        }
    }
    ds.sort_unstable();
    ds
}

/// Order of `P` given that it divides `n`.
pub fn point_order<K: crate::arith::FieldOps>(
    e: &WeierstrassCurve<K>,
    p: &Point<K::Elem>,
    n: u64,
) -> u64
where
    K::Elem: PartialEq,
{
    let mut ord = n;
    for (q, _) in factor_u64(n) {
        while ord % q == 0 && e.mul_u64(p, ord / q).is_infinity() {
            ord /= q;
        }
    }
    ord
}

/// Baby-step giant-step membership of `Q` in `⟨P⟩`, `|⟨P⟩| = ord`.
fn in_cyclic_subgroup(
    e: &WeierstrassCurve<FiniteField>,
    p: &Point<FfElem>,
    ord: u64,
    q: &Point<FfElem>,
) -> bool {
    let m = (ord as f64).sqrt().ceil() as u64;
    let mut baby: HashMap<Point<FfElem>, u64> = HashMap::new();
    let mut acc = Point::Infinity;
    for j in 0..m {
        baby.entry(acc.clone()).or_insert(j);
        acc = e.add_unchecked(&acc, p);
    }
    let giant = e.neg(&e.mul_u64(p, m));
    let mut g = q.clone();
    for _ in 0..=m {
        if baby.contains_key(&g) {
            return true;
        }
        g = e.add_unchecked(&g, &giant);
    }
    false
}

/// `(|⟨P, Q⟩|, ord P, ord Q)` in a group of order `n`.
pub fn subgroup_structure(
    e: &WeierstrassCurve<FiniteField>,
    p: &Point<FfElem>,
    q: &Point<FfElem>,
    n: u64,
) -> (u64, u64, u64) {
    let op = point_order(e, p, n);
    let oq = point_order(e, q, n);
    // |⟨P, Q⟩| = ord P · [⟨P, Q⟩ : ⟨P⟩], the index being the least m with mQ ∈ ⟨P⟩.
    let index = divisors(oq)
        .into_iter()
        .find(|&m| in_cyclic_subgroup(e, p, op, &e.mul_u64(q, m)))
        .expect("m = ord Q always works");
    (op * index, op, oq)
}

fn lcm(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

/// Searches good primes in increasing order, testing at most `budget`.
pub fn rank2_certificate(record: &TwistRecord, budget: usize) -> Result<CertificateOutcome> {
    certify_points(&record.d, &record.p1, &record.p2, budget)
}

pub fn certify_points(
    d: &Integer,
    p1: &AffinePoint,
    p2: &AffinePoint,
    budget: usize,
) -> Result<CertificateOutcome> {
    if d <= &Integer::from(2) {
        return Err(Error::InvalidInput(format!(
            "d = {d}: torsion-freeness is only available for d > 2"
        )));
    }
    if torsion_order_bound(d)? != 1 {
        return Err(Error::InvalidInput(format!("E_{d}(Q) is not certified torsion-free")));
    }
    let curve = CubicTwistCurve::new(Q::from_integer(d.clone()))?;
    let w1 = curve.to_weierstrass(&p1.0, &p1.1)?;
    let w2 = curve.to_weierstrass(&p2.0, &p2.1)?;
    let six_d = d * Integer::from(6);
    let mut tried = 0;
    let mut p = 4u64;
    while tried < budget {
        p += 1;
        if !is_prime_u64(p) || (&six_d % p).is_zero() {
            continue;
        }
        let Some((e, [a, b])) = reduce_points(d, [&w1, &w2], p)? else {
            continue;
        };
        tried += 1;
        let n = count_points(e.field(), e.a())?;
        let (h, oa, ob) = subgroup_structure(&e, &a, &b, n);
        if h != lcm(oa, ob) {
            return Ok(CertificateOutcome::Certified(RankCertificate {
                p,
                group_order: n,
                order_p1: oa,
                order_p2: ob,
                subgroup_order: h,
            }));
        }
    }
    Ok(CertificateOutcome::Exhausted { primes_tried: tried })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwistTable {
    pub records: Vec<TwistRecord>,
    pub distinct_d: usize,
    pub max_abs_d: Option<Integer>,
}

/// One record per integer `t` in `[from, to]`, optionally certified.
pub fn twist_table(from: i64, to: i64, certify_budget: Option<usize>) -> Result<TwistTable> {
    let family = build_family()?;
    let ts: Vec<i64> = if from <= to { (from..=to).collect() } else { Vec::new() };
    let records: Vec<TwistRecord> = ts
        .into_par_iter()
        .map(|t| -> Result<Option<TwistRecord>> {
            let t = Q::from_integer(t.into());
            if family.curve.k().eval(&t).is_zero() {
                return Ok(None);
            }
            let mut r = specialize_family(&family, &t)?;
            if let Some(budget) = certify_budget {
                r.certificate = Some(if r.d > Integer::from(2) && torsion_order_bound(&r.d)? == 1 {
                    rank2_certificate(&r, budget)?
                } else {
                    CertificateOutcome::Exhausted { primes_tried: 0 }
                });
            }
            Ok(Some(r))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let ds: BTreeSet<&Integer> = records.iter().map(|r| &r.d).collect();
    let max_abs_d = records.iter().map(|r| r.d.abs()).max();
    Ok(TwistTable {
        distinct_d: ds.len(),
        max_abs_d,
        records,
    })
}

impl TwistRecord {
    /// Both points on `X³ + Y³ = d` and `d` cube-free.
    pub fn is_valid(&self) -> bool {
        let Ok(curve) = CubicTwistCurve::new(Q::from_integer(self.d.clone())) else {
            return false;
        };
        crate::arith::integer::is_cubefree(&self.d)
            && curve.contains(&self.p1.0, &self.p1.1)
            && curve.contains(&self.p2.0, &self.p2.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::elliptic::HessePoint;
    use proptest::prelude::*;

    fn pt(a: (i64, i64), b: (i64, i64)) -> AffinePoint {
        (rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn specialization_examples() {
        let r = specialize(&rat(3, 1)).unwrap();
        assert_eq!(r.k_t, rat(46683, 1));
        assert_eq!(r.d, Integer::from(1729));
        assert_eq!(r.p1, pt((46, 3), (-37, 3)));
        assert_eq!(r.p2, pt((10, 1), (9, 1)));
        let r = specialize(&rat(0, 1)).unwrap();
        assert_eq!((r.k_t.clone(), r.d.clone()), (rat(189, 1), Integer::from(7)));
        assert_eq!((r.p1.clone(), r.p2.clone()), (pt((4, 3), (5, 3)), pt((2, 1), (-1, 1))));
        let r = specialize(&rat(2, 1)).unwrap();
        assert_eq!((r.k_t.clone(), r.d.clone()), (rat(3087, 1), Integer::from(9)));
        assert_eq!((r.p1.clone(), r.p2.clone()), (pt((20, 7), (-17, 7)), pt((2, 1), (1, 1))));
        assert!(r.is_valid());
    }

    #[test]
    fn rational_parameters_clear_denominators() {
        let r = specialize(&rat(1, 2)).unwrap();
        assert!(r.is_valid());
        assert_eq!(r.k_t * rat(64, 1), Q::from_integer(&r.d * r.scale.pow(3)));
    }

    #[test]
    fn table_examples() {
        let t = twist_table(0, 3, None).unwrap();
        let ds: Vec<i64> = t.records.iter().map(|r| r.d.to_i64().unwrap()).collect();
        assert_eq!(ds, vec![7, 7, 9, 1729]);
        assert_eq!(t.distinct_d, 3);
        assert_eq!(t.max_abs_d, Some(Integer::from(1729)));
        let one = twist_table(3, 3, None).unwrap();
        assert_eq!(one.records.len(), 1);
        assert_eq!(one.records[0].d, Integer::from(1729));
        let empty = twist_table(4, 3, None).unwrap();
        assert!(empty.records.is_empty());
        assert_eq!((empty.distinct_d, empty.max_abs_d), (0, None));
    }

    #[test]
    fn taxicab_twist_certifies() {
        let r = specialize(&rat(3, 1)).unwrap();
        let CertificateOutcome::Certified(c) = rank2_certificate(&r, 50).unwrap() else {
            panic!("no certificate for d = 1729");
        };
        assert!(c.subgroup_order > lcm(c.order_p1, c.order_p2));
        assert_eq!(c.group_order % c.subgroup_order, 0);
        assert_ne!(6 * 1729 % c.p, 0);
    }

    #[test]
    fn small_d_rejected() {
        let p = pt((1, 1), (1, 1));
        assert!(certify_points(&Integer::from(2), &p, &p, 10).is_err());
    }

    fn multiple(d: i64, p: &AffinePoint, n: i64) -> AffinePoint {
        let curve = CubicTwistCurve::new(rat(d, 1)).unwrap();
        let w = curve.to_weierstrass(&p.0, &p.1).unwrap();
        let m = curve.weierstrass().mul(&w, n);
        match curve.from_weierstrass(&m).unwrap() {
            HessePoint::Affine(x, y) => (x, y),
            HessePoint::Flex => panic!("torsion"),
        }
    }

    #[test]
    fn dependent_points_never_certify() {
        let r = specialize(&rat(3, 1)).unwrap();
        let q = multiple(1729, &r.p2, 2);
        let out = certify_points(&r.d, &r.p2, &q, 40).unwrap();
        assert_eq!(out, CertificateOutcome::Exhausted { primes_tried: 40 });
        let q = multiple(1729, &r.p1, -3);
        let out = certify_points(&r.d, &r.p1, &q, 25).unwrap();
        assert!(matches!(out, CertificateOutcome::Exhausted { .. }));
    }

    /// `⟨P, Q⟩` by closure over all points, and whether it has an element of
    /// full order.
    fn brute_structure(
        e: &WeierstrassCurve<FiniteField>,
        p: &Point<FfElem>,
        q: &Point<FfElem>,
    ) -> (usize, bool) {
        let mut h: Vec<Point<FfElem>> = vec![Point::Infinity];
        let mut frontier = h.clone();
        while let Some(x) = frontier.pop() {
            for g in [p, q] {
                let y = e.add_unchecked(&x, g);
                if !h.contains(&y) {
                    h.push(y.clone());
                    frontier.push(y);
                }
            }
        }
        let n = h.len() as u64;
        let cyclic = h.iter().any(|x| point_order(e, x, n) == n);
        (h.len(), cyclic)
    }

    #[test]
    fn subgroup_structure_matches_enumeration() {
        let d = Integer::from(1729);
        let r = specialize(&rat(3, 1)).unwrap();
        let curve = CubicTwistCurve::new(rat(1729, 1)).unwrap();
        let w1 = curve.to_weierstrass(&r.p1.0, &r.p1.1).unwrap();
        let w2 = curve.to_weierstrass(&r.p2.0, &r.p2.1).unwrap();
        let mut checked = 0;
        for p in (5..200u64).filter(|&p| is_prime_u64(p) && 6 * 1729 % p != 0) {
            let Some((e, [a, b])) = reduce_points(&d, [&w1, &w2], p).unwrap() else {
                continue;
            };
            let n = count_points(e.field(), e.a()).unwrap();
            let (h, oa, ob) = subgroup_structure(&e, &a, &b, n);
            let (bh, bcyc) = brute_structure(&e, &a, &b);
            assert_eq!(h as usize, bh, "p = {p}");
            assert_eq!(h == lcm(oa, ob), bcyc, "p = {p}");
            checked += 1;
        }
        assert!(checked > 30);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn specialization_is_consistent(a in -50i64..50, b in 1i64..20) {
            let t = rat(a, b);
            let f = build_family().unwrap();
            let k = f.curve.k().eval(&t);
            for s in [&f.p1, &f.p2] {
                let (x, y) = s.eval(&t).unwrap();
                prop_assert_eq!(x.pow(3) + y.pow(3), k.clone());
            }
            prop_assert!(specialize(&t).unwrap().is_valid());
        }
    }
}
