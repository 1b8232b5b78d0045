//! The elliptic surface `v² = u³ − 432k(T)²` over P¹.
//!
//! With `j = 0` and residue characteristic zero every fiber is tame, so the
//! Kodaira type depends only on `v(A)`. Places are the irreducible factors of
//! `k` over Q together with ∞, each weighted by its degree when counting
//! geometric fibers.

use std::fmt;

use crate::arith::factor::{factor_over_q, is_irreducible_over_q};
use crate::arith::poly::to_rational;
use crate::arith::{Integer, Polynomial, Rational};
use crate::function_field::{
    build_family, cm_extended_differentials, lfunction, rank_bounds, z_rank, LMethod,
};
use crate::error::{Error, Result};

type Q = Rational;

/// Largest possible Picard number of a K3 surface in characteristic zero.
pub const K3_PICARD_MAX: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    /// Monic irreducible factor of the discriminant locus.
    Finite(Polynomial<Q>),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(f) => f.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(g) => write!(f, "{}", g.display_with("T")),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    I0,
    II,
    IV,
    I0Star,
    IVStar,
    IIStar,
    /// `v(A) ≥ 6`; the model is not minimal at this place.
    NonMinimal,
}

impl KodairaType {
    /// `(m, e)` for a tame place with `v(A) = v` on a `j = 0` surface.
    fn from_valuation(v: u32) -> (Self, u32, u32) {
        match v {
            0 => (KodairaType::I0, 1, 0),
            1 => (KodairaType::II, 1, 2),
            2 => (KodairaType::IV, 3, 4),
            3 => (KodairaType::I0Star, 5, 6),
            4 => (KodairaType::IVStar, 7, 8),
            5 => (KodairaType::IIStar, 9, 10),
            _ => (KodairaType::NonMinimal, 0, 0),
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            KodairaType::I0 => "I0",
            KodairaType::II => "II",
            KodairaType::IV => "IV",
            KodairaType::I0Star => "I0*",
            KodairaType::IVStar => "IV*",
            KodairaType::IIStar => "II*",
            KodairaType::NonMinimal => "non-minimal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KodairaFiber {
    pub place: Place,
    /// Valuation of `A = −432k²` at the place.
    pub v_a: u32,
    pub kind: KodairaType,
    /// Number of components.
    pub m: u32,
    /// Euler contribution of one geometric fiber.
    pub e: u32,
    /// Conductor exponent.
    pub f: u32,
}

impl KodairaFiber {
    pub fn new(place: Place, v_a: u32) -> Self {
        let (kind, m, e) = KodairaType::from_valuation(v_a);
        // Additive reduction is tame in characteristic zero.
        let f = if kind == KodairaType::I0 { 0 } else { 2 };
        KodairaFiber {
            place,
            v_a,
            kind,
            m,
            e,
            f,
        }
    }

    pub fn is_bad(&self) -> bool {
        self.kind != KodairaType::I0
    }

    pub fn degree(&self) -> usize {
        self.place.degree()
    }
}

/// `χ` for a squarefree `k` of degree `d`: the least weight with
/// `deg A = 2d ≤ 6χ`.
pub fn euler_characteristic_weight(d: usize) -> usize {
    (2 * d).div_ceil(6)
}

/// Bad fibers of `v² = u³ − 432k²`, finite places first, ∞ last if bad.
pub fn classify_fibers(k: &Polynomial<Q>) -> Result<Vec<KodairaFiber>> {
    let d = k
        .degree()
        .ok_or_else(|| Error::InvalidInput("k must be nonzero".into()))?;
    let g = k.gcd(&k.derivative());
    if g.degree().unwrap_or(0) > 0 {
        return Err(Error::NotSquarefree(g.display_with("T")));
    }
    let mut fibers = Vec::new();
    for (f, e) in factor_over_q(k).factors {
        let place = to_rational(&f).monic();
        debug_assert_eq!(e, 1);
        if !is_irreducible_over_q(&place) {
            return Err(Error::Stage {
                stage: "factor".into(),
                detail: format!("{} is not irreducible", place.display_with("T")),
            });
        }
        // A simple root of k is a double root of A.
        fibers.push(KodairaFiber::new(Place::Finite(place), 2 * e));
    }
    fibers.sort_by(|a, b| {
        (a.degree(), a.place.to_string()).cmp(&(b.degree(), b.place.to_string()))
    });
    let chi = euler_characteristic_weight(d);
    let v_inf = (6 * chi - 2 * d) as u32;
    let inf = KodairaFiber::new(Place::Infinity, v_inf);
    if inf.is_bad() {
        fibers.push(inf);
    }
    Ok(fibers)
}

/// Degree-weighted Euler number; K3 iff it is 24 on a minimal model.
pub fn euler_and_k3(fibers: &[KodairaFiber]) -> Result<(Integer, bool)> {
    if let Some(bad) = fibers.iter().find(|f| f.kind == KodairaType::NonMinimal) {
        return Err(Error::NonMinimal(bad.place.to_string()));
    }
    let e: usize = fibers.iter().map(|f| f.e as usize * f.degree()).sum();
    if e == 0 || e % 12 != 0 {
        return Err(Error::InconsistentFibers(format!(
            "Euler number {e} is not a positive multiple of 12"
        )));
    }
    Ok((Integer::from(e), e == 24))
}

/// Number of geometric bad fibers, counted with place degree.
pub fn geometric_fiber_count(fibers: &[KodairaFiber]) -> usize {
    fibers.iter().filter(|f| f.is_bad()).map(KodairaFiber::degree).sum()
}

/// `ρ = r + 2 + Σ (m_v − 1)` over geometric fibers.
pub fn shioda_tate(r: usize, fibers: &[KodairaFiber]) -> usize {
    r + 2
        + fibers
            .iter()
            .filter(|f| f.is_bad())
            .map(|f| (f.m as usize - 1) * f.degree())
            .sum::<usize>()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceReport {
    pub k: Polynomial<Q>,
    pub fibers: Vec<KodairaFiber>,
    pub euler_number: Integer,
    pub chi: Integer,
    pub is_k3: bool,
    pub picard: usize,
    /// Geometric Mordell–Weil rank fed to Shioda–Tate.
    pub rank_input: usize,
    /// Upper bound on the geometric rank from L at `confirm_prime`.
    pub rank_upper_bound: Option<(u64, usize)>,
}

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    /// Surface coefficient; Ramanujan's sextic when absent.
    pub k: Option<Polynomial<Q>>,
    /// Geometric rank; derived from the CM-extended sections when absent.
    pub rank: Option<usize>,
    /// Prime at which L bounds the rank from above.
    pub confirm_prime: Option<u64>,
}

fn stage<T>(name: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Stage {
        stage: name.into(),
        detail: e.to_string(),
    })
}

/// Full pipeline on Ramanujan's surface, with the rank bound at p = 17.
pub fn analyze() -> Result<SurfaceReport> {
    analyze_with(&AnalyzeOptions {
        confirm_prime: Some(17),
        ..AnalyzeOptions::default()
    })
}

pub fn analyze_with(opts: &AnalyzeOptions) -> Result<SurfaceReport> {
    let family = stage("family", build_family())?;
    let k = opts.k.clone().unwrap_or_else(|| family.curve.k().clone());
    let is_family = &k == family.curve.k();
    let fibers = stage("classify_fibers", classify_fibers(&k))?;
    let (euler_number, is_k3) = stage("euler_and_k3", euler_and_k3(&fibers))?;
    let chi = &euler_number / Integer::from(12);

    let rank_input = match opts.rank {
        Some(r) => r,
        None if is_family => z_rank(&cm_extended_differentials(&family)),
        None => {
            return Err(Error::Stage {
                stage: "rank".into(),
                detail: "a geometric rank is required for a custom k".into(),
            })
        }
    };
    let rank_upper_bound = match opts.confirm_prime {
        Some(p) => {
            let curve = stage("curve", crate::function_field::FunctionFieldCurve::new(k.clone()))?;
            let l = stage("lfunction", lfunction(&curve, p, LMethod::FunctionalEquation))?;
            let (_, geom) = rank_bounds(&l);
            if rank_input > geom {
                return Err(Error::Stage {
                    stage: "rank_bounds".into(),
                    detail: format!("rank {rank_input} exceeds the bound {geom} at p = {p}"),
                });
            }
            Some((p, geom))
        }
        None => None,
    };
    let picard = shioda_tate(rank_input, &fibers);
    if is_k3 && picard > K3_PICARD_MAX {
        return Err(Error::Stage {
            stage: "shioda_tate".into(),
            detail: format!("Picard number {picard} exceeds {K3_PICARD_MAX}"),
        });
    }
    Ok(SurfaceReport {
        k,
        fibers,
        euler_number,
        chi,
        is_k3,
        picard,
        rank_input,
        rank_upper_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn qp(cs: &[i64]) -> Polynomial<Q> {
        Polynomial::from_i64s(cs)
    }

    fn family_k() -> Polynomial<Q> {
        build_family().unwrap().curve.k().clone()
    }

    #[test]
    fn family_has_three_quadratic_places_of_type_iv() {
        let fibers = classify_fibers(&family_k()).unwrap();
        assert_eq!(fibers.len(), 3);
        assert!(fibers.iter().all(|f| f.kind == KodairaType::IV && f.degree() == 2));
        assert!(fibers.iter().all(|f| f.m == 3 && f.e == 4 && f.f == 2 && f.v_a == 2));
        let places: Vec<Polynomial<Q>> = fibers
            .iter()
            .map(|f| match &f.place {
                Place::Finite(g) => g.clone(),
                Place::Infinity => unreachable!(),
            })
            .collect();
        for g in [qp(&[1, -3, 3]).monic(), qp(&[1, 1, 1]), qp(&[3, -3, 1])] {
            assert!(places.contains(&g), "{g}");
        }
        assert_eq!(geometric_fiber_count(&fibers), 6);
        assert_eq!(euler_and_k3(&fibers).unwrap(), (Integer::from(24), true));
        assert_eq!(shioda_tate(4, &fibers), 18);
        assert_eq!(shioda_tate(2, &fibers), 16);
    }

    #[test]
    fn t6_minus_1_has_six_geometric_fibers() {
        let fibers = classify_fibers(&qp(&[-1, 0, 0, 0, 0, 0, 1])).unwrap();
        let degs: Vec<usize> = fibers.iter().map(KodairaFiber::degree).collect();
        assert_eq!(degs, vec![1, 1, 2, 2]);
        assert!(fibers.iter().all(|f| f.kind == KodairaType::IV));
        assert!(!fibers.iter().any(|f| f.place == Place::Infinity));
        assert_eq!(geometric_fiber_count(&fibers), 6);
    }

    #[test]
    fn non_squarefree_rejected() {
        let k = qp(&[0, 0, 1]) * qp(&[1, 1, 1]) * qp(&[3, -3, 1]);
        assert!(matches!(classify_fibers(&k), Err(Error::NotSquarefree(_))));
    }

    #[test]
    fn rational_surfaces_from_low_degree() {
        // deg k = 3: three IV at finite places, ∞ good.
        let f3 = classify_fibers(&qp(&[1, 0, 0, 1])).unwrap();
        assert_eq!(euler_and_k3(&f3).unwrap(), (Integer::from(12), false));
        assert!(!f3.iter().any(|f| f.place == Place::Infinity));
        // deg k = 1: v∞ = 4 gives IV* at ∞.
        let f1 = classify_fibers(&qp(&[1, 1])).unwrap();
        assert_eq!(f1.last().unwrap().kind, KodairaType::IVStar);
        assert_eq!(euler_and_k3(&f1).unwrap(), (Integer::from(12), false));
        // deg k = 5: v∞ = 2, still K3.
        let f5 = classify_fibers(&qp(&[1, 0, 0, 0, 1, 1])).unwrap();
        assert_eq!(f5.last().unwrap().kind, KodairaType::IV);
        assert!(euler_and_k3(&f5).unwrap().1);
    }

    #[test]
    fn degenerate_fiber_lists_rejected() {
        assert!(matches!(euler_and_k3(&[]), Err(Error::InconsistentFibers(_))));
        let bad = vec![KodairaFiber::new(Place::Infinity, 6)];
        assert!(matches!(euler_and_k3(&bad), Err(Error::NonMinimal(_))));
        assert_eq!(shioda_tate(0, &[]), 2);
    }

    #[test]
    fn kodaira_table_matches_discriminant_valuation() {
        // For j = 0, Δ ∝ A², so e = v(Δ) = 2v(A) whenever the fiber is bad.
        for v in 1..6 {
            let f = KodairaFiber::new(Place::Infinity, v);
            assert_eq!(f.e, 2 * v);
        }
        let fibers = classify_fibers(&family_k()).unwrap();
        let disc_degree: usize = fibers.iter().map(|f| 2 * f.v_a as usize * f.degree()).sum();
        assert_eq!(disc_degree, 24);
    }

    #[test]
    fn analyze_without_confirmation() {
        let r = analyze_with(&AnalyzeOptions::default()).unwrap();
        assert_eq!(r.rank_input, 4);
        assert_eq!(r.picard, 18);
        assert!(r.is_k3);
        assert_eq!(r.chi, Integer::from(2));
        let custom = analyze_with(&AnalyzeOptions {
            k: Some(qp(&[-1, 0, 0, 0, 0, 0, 1])),
            ..Default::default()
        });
        assert!(matches!(custom, Err(Error::Stage { .. })));
    }

    fn arb_fiber() -> impl Strategy<Value = KodairaFiber> {
        (1u32..6, 1usize..4).prop_map(|(v, d)| {
            let mut cs = vec![rat(1, 1); d + 1];
            cs[0] = rat(2, 1);
            KodairaFiber::new(Place::Finite(Polynomial::new(cs)), v)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10))]

        #[test]
        fn shioda_tate_matches_hand_count(fibers in prop::collection::vec(arb_fiber(), 0..8), r in 0usize..6) {
            let mut expected = r + 2;
            for f in &fibers {
                let m = [1, 1, 3, 5, 7, 9][f.v_a as usize];
                expected += (m - 1) * f.degree();
            }
            prop_assert_eq!(shioda_tate(r, &fibers), expected);
            prop_assert!(shioda_tate(r + 1, &fibers) > shioda_tate(r, &fibers));
            let mut more = fibers.clone();
            more.push(KodairaFiber::new(Place::Infinity, 2));
            prop_assert!(shioda_tate(r, &more) > shioda_tate(r, &fibers));
        }

        #[test]
        fn translation_invariance(c in -20i64..20, d in 1i64..5) {
            let k = family_k();
            let shift = Polynomial::new(vec![rat(c, d), rat(1, 1)]);
            let moved = k.compose(&shift);
            let a = classify_fibers(&k).unwrap();
            let b = classify_fibers(&moved).unwrap();
            let key = |fs: &[KodairaFiber]| {
                let mut v: Vec<(KodairaType, usize)> = fs.iter().map(|f| (f.kind, f.degree())).collect();
                v.sort();
                v
            };
            prop_assert_eq!(key(&a), key(&b));
            for f in &a {
                if let Place::Finite(g) = &f.place {
                    let g_moved = Place::Finite(g.compose(&shift).monic());
                    prop_assert!(b.iter().any(|h| h.place == g_moved));
                }
            }
        }
    }
}
