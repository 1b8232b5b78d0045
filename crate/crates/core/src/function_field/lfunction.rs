//! L-function of `v² = u³ − 432k(T)²` over F_p(T).
//!
//! `L(u) = exp(Σ cₙ uⁿ/n)` where `cₙ = Σ_{t ∈ P¹(F_{pⁿ})} aₙ(t)`, with
//! `aₙ(t) = pⁿ + 1 − #E_t(F_{pⁿ})` at good fibers and 0 at the additive
//! fibers `k(t) = 0`. The fiber at ∞ is `v² = u³ − 432·lc(k)²`. With six tame
//! additive places of conductor exponent 2, `L` is a polynomial of degree 8
//! satisfying `a_{8−i} = ε·p^{8−2i}·aᵢ`.

use num_complex::Complex64;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::FunctionFieldCurve;
use crate::arith::factor::{factor_over_q, Factorization};
use crate::arith::finite_field::{ClassTable, CLASS_TABLE_LIMIT};
use crate::arith::poly::discriminant;
use crate::arith::{FfElem, FiniteField, Integer, Polynomial, Rational};
use crate::elliptic::counting::build_trace_table;
use crate::error::{Error, Result};

/// Degree of L for a squarefree sextic k.
pub const L_DEGREE: usize = 8;

/// Largest field counted through sextic symbols when no class table fits.
const SYMBOL_COUNT_LIMIT: u64 = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LMethod {
    /// c₁..c₄ counted, the rest from the functional equation, checked
    /// against c₅ and c₆.
    FunctionalEquation,
    /// c₁..c₈ all counted.
    Direct,
}

/// `L(u) = Σ aᵢuⁱ` with `a₀ = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LPolynomial {
    pub p: u64,
    pub coeffs: Vec<Integer>,
    /// Sign of the functional equation, when it holds.
    pub sign: Option<i8>,
    /// `(n, cₙ)` obtained from point counts.
    pub counted: Vec<(usize, Integer)>,
    pub method: Option<LMethod>,
}

fn qpoly(cs: &[Integer]) -> Polynomial<Rational> {
    Polynomial::new(cs.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

/// `aₙ` from `c₁..c_N` by `n·aₙ = Σ_{i=1..n} cᵢ·a_{n−i}`.
fn coeffs_from_power_sums(c: &[Integer]) -> Result<Vec<Integer>> {
    let mut a = vec![Integer::one()];
    for n in 1..=c.len() {
        let s: Integer = (1..=n).map(|i| &c[i - 1] * &a[n - i]).sum();
        let (q, r) = s.div_rem(&Integer::from(n));
        if !r.is_zero() {
            return Err(Error::VerificationFailed {
                index: n,
                detail: "power sums do not give integral coefficients".into(),
            });
        }
        a.push(q);
    }
    Ok(a)
}

fn pow_int(p: u64, e: usize) -> Integer {
    Integer::from(p).pow(e as u32)
}

impl LPolynomial {
    /// Wraps known coefficients, trailing zeros trimmed.
    pub fn from_coeffs(p: u64, mut coeffs: Vec<Integer>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let mut l = LPolynomial {
            p,
            coeffs,
            sign: None,
            counted: Vec::new(),
            method: None,
        };
        l.sign = l.functional_equation_sign();
        l
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_poly(&self) -> Polynomial<Rational> {
        qpoly(&self.coeffs)
    }

    /// `c₁..c_n` from the coefficients (the logarithmic derivative).
    pub fn power_sums(&self, n: usize) -> Vec<Integer> {
        let a = |i: usize| self.coeffs.get(i).cloned().unwrap_or_default();
        let mut c: Vec<Integer> = Vec::with_capacity(n);
        for m in 1..=n {
            let mut s = Integer::from(m) * a(m);
            for i in 1..m {
                s -= &c[i - 1] * a(m - i);
            }
            c.push(s);
        }
        c
    }

    /// `ε` with `a_{N−i} = ε·p^{N−2i}·aᵢ` for all `i`, if one exists.
    pub fn functional_equation_sign(&self) -> Option<i8> {
        let n = self.degree();
        [1i8, -1].into_iter().find(|&eps| {
            (0..=n).all(|i| {
                let lhs = &self.coeffs[n - i];
                let rhs = &self.coeffs[i] * Integer::from(eps);
                if 2 * i <= n {
                    *lhs == rhs * pow_int(self.p, n - 2 * i)
                } else {
                    lhs * pow_int(self.p, 2 * i - n) == rhs
                }
            })
        })
    }

    pub fn factor(&self) -> Factorization {
        factor_over_q(&self.to_poly())
    }

    /// Product of the factors of `L` dividing some `1 − (pu)^m`, `m ≤ 60`.
    pub fn unitary_part(&self) -> Polynomial<Rational> {
        unitary_split(&self.to_poly(), self.p).0
    }

    /// Absolute values of the inverse roots: exactly `p` for the unitary
    /// part, numerically for the rest.
    pub fn inverse_root_moduli(&self) -> Vec<f64> {
        let (unit, rest) = unitary_split(&self.to_poly(), self.p);
        let p = self.p as f64;
        let mut out = vec![p; unit.degree().unwrap_or(0)];
        for (f, e) in rest.squarefree_decomposition() {
            for g in inverse_roots(&f) {
                for _ in 0..e {
                    out.push(g.norm());
                }
            }
        }
        out
    }

    /// `|γ| = p` for every inverse root, within `tol` relative to `p`.
    pub fn satisfies_weil_bound(&self, tol: f64) -> bool {
        let p = self.p as f64;
        self.inverse_root_moduli()
            .iter()
            .all(|m| (m / p - 1.0).abs() <= tol)
    }

    /// Inverse roots closed under `γ ↦ p²/γ`, checked numerically.
    pub fn roots_closed_under_duality(&self, tol: f64) -> bool {
        let p2 = (self.p * self.p) as f64;
        let (_, rest) = unitary_split(&self.to_poly(), self.p);
        let roots: Vec<Complex64> = rest
            .squarefree_decomposition()
            .iter()
            .flat_map(|(f, _)| inverse_roots(f))
            .collect();
        roots.iter().all(|g| {
            let dual = Complex64::new(p2, 0.0) / g;
            roots.iter().any(|h| (h - dual).norm() <= tol * p2.sqrt())
        })
    }
}

/// Inverse roots of `f` (constant term nonzero): the roots of its reversal.
fn inverse_roots(f: &Polynomial<Rational>) -> Vec<Complex64> {
    let n = match f.degree() {
        None | Some(0) => return Vec::new(),
        Some(n) => n,
    };
    // Monic reversal Σ f_{n−i}/f_0 zⁱ has the inverse roots as roots.
    let f0 = f.coeff(0);
    let monic: Vec<Complex64> = (0..=n)
        .map(|i| {
            let c = f.coeff(n - i) / f0.clone();
            Complex64::new(c.to_f64().expect("finite"), 0.0)
        })
        .collect();
    durand_kerner(&monic)
}

/// Roots of the monic polynomial `Σ cᵢ zⁱ`.
fn durand_kerner(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a);
    let radius = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let seed = Complex64::from_polar(1.0, 0.4);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| seed.powu(k as u32) * radius.min(1e6).sqrt())
        .collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm() / z[i].norm().max(1.0));
        }
        if delta < 1e-15 {
            break;
        }
    }
    // Newton polish on the undeflated polynomial.
    let deriv: Vec<Complex64> = (1..=n).map(|i| c[i] * i as f64).collect();
    let eval_d = |z: Complex64| deriv.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a);
    for zi in z.iter_mut() {
        for _ in 0..4 {
            let d = eval_d(*zi);
            if d.norm() == 0.0 {
                break;
            }
            *zi -= eval(*zi) / d;
        }
    }
    z
}

fn lcm_poly(a: &Polynomial<Rational>, b: &Polynomial<Rational>) -> Polynomial<Rational> {
    let g = a.gcd(b);
    (a.clone() * b.exact_div(&g).expect("gcd divides")).monic()
}

/// Splits `f = U·R` where `U` collects every factor dividing some
/// `1 − (pu)^m`, `m ≤ 60`, with multiplicity.
fn unitary_split(f: &Polynomial<Rational>, p: u64) -> (Polynomial<Rational>, Polynomial<Rational>) {
    let pr = Rational::from_integer(p.into());
    let mut rem = f.clone();
    let mut unit = Polynomial::constant(Rational::one());
    loop {
        let mut u = Polynomial::constant(Rational::one());
        for m in 1..=60usize {
            // 1 − (pu)^m
            let mut cs = vec![Rational::zero(); m + 1];
            cs[0] = Rational::one();
            cs[m] = -pr.pow(m as i32);
            let g = rem.gcd(&Polynomial::new(cs));
            if g.degree().unwrap_or(0) > 0 {
                u = lcm_poly(&u, &g);
            }
        }
        if u.degree().unwrap_or(0) == 0 {
            break;
        }
        rem = rem.exact_div(&u).expect("divides");
        unit = unit * u;
    }
    (unit, rem)
}

/// `(arith_bound, geom_bound)`: the multiplicity of `1 − pu` in `L`, and the
/// number of inverse roots of the form `p·ζ` with `ζ^m = 1`, `m ≤ 60`.
pub fn rank_bounds(l: &LPolynomial) -> (usize, usize) {
    let f = l.to_poly();
    let lin = Polynomial::new(vec![Rational::one(), -Rational::from_integer(l.p.into())]);
    let mut arith = 0;
    let mut rem = f.clone();
    while rem.degree().unwrap_or(0) > 0 {
        match rem.exact_div(&lin) {
            Some(q) => {
                rem = q;
                arith += 1;
            }
            None => break,
        }
    }
    let geom = unitary_split(&f, l.p).0.degree().unwrap_or(0);
    (arith, geom)
}

/// `k` reduced modulo a good prime.
#[derive(Clone, Debug)]
struct ReducedFamily {
    p: u64,
    /// Coefficients of `k mod p`, lowest first.
    k: Vec<u64>,
}

fn reduce_rational(r: &Rational, p: u64) -> Option<u64> {
    let m = Integer::from(p);
    let den = r.denom().mod_floor(&m);
    if den.is_zero() {
        return None;
    }
    let inv = den.extended_gcd(&m).x.mod_floor(&m);
    Some((r.numer().mod_floor(&m) * inv).mod_floor(&m).to_u64().expect("reduced"))
}

impl ReducedFamily {
    fn new(curve: &FunctionFieldCurve, p: u64) -> Result<Self> {
        if p < 5 || !crate::arith::integer::is_prime_u64(p) {
            return Err(Error::BadPrime(p));
        }
        let k = curve.k();
        let coeffs: Option<Vec<u64>> = k.coeffs().iter().map(|c| reduce_rational(c, p)).collect();
        let coeffs = coeffs.ok_or(Error::BadPrime(p))?;
        if coeffs.last() == Some(&0) {
            return Err(Error::BadPrime(p));
        }
        match reduce_rational(&discriminant(k)?, p) {
            Some(d) if d != 0 => {}
            _ => return Err(Error::BadPrime(p)),
        }
        Ok(ReducedFamily { p, k: coeffs })
    }

    /// `cₙ` by counting over `F_{pⁿ}`; `None` flags a field too large to count.
    fn power_sum(&self, n: usize) -> Result<Integer> {
        let q = (self.p as u128).pow(n as u32);
        if q % 3 == 2 {
            // Every good fiber is supersingular: x ↦ x³ is a bijection.
            return Ok(Integer::zero());
        }
        if q > SYMBOL_COUNT_LIMIT as u128 {
            return Err(Error::TooLarge(format!("counting over F_{{{}^{n}}}", self.p)));
        }
        let field = FiniteField::new(self.p, n)?;
        let table = field.class_table();
        let traces = build_trace_table(&field, table.as_ref())?;
        let k: Vec<FfElem> = self.k.iter().map(|&c| field.from_u64(c)).collect();
        let m432 = field.from_i64(-432);
        let lc = *k.last().expect("degree 6");
        let a_inf = field.mul_elem(&m432, &field.mul_elem(&lc, &lc));

        let fiber_trace = |kt: &FfElem, tab: Option<&ClassTable>| -> i64 {
            if field.is_zero_elem(kt) {
                return 0;
            }
            match tab {
                Some(t) => {
                    let c = (t.class_of_index(field.index(&m432)) as u32
                        + 2 * t.class_of_index(field.index(kt)) as u32)
                        % 6;
                    traces.trace_of_class(c as u8)
                }
                None => {
                    let a = field.mul_elem(&m432, &field.mul_elem(kt, kt));
                    traces.lookup(&field, &a).expect("q ≡ 1 mod 6, A ≠ 0")
                }
            }
        };

        let size = field.size();
        let step = size.div_ceil(64).max(1);
        let starts: Vec<u64> = (0..size).step_by(step as usize).collect();
        let affine: i64 = starts
            .into_par_iter()
            .map(|s| {
                let end = (s + step).min(size);
                let mut t = field.from_index(s);
                let mut acc = 0i64;
                for _ in s..end {
                    let mut kt = k[k.len() - 1];
                    for c in k[..k.len() - 1].iter().rev() {
                        kt = field.add_elem(&field.mul_elem(&kt, &t), c);
                    }
                    acc += fiber_trace(&kt, table.as_ref());
                    field.increment(&mut t);
                }
                acc
            })
            .sum();
        let inf = match table.as_ref() {
            Some(t) => traces.trace_of_class(t.class_of_index(field.index(&a_inf))),
            None => traces.lookup(&field, &a_inf)?,
        };
        Ok(Integer::from(affine + inf))
    }
}

/// Computes L over F_p(T) for a good prime `p`.
pub fn lfunction(curve: &FunctionFieldCurve, p: u64, method: LMethod) -> Result<LPolynomial> {
    let fam = ReducedFamily::new(curve, p)?;
    match method {
        LMethod::Direct => lfunction_direct(&fam),
        LMethod::FunctionalEquation => lfunction_fe(&fam),
    }
}

fn direct_feasible(p: u64) -> bool {
    (p as u128).pow(L_DEGREE as u32) <= CLASS_TABLE_LIMIT as u128
}

fn lfunction_direct(fam: &ReducedFamily) -> Result<LPolynomial> {
    let p = fam.p;
    if !direct_feasible(p) {
        return Err(Error::TooLarge(format!("direct L-function at p = {p}")));
    }
    let c: Vec<Integer> = (1..=L_DEGREE).map(|n| fam.power_sum(n)).collect::<Result<_>>()?;
    let a = coeffs_from_power_sums(&c)?;
    let mut l = LPolynomial::from_coeffs(p, a);
    l.counted = c.into_iter().enumerate().map(|(i, v)| (i + 1, v)).collect();
    l.method = Some(LMethod::Direct);
    if l.degree() != L_DEGREE || l.sign.is_none() {
        return Err(Error::Stage {
            stage: "direct L-function".into(),
            detail: format!("degree {} sign {:?}", l.degree(), l.sign),
        });
    }
    Ok(l)
}

fn complete(p: u64, head: &[Integer], eps: i8) -> Vec<Integer> {
    let n = L_DEGREE;
    let mut a = vec![Integer::zero(); n + 1];
    a[..=n / 2].clone_from_slice(&head[..=n / 2]);
    for i in 0..n / 2 {
        a[n - i] = &head[i] * Integer::from(eps) * pow_int(p, n - 2 * i);
    }
    a
}

fn lfunction_fe(fam: &ReducedFamily) -> Result<LPolynomial> {
    let p = fam.p;
    let mut counted: Vec<(usize, Integer)> = Vec::new();
    for n in 1..=L_DEGREE / 2 {
        counted.push((n, fam.power_sum(n)?));
    }
    let c: Vec<Integer> = counted.iter().map(|(_, v)| v.clone()).collect();
    let head = coeffs_from_power_sums(&c)?;

    // a₄ = ε·a₄ settles the sign unless a₄ = 0.
    let mut candidates: Vec<i8> = if head[L_DEGREE / 2].is_zero() {
        vec![1, -1]
    } else {
        vec![1]
    };
    for n in L_DEGREE / 2 + 1..=L_DEGREE / 2 + 2 {
        let cn = fam.power_sum(n)?;
        candidates.retain(|&eps| {
            let l = LPolynomial::from_coeffs(p, complete(p, &head, eps));
            l.power_sums(n)[n - 1] == cn
        });
        counted.push((n, cn));
        if candidates.is_empty() {
            // The shortcut failed its own check; count everything if feasible.
            if direct_feasible(p) {
                return lfunction_direct(fam);
            }
            return Err(Error::Stage {
                stage: "functional equation".into(),
                detail: format!("completion disagrees with counted c{n}"),
            });
        }
    }
    if candidates.len() != 1 {
        return Err(Error::AmbiguousSign);
    }
    let mut l = LPolynomial::from_coeffs(p, complete(p, &head, candidates[0]));
    l.counted = counted;
    l.method = Some(LMethod::FunctionalEquation);
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_field::build_family;

    fn z(n: i64) -> Integer {
        Integer::from(n)
    }

    fn expected_17() -> Vec<Integer> {
        let f = qpoly(&[z(-1), z(17)]).pow(2)
            * qpoly(&[z(1), z(17)]).pow(2)
            * qpoly(&[z(1), z(0), z(34), z(0), z(83521)]);
        f.coeffs().iter().map(|c| c.to_integer()).collect()
    }

    #[test]
    fn newton_identities_round_trip() {
        let l = LPolynomial::from_coeffs(17, expected_17());
        let c = l.power_sums(12);
        assert_eq!(c[1], z(-1088));
        assert!(c.iter().step_by(2).all(Zero::is_zero));
        assert_eq!(coeffs_from_power_sums(&c[..8]).unwrap(), expected_17());
        assert_eq!(l.sign, Some(1));
    }

    #[test]
    fn rank_bounds_examples() {
        let l = LPolynomial::from_coeffs(17, expected_17());
        assert_eq!(rank_bounds(&l), (2, 4));
        assert_eq!(rank_bounds(&LPolynomial::from_coeffs(17, vec![z(1)])), (0, 0));
        // (1 − 5u)(1 + 5u + 25u²) = 1 − 125u³: one unitary root at 5, two at 5ω.
        let l = LPolynomial::from_coeffs(5, vec![z(1), z(0), z(0), z(-125)]);
        assert_eq!(rank_bounds(&l), (1, 3));
    }

    #[test]
    fn weil_and_duality_checks() {
        let l = LPolynomial::from_coeffs(17, expected_17());
        assert!(l.satisfies_weil_bound(1e-9));
        assert!(l.roots_closed_under_duality(1e-9));
        let moduli = l.inverse_root_moduli();
        assert_eq!(moduli.len(), 8);
        let bad = LPolynomial::from_coeffs(17, vec![z(1), z(1), z(1)]);
        assert!(!bad.satisfies_weil_bound(1e-9));
    }

    #[test]
    fn bad_primes_rejected() {
        let f = build_family().unwrap();
        for p in [2, 3, 7, 9, 15] {
            assert!(ReducedFamily::new(&f.curve, p).is_err(), "p = {p}");
        }
        assert!(ReducedFamily::new(&f.curve, 5).is_ok());
        assert!(ReducedFamily::new(&f.curve, 17).is_ok());
    }

    #[test]
    fn p5_shortcut_matches_direct() {
        let f = build_family().unwrap();
        let fe = lfunction(&f.curve, 5, LMethod::FunctionalEquation).unwrap();
        let direct = lfunction(&f.curve, 5, LMethod::Direct).unwrap();
        assert_eq!(fe.coeffs, direct.coeffs);
        assert_eq!(fe.degree(), 8);
        assert!(fe.satisfies_weil_bound(1e-9));
        let c = direct.power_sums(8);
        for (n, cn) in &direct.counted {
            assert_eq!(&c[n - 1], cn);
        }
    }

    #[test]
    fn p17_matches_factored_form() {
        let f = build_family().unwrap();
        let l = lfunction(&f.curve, 17, LMethod::FunctionalEquation).unwrap();
        assert_eq!(l.coeffs, expected_17());
        assert_eq!(l.sign, Some(1));
        let counted: Vec<usize> = l.counted.iter().map(|(n, _)| *n).collect();
        assert_eq!(counted, vec![1, 2, 3, 4, 5, 6]);
        assert!(l.counted.iter().all(|(n, c)| n % 2 == 0 || c.is_zero()));
        assert_eq!(l.counted[1].1, z(-1088));
        assert_eq!(rank_bounds(&l), (2, 4));
        let degs = l.factor().degree_multiset();
        assert_eq!(degs, vec![1, 1, 1, 1, 4]);
    }
}
