//! Factorization of univariate polynomials over Q.
//!
//! Squarefree decomposition over Q, then for each squarefree part:
//! factorization modulo a small prime ℓ, linear Hensel lifting to a power of
//! ℓ above the Landau–Mignotte bound, and recombination of lifted factors by
//! trial division.

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fp_poly::PrimeField;
use super::integer::next_prime;
use super::poly::{primitive_part, to_integer, to_rational};
use super::{Integer, Polynomial, Rational};

/// `f = unit · Π factorᵢ^{eᵢ}` with primitive irreducible integer factors of
/// positive leading coefficient, sorted by degree then coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(Polynomial<Integer>, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Polynomial<Rational> {
        self.factors.iter().fold(
            Polynomial::constant(self.unit.clone()),
            |acc, (f, e)| acc * to_rational(f).pow(*e),
        )
    }

    /// Factors repeated by multiplicity.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, e)| std::iter::repeat(f.degree().unwrap_or(0)).take(*e as usize))
            .collect();
        v.sort();
        v
    }

    /// Product form such as `2*(u - 1)^2*(u^2 + 1)`, readable by the parser.
    pub fn display_with(&self, var: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        if !self.unit.is_one() || self.factors.is_empty() {
            parts.push(super::rat_string(&self.unit));
        }
        for (f, e) in &self.factors {
            let body = format!("({})", f.display_with(var));
            parts.push(if *e == 1 { body } else { format!("{body}^{e}") });
        }
        parts.join("*")
    }
}

pub fn factor_over_q(f: &Polynomial<Rational>) -> Factorization {
    let (unit, prim) = primitive_part(f);
    if prim.degree().unwrap_or(0) == 0 {
        return Factorization {
            unit: if f.is_zero() { Rational::zero() } else { f.coeff(0) },
            factors: Vec::new(),
        };
    }
    let mut factors = Vec::new();
    for (part, e) in to_rational(&prim).squarefree_decomposition() {
        let (_, sq) = primitive_part(&part);
        for g in factor_squarefree(&sq) {
            factors.push((g, e));
        }
    }
    factors.sort_by(|(a, ea), (b, eb)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
            .then(ea.cmp(eb))
    });
    // Recover the unit exactly from the leading coefficients.
    let lc_prod = factors.iter().fold(Integer::one(), |acc, (g, e)| {
        acc * g.leading().expect("nonzero").pow(*e)
    });
    let unit = unit * Rational::from_integer(prim.leading().expect("nonzero").clone())
        / Rational::from_integer(lc_prod);
    Factorization { unit, factors }
}

/// True for irreducible polynomials of positive degree over Q.
pub fn is_irreducible_over_q(f: &Polynomial<Rational>) -> bool {
    let fac = factor_over_q(f);
    fac.factors.len() == 1 && fac.factors[0].1 == 1
}

type ZPoly = Vec<Integer>;

fn trim(mut f: ZPoly) -> ZPoly {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

fn reduce(f: &[Integer], m: &Integer) -> ZPoly {
    trim(f.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(f: &[Integer], m: &Integer) -> ZPoly {
    let half = m / 2;
    trim(
        f.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn zmul(f: &[Integer], g: &[Integer]) -> ZPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Integer::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    trim(out)
}

fn zsub(f: &[Integer], g: &[Integer]) -> ZPoly {
    let n = f.len().max(g.len());
    trim(
        (0..n)
            .map(|i| {
                f.get(i).cloned().unwrap_or_default() - g.get(i).cloned().unwrap_or_default()
            })
            .collect(),
    )
}

fn zadd(f: &[Integer], g: &[Integer]) -> ZPoly {
    let n = f.len().max(g.len());
    trim(
        (0..n)
            .map(|i| {
                f.get(i).cloned().unwrap_or_default() + g.get(i).cloned().unwrap_or_default()
            })
            .collect(),
    )
}

fn to_fp(f: &[Integer], field: &PrimeField) -> Vec<u64> {
    let m = Integer::from(field.p);
    field.trim(
        f.iter()
            .map(|c| c.mod_floor(&m).to_u64().expect("reduced"))
            .collect(),
    )
}

fn from_fp(f: &[u64]) -> ZPoly {
    f.iter().map(|&c| Integer::from(c)).collect()
}

/// Lifts `target ≡ a·b (mod ℓ)`, `a` monic and coprime to `b`, to a
/// factorization modulo `ℓ^k`.
fn hensel_lift(
    target: &[Integer],
    a: &[u64],
    b: &[u64],
    field: &PrimeField,
    k: u32,
) -> (ZPoly, ZPoly) {
    let ell = Integer::from(field.p);
    let (g, _s, t) = field.ext_gcd(a, b);
    debug_assert_eq!(g, vec![1]);
    let mut big_a = from_fp(a);
    let mut big_b = from_fp(b);
    let mut modulus = ell.clone();
    for _ in 1..k {
        let next = &modulus * &ell;
        let diff = reduce(&zsub(target, &zmul(&big_a, &big_b)), &next);
        let e: ZPoly = diff.iter().map(|c| c / &modulus).collect();
        let e = to_fp(&e, field);
        let alpha = field.rem(&field.mul(&e, &t), a);
        let beta = field.div_rem(&field.sub(&e, &field.mul(&alpha, b)), a).0;
        let scale = |v: &[u64]| -> ZPoly { v.iter().map(|&c| Integer::from(c) * &modulus).collect() };
        big_a = reduce(&zadd(&big_a, &scale(&alpha)), &next);
        big_b = reduce(&zadd(&big_b, &scale(&beta)), &next);
        modulus = next;
    }
    (big_a, big_b)
}

fn choose_prime(g: &[Integer]) -> (PrimeField, Vec<Vec<u64>>) {
    let lc = g.last().expect("nonzero");
    let mut best: Option<(PrimeField, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    let mut ell = 2u64;
    while tried < 6 {
        ell = next_prime(ell);
        if (lc % Integer::from(ell)).is_zero() {
            continue;
        }
        let field = PrimeField::new(ell);
        let gb = to_fp(g, &field);
        if field.gcd(&gb, &field.derivative(&gb)).len() != 1 {
            continue;
        }
        tried += 1;
        let facs = field.factor_squarefree(&field.monic(&gb));
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((field, facs));
        }
        if best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best.expect("a suitable prime exists")
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn positive_primitive(f: &[Integer]) -> Polynomial<Integer> {
    let mut g = f.iter().fold(Integer::zero(), |acc, c| acc.gcd(c));
    if f.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    Polynomial::new(f.iter().map(|c| c / &g).collect())
}

/// Irreducible factors of a primitive squarefree integer polynomial.
fn factor_squarefree(g: &Polynomial<Integer>) -> Vec<Polynomial<Integer>> {
    let n = g.degree().expect("nonzero");
    if n <= 1 {
        return vec![g.clone()];
    }
    let coeffs: ZPoly = g.coeffs().to_vec();
    let (field, modular) = choose_prime(&coeffs);
    if modular.len() == 1 {
        return vec![g.clone()];
    }
    let lc = coeffs.last().expect("nonzero").clone();

    // Landau–Mignotte: every factor coefficient ≤ 2^n ‖g‖₂; scaled by |lc|.
    let norm2: Integer = coeffs.iter().map(|c| c * c).sum();
    let bound = (norm2.sqrt() + 1u32) * (Integer::one() << n) * lc.abs();
    let ell = Integer::from(field.p);
    let mut k = 1u32;
    let mut modulus = ell.clone();
    while modulus <= &bound * 2u32 {
        modulus *= &ell;
        k += 1;
    }

    // Sequential two-factor lifting.
    let mut lifted: Vec<ZPoly> = Vec::new();
    let mut rest_target: ZPoly = reduce(&coeffs, &modulus);
    let mut rest_mod = to_fp(&coeffs, &field);
    for f in &modular[..modular.len() - 1] {
        let b = field.div_rem(&rest_mod, f).0;
        let (a_lift, b_lift) = hensel_lift(&rest_target, f, &b, &field, k);
        lifted.push(a_lift);
        rest_target = b_lift;
        rest_mod = b;
    }
    let lc_inv = lc.extended_gcd(&modulus).x.mod_floor(&modulus);
    lifted.push(reduce(
        &rest_target.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(),
        &modulus,
    ));

    let mut out = Vec::new();
    let mut remaining: Vec<ZPoly> = lifted;
    let mut current = to_rational(g);
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found = false;
        let cur_lc = to_integer(&current).expect("integral")
            .leading()
            .expect("nonzero")
            .clone();
        for combo in combinations(remaining.len(), s) {
            let prod = combo
                .iter()
                .fold(vec![cur_lc.clone()], |acc, &i| reduce(&zmul(&acc, &remaining[i]), &modulus));
            let cand = positive_primitive(&symmetric(&prod, &modulus));
            let cand_q = to_rational(&cand);
            if let Some(q) = current.exact_div(&cand_q) {
                if to_integer(&q).is_some() {
                    out.push(cand);
                    current = q;
                    remaining = remaining
                        .into_iter()
                        .enumerate()
                        .filter(|(i, _)| !combo.contains(i))
                        .map(|(_, f)| f)
                        .collect();
                    found = true;
                    break;
                }
            }
        }
        if !found {
            s += 1;
        }
    }
    if current.degree().unwrap_or(0) > 0 {
        let (_, prim) = primitive_part(&current);
        out.push(prim);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(cs: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_i64s(cs)
    }

    fn zp(cs: &[i64]) -> Polynomial<Integer> {
        Polynomial::from_i64s(cs)
    }

    #[test]
    fn family_polynomial_splits_into_three_quadratics() {
        let k = qp(&[189, -567, 630, -315, 630, -567, 189]);
        let fac = factor_over_q(&k);
        assert_eq!(fac.unit, Rational::from_integer(Integer::from(63)));
        let mut polys: Vec<_> = fac.factors.iter().map(|(f, _)| f.clone()).collect();
        polys.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
        let mut expected = vec![zp(&[1, -3, 3]), zp(&[1, 1, 1]), zp(&[3, -3, 1])];
        expected.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
        assert_eq!(polys, expected);
        assert_eq!(fac.expand(), k);
    }

    #[test]
    fn x6_minus_1() {
        let fac = factor_over_q(&qp(&[-1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(fac.degree_multiset(), vec![1, 1, 2, 2]);
        assert_eq!(fac.expand(), qp(&[-1, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn quartic_reducible_modulo_every_prime_is_irreducible() {
        // x⁴ + 1 factors modulo every prime but not over Q.
        assert!(is_irreducible_over_q(&qp(&[1, 0, 0, 0, 1])));
        assert!(is_irreducible_over_q(&qp(&[1, 0, 34, 0, 83521])));
    }

    #[test]
    fn repeated_factors_and_content() {
        // 3(17u − 1)²(17u + 1)²(83521u⁴ + 34u² + 1)/2
        let base = qp(&[-1, 17]).pow(2) * qp(&[1, 17]).pow(2) * qp(&[1, 0, 34, 0, 83521]);
        let f = base.scale(&Rational::new(3.into(), 2.into()));
        let fac = factor_over_q(&f);
        assert_eq!(fac.unit, Rational::new(3.into(), 2.into()));
        assert_eq!(
            fac.factors,
            vec![
                (zp(&[-1, 17]), 2),
                (zp(&[1, 17]), 2),
                (zp(&[1, 0, 34, 0, 83521]), 1)
            ]
        );
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn swinnerton_dyer_like_product() {
        // (x² − 2)(x² − 3)(x² + x + 5)(2x³ − x + 7)
        let f = qp(&[-2, 0, 1]) * qp(&[-3, 0, 1]) * qp(&[5, 1, 1]) * qp(&[7, -1, 0, 2]);
        let fac = factor_over_q(&f);
        assert_eq!(fac.degree_multiset(), vec![2, 2, 2, 3]);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn negative_leading_coefficient() {
        let f = qp(&[1, 0, -1]);
        let fac = factor_over_q(&f);
        assert_eq!(fac.unit, Rational::from_integer((-1).into()));
        assert_eq!(fac.expand(), f);
    }
}
