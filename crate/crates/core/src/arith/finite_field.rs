//! Finite fields F_{p^n} = F_p\[x\]/(m(x)) with small p.
//!
//! The modulus is the lexicographically smallest monic irreducible of degree
//! n, comparing coefficient tuples from the constant term upward. Elements
//! are fixed-size coefficient arrays so arithmetic never allocates; the
//! counting kernels rely on this.

use std::fmt;

use super::fp_poly::PrimeField;
use super::integer::{factor_u64, is_prime_u64};
use super::FieldOps;
use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 12;

/// Largest field for which a full discrete-log class table is built.
pub const CLASS_TABLE_LIMIT: u64 = 1 << 26;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FfElem([u32; MAX_DEGREE]);

impl FfElem {
    pub fn coeffs(&self) -> &[u32; MAX_DEGREE] {
        &self.0
    }
}

impl fmt::Debug for FfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.0[..last.max(1)])
    }
}

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    n: usize,
    q: u64,
    /// Monic modulus, `n + 1` coefficients lowest first.
    modulus: Vec<u32>,
    /// `x^n ≡ Σ reduction[i] x^i`.
    reduction: [u64; MAX_DEGREE],
}

impl FiniteField {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        if !is_prime_u64(p) || p >= 1 << 26 {
            return Err(Error::InvalidInput(format!("p = {p} must be a prime below 2^26")));
        }
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::InvalidInput(format!(
                "extension degree {n} outside 1..={MAX_DEGREE}"
            )));
        }
        let q = (p as u128).pow(n as u32);
        if q > u64::MAX as u128 / 2 {
            return Err(Error::TooLarge(format!("field size {p}^{n}")));
        }
        let modulus = smallest_irreducible(p, n);
        let mut reduction = [0u64; MAX_DEGREE];
        for i in 0..n {
            reduction[i] = (p - modulus[i] as u64) % p;
        }
        Ok(FiniteField {
            p: p as u32,
            n,
            q: q as u64,
            modulus,
            reduction,
        })
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn from_u64(&self, a: u64) -> FfElem {
        let mut e = FfElem::default();
        e.0[0] = (a % self.p as u64) as u32;
        e
    }

    pub fn from_i64(&self, a: i64) -> FfElem {
        self.from_u64(a.rem_euclid(self.p as i64) as u64)
    }

    /// Base-p digits of the coefficient vector.
    pub fn index(&self, a: &FfElem) -> u64 {
        let p = self.p as u64;
        a.0[..self.n].iter().rev().fold(0, |acc, &c| acc * p + c as u64)
    }

    pub fn from_index(&self, mut idx: u64) -> FfElem {
        let p = self.p as u64;
        let mut e = FfElem::default();
        for i in 0..self.n {
            e.0[i] = (idx % p) as u32;
            idx /= p;
        }
        e
    }

    /// Advances `a` to the element with the next index (wrapping).
    #[inline]
    pub fn increment(&self, a: &mut FfElem) {
        for i in 0..self.n {
            a.0[i] += 1;
            if a.0[i] < self.p {
                return;
            }
            a.0[i] = 0;
        }
    }

    #[inline]
    pub fn is_zero_elem(&self, a: &FfElem) -> bool {
        a.0[..self.n].iter().all(|&c| c == 0)
    }

    #[inline]
    pub fn add_elem(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let mut out = FfElem::default();
        for i in 0..self.n {
            let s = a.0[i] + b.0[i];
            out.0[i] = if s >= self.p { s - self.p } else { s };
        }
        out
    }

    #[inline]
    pub fn sub_elem(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let mut out = FfElem::default();
        for i in 0..self.n {
            let s = a.0[i] + self.p - b.0[i];
            out.0[i] = if s >= self.p { s - self.p } else { s };
        }
        out
    }

    #[inline]
    pub fn neg_elem(&self, a: &FfElem) -> FfElem {
        let mut out = FfElem::default();
        for i in 0..self.n {
            out.0[i] = if a.0[i] == 0 { 0 } else { self.p - a.0[i] };
        }
        out
    }

    #[inline]
    pub fn mul_elem(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let n = self.n;
        let p = self.p as u64;
        let mut out = FfElem::default();
        if n == 1 {
            out.0[0] = (a.0[0] as u64 * b.0[0] as u64 % p) as u32;
            return out;
        }
        let mut acc = [0u64; 2 * MAX_DEGREE];
        for i in 0..n {
            let ai = a.0[i] as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..n {
                acc[i + j] += ai * b.0[j] as u64;
            }
        }
        for k in (n..2 * n - 1).rev() {
            let c = acc[k] % p;
            if c == 0 {
                continue;
            }
            let base = k - n;
            for j in 0..n {
                acc[base + j] += c * self.reduction[j];
            }
        }
        for i in 0..n {
            out.0[i] = (acc[i] % p) as u32;
        }
        out
    }

    pub fn pow(&self, a: &FfElem, mut e: u64) -> FfElem {
        let mut acc = self.from_u64(1);
        let mut base = *a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_elem(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_elem(&base, &base);
            }
        }
        acc
    }

    pub fn inv_elem(&self, a: &FfElem) -> Option<FfElem> {
        (!self.is_zero_elem(a)).then(|| self.pow(a, self.q - 2))
    }

    /// `a^((q−1)/6)`, one of the six sixth roots of unity, for `a ≠ 0` and `q ≡ 1 (mod 6)`.
    pub fn sextic_residue_symbol(&self, a: &FfElem) -> Result<FfElem> {
        if self.q % 6 != 1 {
            return Err(Error::InvalidInput(format!(
                "sextic residue symbol needs q ≡ 1 (mod 6), q = {}",
                self.q
            )));
        }
        if self.is_zero_elem(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, (self.q - 1) / 6))
    }

    /// Quadratic character: 0, 1 or −1.
    pub fn quadratic_character(&self, a: &FfElem) -> i32 {
        if self.is_zero_elem(a) {
            return 0;
        }
        if self.pow(a, (self.q - 1) / 2) == self.from_u64(1) {
            1
        } else {
            -1
        }
    }

    pub fn order(&self, a: &FfElem) -> Option<u64> {
        if self.is_zero_elem(a) {
            return None;
        }
        let one = self.from_u64(1);
        let mut ord = self.q - 1;
        for (r, _) in factor_u64(self.q - 1) {
            while ord % r == 0 && self.pow(a, ord / r) == one {
                ord /= r;
            }
        }
        Some(ord)
    }

    /// Generator of F_q^* with the smallest index.
    pub fn generator(&self) -> FfElem {
        let one = self.from_u64(1);
        let primes: Vec<u64> = factor_u64(self.q - 1).into_iter().map(|(r, _)| r).collect();
        (1..self.q)
            .map(|i| self.from_index(i))
            .find(|g| primes.iter().all(|r| self.pow(g, (self.q - 1) / r) != one))
            .expect("multiplicative group is cyclic")
    }

    /// Frobenius identity x^q = x, used as a self-check.
    pub fn frobenius_fixes(&self, a: &FfElem) -> bool {
        self.pow(a, self.q) == *a
    }

    /// Builds discrete logarithms mod 6 of every element; `None` if the field
    /// exceeds [`CLASS_TABLE_LIMIT`].
    pub fn class_table(&self) -> Option<ClassTable> {
        if self.q > CLASS_TABLE_LIMIT {
            return None;
        }
        let g = self.generator();
        let mut class = vec![ClassTable::ZERO; self.q as usize];
        let mut x = self.from_u64(1);
        let mut c = 0u8;
        for _ in 0..self.q - 1 {
            class[self.index(&x) as usize] = c;
            x = self.mul_elem(&x, &g);
            c = if c == 5 { 0 } else { c + 1 };
        }
        Some(ClassTable { generator: g, class })
    }
}

/// Discrete logarithm modulo 6 of every field element, indexed by
/// [`FiniteField::index`]. The zero element maps to [`ClassTable::ZERO`].
#[derive(Clone)]
pub struct ClassTable {
    generator: FfElem,
    class: Vec<u8>,
}

impl ClassTable {
    pub const ZERO: u8 = u8::MAX;

    pub fn generator(&self) -> &FfElem {
        &self.generator
    }

    #[inline]
    pub fn class_of_index(&self, idx: u64) -> u8 {
        self.class[idx as usize]
    }

    /// χ₂ by log parity.
    #[inline]
    pub fn quadratic(&self, idx: u64) -> i32 {
        match self.class[idx as usize] {
            Self::ZERO => 0,
            c if c % 2 == 0 => 1,
            _ => -1,
        }
    }
}

impl fmt::Debug for ClassTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassTable({} entries)", self.class.len())
    }
}

fn smallest_irreducible(p: u64, n: usize) -> Vec<u32> {
    let field = PrimeField::new(p);
    let total = p.pow(n as u32);
    // Beyond degree 1, c0 = 0 means divisibility by x.
    let start = if n == 1 { 0 } else { p.pow(n as u32 - 1) };
    for idx in start..total {
        // c0 is the most significant digit of the lexicographic order.
        let mut coeffs = vec![0u64; n + 1];
        let mut rest = idx;
        for i in (0..n).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        coeffs[n] = 1;
        if field.is_irreducible(&coeffs) {
            return coeffs.into_iter().map(|c| c as u32).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldOps for FiniteField {
    type Elem = FfElem;

    fn zero(&self) -> FfElem {
        FfElem::default()
    }
    fn one(&self) -> FfElem {
        self.from_u64(1)
    }
    fn is_zero(&self, a: &FfElem) -> bool {
        self.is_zero_elem(a)
    }
    fn add(&self, a: &FfElem, b: &FfElem) -> FfElem {
        self.add_elem(a, b)
    }
    fn sub(&self, a: &FfElem, b: &FfElem) -> FfElem {
        self.sub_elem(a, b)
    }
    fn neg(&self, a: &FfElem) -> FfElem {
        self.neg_elem(a)
    }
    fn mul(&self, a: &FfElem, b: &FfElem) -> FfElem {
        self.mul_elem(a, b)
    }
    fn inv(&self, a: &FfElem) -> Option<FfElem> {
        self.inv_elem(a)
    }
    fn from_i64(&self, n: i64) -> FfElem {
        FiniteField::from_i64(self, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_examples() {
        let f = FiniteField::prime(7).unwrap();
        let prod = f.mul_elem(&f.from_u64(3), &f.from_u64(5));
        assert_eq!(prod, f.from_u64(1));
        assert_eq!(f.sextic_residue_symbol(&f.from_u64(1)).unwrap(), f.from_u64(1));
        assert_eq!(f.inv_elem(&f.from_u64(3)), Some(f.from_u64(5)));
        assert_eq!(f.inv_elem(&f.zero()), None);
    }

    #[test]
    fn modulus_is_lexicographically_smallest() {
        let f = FiniteField::new(17, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let f = FiniteField::new(2, 3).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1, 1]);
        let f = FiniteField::new(7, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn sextic_symbol_rejects_bad_q() {
        let f = FiniteField::prime(5).unwrap();
        assert!(f.sextic_residue_symbol(&f.from_u64(2)).is_err());
        let f = FiniteField::prime(7).unwrap();
        assert!(f.sextic_residue_symbol(&f.zero()).is_err());
    }

    #[test]
    fn f289_group_order() {
        let f = FiniteField::new(17, 2).unwrap();
        assert_eq!(f.size() - 1, 288);
        let mut rng = ChaCha8Rng::seed_from_u64(289);
        for _ in 0..100 {
            let a = f.from_index(rng.gen_range(1..f.size()));
            assert_eq!(f.pow(&a, 288), f.one());
        }
        assert_eq!(f.order(&f.generator()), Some(288));
    }

    #[test]
    fn sextic_symbol_is_sixth_root_of_unity() {
        let f = FiniteField::new(13, 2).unwrap();
        for idx in 1..f.size() {
            let a = f.from_index(idx);
            let s = f.sextic_residue_symbol(&a).unwrap();
            assert_eq!(f.pow(&s, 6), f.one());
        }
    }

    #[test]
    fn frobenius_identity_in_several_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, n) in [(5, 1), (5, 3), (7, 2), (17, 4), (13, 6), (2, 8), (3, 7)] {
            let f = FiniteField::new(p, n).unwrap();
            for _ in 0..200 {
                let a = f.from_index(rng.gen_range(0..f.size()));
                assert!(f.frobenius_fixes(&a), "p={p} n={n} a={a:?}");
            }
        }
    }

    #[test]
    fn class_table_matches_symbol() {
        let f = FiniteField::new(7, 2).unwrap();
        let table = f.class_table().unwrap();
        let g = *table.generator();
        let zeta = f.sextic_residue_symbol(&g).unwrap();
        for idx in 1..f.size() {
            let a = f.from_index(idx);
            let cls = table.class_of_index(idx) as u64;
            assert_eq!(f.sextic_residue_symbol(&a).unwrap(), f.pow(&zeta, cls));
            assert_eq!(table.quadratic(idx), f.quadratic_character(&a));
        }
        assert_eq!(table.class_of_index(0), ClassTable::ZERO);
    }

    #[test]
    fn field_axioms_on_random_elements() {
        let f = FiniteField::new(11, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let a = f.from_index(rng.gen_range(0..f.size()));
            let b = f.from_index(rng.gen_range(0..f.size()));
            let c = f.from_index(rng.gen_range(0..f.size()));
            let lhs = f.mul_elem(&a, &f.add_elem(&b, &c));
            let rhs = f.add_elem(&f.mul_elem(&a, &b), &f.mul_elem(&a, &c));
            assert_eq!(lhs, rhs);
            assert_eq!(f.mul_elem(&a, &b), f.mul_elem(&b, &a));
            if let Some(ai) = f.inv_elem(&a) {
                assert_eq!(f.mul_elem(&a, &ai), f.one());
            }
            assert_eq!(f.index(&f.from_index(f.index(&a))), f.index(&a));
        }
    }
}
