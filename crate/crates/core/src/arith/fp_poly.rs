//! Dense polynomials over a prime field F_p with machine-word coefficients.
//!
//! Used for modulus selection in extension fields and for modular
//! factorization. Coefficients are stored lowest degree first, reduced into
//! `0..p`, with no trailing zeros.

use super::integer::{factor_u64, pow_mod};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

pub type FpPoly = Vec<u64>;

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!((2..1 << 31).contains(&p), "prime out of range");
        PrimeField { p }
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (a % self.p != 0).then(|| pow_mod(a, self.p - 2, self.p))
    }

    pub fn trim(&self, mut f: FpPoly) -> FpPoly {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    pub fn add(&self, f: &[u64], g: &[u64]) -> FpPoly {
        let n = f.len().max(g.len());
        let out = (0..n)
            .map(|i| {
                (f.get(i).copied().unwrap_or(0) + g.get(i).copied().unwrap_or(0)) % self.p
            })
            .collect();
        self.trim(out)
    }

    pub fn sub(&self, f: &[u64], g: &[u64]) -> FpPoly {
        let n = f.len().max(g.len());
        let out = (0..n)
            .map(|i| {
                (f.get(i).copied().unwrap_or(0) + self.p - g.get(i).copied().unwrap_or(0))
                    % self.p
            })
            .collect();
        self.trim(out)
    }

    pub fn scale(&self, f: &[u64], c: u64) -> FpPoly {
        self.trim(f.iter().map(|&a| a * c % self.p).collect())
    }

    pub fn mul(&self, f: &[u64], g: &[u64]) -> FpPoly {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in g.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        self.trim(out)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, f: &[u64], g: &[u64]) -> (FpPoly, FpPoly) {
        assert!(!g.is_empty(), "division by zero polynomial");
        let dg = g.len() - 1;
        let lead_inv = self.inv(g[dg]).expect("nonzero leading coefficient");
        let mut rem = f.to_vec();
        if rem.len() <= dg {
            return (Vec::new(), self.trim(rem));
        }
        let mut quot = vec![0u64; rem.len() - dg];
        for i in (dg..rem.len()).rev() {
            let c = rem[i] * lead_inv % self.p;
            if c == 0 {
                continue;
            }
            quot[i - dg] = c;
            for (j, &gc) in g.iter().enumerate() {
                let k = i - dg + j;
                rem[k] = (rem[k] + self.p - c * gc % self.p) % self.p;
            }
        }
        rem.truncate(dg);
        (self.trim(quot), self.trim(rem))
    }

    pub fn rem(&self, f: &[u64], g: &[u64]) -> FpPoly {
        self.div_rem(f, g).1
    }

    pub fn monic(&self, f: &[u64]) -> FpPoly {
        match f.last() {
            None => Vec::new(),
            Some(&l) => self.scale(f, self.inv(l).expect("nonzero")),
        }
    }

    pub fn gcd(&self, f: &[u64], g: &[u64]) -> FpPoly {
        let mut a = self.trim(f.to_vec());
        let mut b = self.trim(g.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(g, s, t)` with `s·f + t·h = g = gcd(f, h)` monic.
    pub fn ext_gcd(&self, f: &[u64], h: &[u64]) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (self.trim(f.to_vec()), self.trim(h.to_vec()));
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.last() {
            None => (Vec::new(), s0, t0),
            Some(&l) => {
                let inv = self.inv(l).expect("nonzero");
                (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
            }
        }
    }

    pub fn derivative(&self, f: &[u64]) -> FpPoly {
        self.trim(
            f.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| (i as u64 % self.p) * c % self.p)
                .collect(),
        )
    }

    /// `base^e mod m`, exponent given as little-endian 64-bit limbs.
    pub fn pow_mod_limbs(&self, base: &[u64], e: &[u64], m: &[u64]) -> FpPoly {
        let mut acc = self.rem(&[1], m);
        let b = self.rem(base, m);
        for &limb in e.iter().rev() {
            for bit in (0..64).rev() {
                acc = self.rem(&self.mul(&acc, &acc), m);
                if (limb >> bit) & 1 == 1 {
                    acc = self.rem(&self.mul(&acc, &b), m);
                }
            }
        }
        acc
    }

    /// `base^(p^k) mod m` by k successive p-th powers.
    pub fn frobenius_pow(&self, base: &[u64], k: u32, m: &[u64]) -> FpPoly {
        let mut acc = self.rem(base, m);
        for _ in 0..k {
            acc = self.pow_mod_limbs(&acc, &[self.p], m);
        }
        acc
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self, f: &[u64]) -> bool {
        let f = self.trim(f.to_vec());
        let Some(n) = f.len().checked_sub(1) else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        let xq_n = self.frobenius_pow(&x, n as u32, &f);
        if self.sub(&xq_n, &self.rem(&x, &f)).iter().any(|&c| c != 0) {
            return false;
        }
        for (r, _) in factor_u64(n as u64) {
            let k = (n as u64 / r) as u32;
            let h = self.sub(&self.frobenius_pow(&x, k, &f), &x);
            if self.gcd(&f, &h).len() != 1 {
                return false;
            }
        }
        true
    }

    /// Distinct-degree factorization of a monic squarefree polynomial into
    /// `(product of all irreducible factors of degree d, d)`.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        let mut rest = self.monic(f);
        let x = vec![0u64, 1];
        let mut xp = x.clone();
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                let deg = rest.len() - 1;
                out.push((rest, deg));
                break;
            }
            xp = self.pow_mod_limbs(&xp, &[self.p], &rest);
            let g = self.gcd(&rest, &self.sub(&xp, &x));
            if g.len() > 1 {
                rest = self.div_rem(&rest, &g).0;
                xp = self.rem(&xp, &rest);
                out.push((g, d));
            }
        }
        out
    }

    /// Equal-degree splitting (Cantor–Zassenhaus) of a monic product of
    /// irreducibles of degree `d`; `p` must be odd. Deterministic seed sequence.
    pub fn equal_degree(&self, f: &[u64], d: usize) -> Vec<FpPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        // (p^d − 1)/2 as limbs
        let mut e: Vec<u64> = vec![1];
        for _ in 0..d {
            e = mul_limbs(&e, self.p);
        }
        sub_one_limbs(&mut e);
        shr1_limbs(&mut e);
        let mut seed: u64 = 0x2545_f491_4f6c_dd1d;
        loop {
            let a: FpPoly = (0..n)
                .map(|_| {
                    seed ^= seed << 13;
                    seed ^= seed >> 7;
                    seed ^= seed << 17;
                    seed % self.p
                })
                .collect();
            let a = self.trim(a);
            if a.len() < 2 {
                continue;
            }
            let b = self.pow_mod_limbs(&a, &e, f);
            let g = self.gcd(f, &self.sub(&b, &[1]));
            if g.len() > 1 && g.len() < f.len() {
                let h = self.div_rem(f, &g).0;
                let mut out = self.equal_degree(&g, d);
                out.extend(self.equal_degree(&self.monic(&h), d));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a squarefree polynomial (odd p).
    pub fn factor_squarefree(&self, f: &[u64]) -> Vec<FpPoly> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d));
        }
        out.sort();
        out
    }
}

fn mul_limbs(a: &[u64], m: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len() + 1);
    let mut carry = 0u128;
    for &x in a {
        let v = x as u128 * m as u128 + carry;
        out.push(v as u64);
        carry = v >> 64;
    }
    if carry > 0 {
        out.push(carry as u64);
    }
    out
}

fn sub_one_limbs(a: &mut [u64]) {
    for x in a.iter_mut() {
        if *x > 0 {
            *x -= 1;
            return;
        }
        *x = u64::MAX;
    }
}

fn shr1_limbs(a: &mut [u64]) {
    let mut carry = 0;
    for x in a.iter_mut().rev() {
        let next = *x & 1;
        *x = (*x >> 1) | (carry << 63);
        carry = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_small_cases() {
        let f = PrimeField::new(17);
        assert!(!f.is_irreducible(&[1, 0, 1])); // −1 is a square mod 17
        assert!(f.is_irreducible(&[1, 1, 1])); // −3 is not
        let f2 = PrimeField::new(2);
        assert!(f2.is_irreducible(&[1, 1, 1]));
        assert!(f2.is_irreducible(&[1, 1, 0, 1]));
        assert!(!f2.is_irreducible(&[1, 0, 0, 1]));
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // Number of monic irreducible quartics over F_3: (3^4 − 3^2)/4 = 18.
        let f = PrimeField::new(3);
        let mut count = 0;
        for idx in 0..81u64 {
            let mut c = vec![idx % 3, idx / 3 % 3, idx / 9 % 3, idx / 27 % 3, 1];
            c = f.trim(c);
            if f.is_irreducible(&c) {
                count += 1;
            }
        }
        assert_eq!(count, 18);
    }

    #[test]
    fn factor_x_pow_p_minus_x() {
        // x^7 − x over F_7 splits into the seven linear factors.
        let f = PrimeField::new(7);
        let mut poly = vec![0, 6, 0, 0, 0, 0, 0, 1];
        poly = f.trim(poly);
        let facs = f.factor_squarefree(&poly);
        assert_eq!(facs.len(), 7);
        assert!(facs.iter().all(|g| g.len() == 2));
    }

    #[test]
    fn factor_mixed_degrees() {
        let f = PrimeField::new(5);
        let a = vec![2, 0, 1]; // x² + 2, irreducible mod 5
        let b = vec![1, 1]; // x + 1
        let c = vec![1, 0, 1, 1]; // x³ + x² + 1
        assert!(f.is_irreducible(&a) && f.is_irreducible(&c));
        let prod = f.mul(&f.mul(&a, &b), &c);
        let facs = f.factor_squarefree(&prod);
        let mut expected = vec![a, b, c];
        expected.sort();
        assert_eq!(facs, expected);
    }

    #[test]
    fn extended_gcd_identity() {
        let f = PrimeField::new(11);
        let a = vec![3, 1, 4, 1];
        let b = vec![5, 9, 2];
        let (g, s, t) = f.ext_gcd(&a, &b);
        let lhs = f.add(&f.mul(&s, &a), &f.mul(&t, &b));
        assert_eq!(lhs, g);
    }
}
