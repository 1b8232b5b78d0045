//! Integer utilities: primality, small factorizations and cube-free parts.

use std::sync::OnceLock;

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Integer = num_bigint::BigInt;

const TRIAL_LIMIT: u64 = 1 << 20;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_LIMIT))
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    if n >= 1 {
        sieve[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller–Rabin for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin over big integers; exact below 3.3·10^24.
pub fn is_probable_prime(n: &Integer) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_negative() || n.is_even() {
        return false;
    }
    let one = Integer::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for &a in &MR_BASES {
        let mut x = Integer::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn next_prime(n: u64) -> u64 {
    let mut m = n + 1;
    while !is_prime_u64(m) {
        m += 1;
    }
    m
}

/// Factorization of a 64-bit integer by trial division (fine for the sizes used here).
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Exact integer cube root, if any (negative for negative `n`).
pub fn perfect_cube_root(n: &Integer) -> Option<Integer> {
    let r = n.cbrt();
    if &(&r * &r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Pollard rho with Floyd cycle detection; `n` odd composite.
fn pollard_rho(n: &Integer) -> Integer {
    let one = Integer::one();
    let mut c = Integer::one();
    loop {
        let f = |x: &Integer| (x * x + &c) % n;
        let mut x = Integer::from(2);
        let mut y = Integer::from(2);
        let mut g = Integer::one();
        while g == one {
            x = f(&x);
            y = f(&f(&y));
            g = (&x - &y).abs().gcd(n);
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_large(n: Integer, out: &mut Vec<Integer>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    if let Some(r) = perfect_cube_root(&n) {
        for _ in 0..3 {
            factor_large(r.clone(), out);
        }
        return;
    }
    let d = pollard_rho(&n);
    factor_large(&n / &d, out);
    factor_large(d, out);
}

/// Writes `n = d·c³` with `d` cube-free, `c ≥ 1`, and `d` carrying the sign of `n`.
pub fn cubefree_part(n: &Integer) -> Result<(Integer, Integer)> {
    if n.is_zero() {
        return Err(Error::InvalidInput("cubefree_part of zero".into()));
    }
    let negative = n.is_negative();
    let mut m = n.abs();
    let mut d = Integer::one();
    let mut c = Integer::one();

    if let Some(r) = perfect_cube_root(&m) {
        c = r;
        m = Integer::one();
    }

    for &p in small_primes() {
        if m.is_one() {
            break;
        }
        let pb = Integer::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0u32;
        while (&m % &pb).is_zero() {
            m /= &pb;
            e += 1;
        }
        if e > 0 {
            c *= pb.pow(e / 3);
            d *= pb.pow(e % 3);
        }
    }

    if !m.is_one() {
        if let Some(r) = perfect_cube_root(&m) {
            c *= r;
        } else if is_probable_prime(&m) {
            d *= m;
        } else {
            let mut primes = Vec::new();
            factor_large(m, &mut primes);
            primes.sort();
            for group in primes.chunk_by(|a, b| a == b) {
                let e = group.len() as u32;
                c *= group[0].pow(e / 3);
                d *= group[0].pow(e % 3);
            }
        }
    }
    if negative {
        d = -d;
    }
    Ok((d, c))
}

/// True when no prime cube divides `n`.
pub fn is_cubefree(n: &Integer) -> bool {
    match cubefree_part(n) {
        Ok((_, c)) => c.is_one(),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> Integer {
        Integer::from(n)
    }

    #[test]
    fn cubefree_examples() {
        assert_eq!(cubefree_part(&big(189)).unwrap(), (big(7), big(3)));
        assert_eq!(cubefree_part(&big(46683)).unwrap(), (big(1729), big(3)));
        assert_eq!(cubefree_part(&big(1)).unwrap(), (big(1), big(1)));
        assert_eq!(cubefree_part(&big(3087)).unwrap(), (big(9), big(7)));
        assert_eq!(cubefree_part(&big(-54)).unwrap(), (big(-2), big(3)));
    }

    #[test]
    fn cubefree_rejects_zero() {
        assert!(cubefree_part(&big(0)).is_err());
    }

    #[test]
    fn cubefree_large_prime_cube() {
        // Both primes lie above the trial-division limit.
        let p = big(1_048_589);
        let n = &p * &p * &p * big(5) * big(2_097_169);
        let (d, c) = cubefree_part(&n).unwrap();
        assert_eq!(c, p);
        assert_eq!(d, big(5 * 2_097_169));
    }

    #[test]
    fn cubefree_pollard_path() {
        let p = Integer::from(1_048_583u64);
        let q = Integer::from(1_048_601u64);
        let n = &p * &p * &p * &q;
        let (d, c) = cubefree_part(&n).unwrap();
        assert_eq!((d, c), (q, p));
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let sieve = primes_up_to(10_000);
        for n in 0..10_000u64 {
            assert_eq!(is_prime_u64(n), sieve.binary_search(&n).is_ok(), "n = {n}");
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn factor_u64_small() {
        assert_eq!(factor_u64(288), vec![(2, 5), (3, 2)]);
        assert_eq!(factor_u64(24_137_568), vec![(2, 5), (3, 3), (7, 1), (13, 1), (307, 1)]);
    }
}
