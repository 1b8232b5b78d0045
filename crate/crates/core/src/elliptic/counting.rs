//! Point counting on `v² = u³ + A` over F_q.
//!
//! `#E(F_q) = q + 1 + Σ_u χ(u³ + A)`. For j = 0 the trace depends only on the
//! sextic class of `A`, so a [`TraceTable`] of six sums serves every fiber of
//! a family once it is built.

use num_integer::Integer as _;
use rayon::prelude::*;

use crate::arith::finite_field::ClassTable;
use crate::arith::integer::{next_prime, perfect_cube_root};
use crate::arith::{FfElem, FiniteField, Integer};
use crate::error::{Error, Result};

/// Number of index blocks handed to the worker pool.
const BLOCKS: u64 = 64;

fn check_characteristic(field: &FiniteField) -> Result<()> {
    if field.characteristic() < 5 {
        return Err(Error::BadPrime(field.characteristic()));
    }
    Ok(())
}

/// Splits `0..n` into contiguous blocks.
fn blocks(n: u64) -> Vec<(u64, u64)> {
    let step = n.div_ceil(BLOCKS).max(1);
    (0..n).step_by(step as usize).map(|s| (s, (s + step).min(n))).collect()
}

/// Runs `f(start_elem, len)` over blocks of the field and sums the results.
fn sum_over_field<T, F>(field: &FiniteField, zero: T, f: F, add: fn(T, T) -> T) -> T
where
    T: Send + Sync + Clone,
    F: Fn(FfElem, u64) -> T + Sync,
{
    blocks(field.size())
        .into_par_iter()
        .map(|(s, e)| f(field.from_index(s), e - s))
        .reduce(|| zero.clone(), add)
}

/// `Σ_u χ(u³ + A)`.
fn character_sum(field: &FiniteField, table: Option<&ClassTable>, a: &FfElem) -> i64 {
    sum_over_field(
        field,
        0i64,
        |mut u, len| {
            let mut acc = 0i64;
            for _ in 0..len {
                let u3 = field.mul_elem(&field.mul_elem(&u, &u), &u);
                let s = field.add_elem(&u3, a);
                acc += match table {
                    Some(t) => t.quadratic(field.index(&s)),
                    None => field.quadratic_character(&s),
                } as i64;
                field.increment(&mut u);
            }
            acc
        },
        |a, b| a + b,
    )
}

/// `#E(F_q)` including the point at infinity.
pub fn count_points(field: &FiniteField, a: &FfElem) -> Result<u64> {
    count_points_with(field, None, a)
}

pub fn count_points_with(
    field: &FiniteField,
    table: Option<&ClassTable>,
    a: &FfElem,
) -> Result<u64> {
    check_characteristic(field)?;
    if field.is_zero_elem(a) {
        return Err(Error::SingularCurve("A = 0".into()));
    }
    let s = character_sum(field, table, a);
    Ok((field.size() as i64 + 1 + s) as u64)
}

/// `a_q = q + 1 − #E(F_q)`.
pub fn trace(field: &FiniteField, table: Option<&ClassTable>, a: &FfElem) -> Result<i64> {
    Ok(field.size() as i64 + 1 - count_points_with(field, table, a)? as i64)
}

/// Traces of `v² = u³ + gʲ`, `j = 0..6`, for a fixed generator `g` of F_q^*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceTable {
    q: u64,
    generator: FfElem,
    traces: [i64; 6],
    /// `g^{j(q−1)/6}`, the sextic symbol of class `j`.
    symbols: [FfElem; 6],
}

impl TraceTable {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn generator(&self) -> &FfElem {
        &self.generator
    }

    pub fn traces(&self) -> &[i64; 6] {
        &self.traces
    }

    #[inline]
    pub fn trace_of_class(&self, class: u8) -> i64 {
        self.traces[class as usize]
    }

    /// Trace for `A ≠ 0` keyed by its sextic residue symbol.
    pub fn lookup(&self, field: &FiniteField, a: &FfElem) -> Result<i64> {
        let s = field.sextic_residue_symbol(a)?;
        let j = self
            .symbols
            .iter()
            .position(|x| *x == s)
            .expect("symbol is a sixth root of unity");
        Ok(self.traces[j])
    }
}

/// Six character sums in one pass over `u`; `u³` is shared between classes.
///
/// With a class table the generator is the table's, so [`ClassTable`] classes
/// index the result directly.
pub fn build_trace_table(field: &FiniteField, table: Option<&ClassTable>) -> Result<TraceTable> {
    check_characteristic(field)?;
    let q = field.size();
    if q % 6 != 1 {
        return Err(Error::InvalidInput(format!("trace table needs q ≡ 1 (mod 6), q = {q}")));
    }
    let g = match table {
        Some(t) => *t.generator(),
        None => field.generator(),
    };
    let mut reps = [field.from_u64(1); 6];
    for j in 1..6 {
        reps[j] = field.mul_elem(&reps[j - 1], &g);
    }
    let sums = sum_over_field(
        field,
        [0i64; 6],
        |mut u, len| {
            let mut acc = [0i64; 6];
            for _ in 0..len {
                let u3 = field.mul_elem(&field.mul_elem(&u, &u), &u);
                for (j, r) in reps.iter().enumerate() {
                    let s = field.add_elem(&u3, r);
                    acc[j] += match table {
                        Some(t) => t.quadratic(field.index(&s)),
                        None => field.quadratic_character(&s),
                    } as i64;
                }
                field.increment(&mut u);
            }
            acc
        },
        |mut a, b| {
            for j in 0..6 {
                a[j] += b[j];
            }
            a
        },
    );
    let mut traces = [0i64; 6];
    let mut symbols = [FfElem::default(); 6];
    let e = (q - 1) / 6;
    let zeta = field.pow(&g, e);
    for j in 0..6 {
        traces[j] = -sums[j];
        symbols[j] = field.pow(&zeta, j as u64);
    }
    Ok(TraceTable {
        q,
        generator: g,
        traces,
        symbols,
    })
}

/// Multiple of `#E(Q)_tors` for `X³ + Y³ = d`.
///
/// Torsion injects into `E(F_p)` at good primes `p ≥ 5`, so the gcd of
/// `#E(F_p)` over the first eight primes `p ∤ 6d` bounds the prime-to-3 part.
/// Every such count is divisible by 3 because `u = 0` cuts out a rational
/// subgroup of order 3, so the 3-part comes from the exact criterion instead:
/// a rational 3-torsion point exists iff `u³ = 1728d²` has a rational root,
/// i.e. iff `d` is a cube. A return of 1 certifies `E(Q)` torsion-free.
pub fn torsion_order_bound(d: &Integer) -> Result<u64> {
    if num_traits::Zero::is_zero(d) {
        return Err(Error::InvalidInput("d must be nonzero".into()));
    }
    let mut g = 0u64;
    let mut p = 3u64;
    let mut used = 0;
    while used < 8 {
        p = next_prime(p);
        let dp = d.mod_floor(&Integer::from(p));
        if num_traits::Zero::is_zero(&dp) {
            continue;
        }
        let field = FiniteField::prime(p)?;
        let dp = field.from_u64(dp.try_into().expect("reduced"));
        let a = field.mul_elem(&field.from_i64(-432), &field.mul_elem(&dp, &dp));
        g = g.gcd(&count_points(&field, &a)?);
        used += 1;
    }
    if perfect_cube_root(d).is_none() {
        while g % 3 == 0 {
            g /= 3;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_count(field: &FiniteField, a: &FfElem) -> u64 {
        let q = field.size();
        let mut n = 1;
        for i in 0..q {
            let u = field.from_index(i);
            let rhs = field.add_elem(&field.mul_elem(&field.mul_elem(&u, &u), &u), a);
            for j in 0..q {
                let v = field.from_index(j);
                if field.mul_elem(&v, &v) == rhs {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn count_examples() {
        let f7 = FiniteField::prime(7).unwrap();
        assert_eq!(count_points(&f7, &f7.from_u64(1)).unwrap(), 12);
        assert_eq!(brute_count(&f7, &f7.from_u64(1)), 12);
        let f5 = FiniteField::prime(5).unwrap();
        for a in 1..5 {
            assert_eq!(count_points(&f5, &f5.from_u64(a)).unwrap(), 6);
            assert_eq!(brute_count(&f5, &f5.from_u64(a)), 6);
        }
        let f17 = FiniteField::prime(17).unwrap();
        let a = f17.from_i64((-432i64 * 189 * 189).rem_euclid(17));
        let n = count_points(&f17, &a).unwrap();
        assert_eq!(n, brute_count(&f17, &a));
        assert!(((18 - n as i64) as f64).abs() <= 2.0 * 17f64.sqrt());
        assert!(count_points(&f7, &f7.from_u64(0)).is_err());
        assert!(count_points(&FiniteField::prime(3).unwrap(), &f5.from_u64(1)).is_err());
    }

    #[test]
    fn counts_agree_with_brute_force_in_extensions() {
        for (p, n) in [(5, 2), (7, 2), (13, 1), (11, 2)] {
            let field = FiniteField::new(p, n).unwrap();
            let table = field.class_table();
            for idx in [1, 2, 3, field.size() - 1, field.size() / 2 + 1] {
                let a = field.from_index(idx);
                let expect = brute_count(&field, &a);
                assert_eq!(count_points(&field, &a).unwrap(), expect);
                assert_eq!(count_points_with(&field, table.as_ref(), &a).unwrap(), expect);
            }
        }
    }

    #[test]
    fn trace_table_q7() {
        let f = FiniteField::prime(7).unwrap();
        let t = build_trace_table(&f, None).unwrap();
        assert!(t.traces().iter().all(|a| a.abs() <= 5));
        assert_eq!(t.lookup(&f, &f.from_u64(1)).unwrap(), -4);
        assert!(build_trace_table(&FiniteField::prime(11).unwrap(), None).is_err());
    }

    #[test]
    fn trace_table_matches_direct_counts_q13() {
        let f = FiniteField::prime(13).unwrap();
        let table = f.class_table().unwrap();
        let t = build_trace_table(&f, Some(&table)).unwrap();
        let t_plain = build_trace_table(&f, None).unwrap();
        for a in 1..13 {
            let a = f.from_u64(a);
            let direct = trace(&f, None, &a).unwrap();
            assert_eq!(t.lookup(&f, &a).unwrap(), direct);
            assert_eq!(t_plain.lookup(&f, &a).unwrap(), direct);
            assert_eq!(t.trace_of_class(table.class_of_index(f.index(&a))), direct);
        }
    }

    #[test]
    fn trace_table_matches_direct_counts_q289() {
        use rand::{Rng, SeedableRng};
        let f = FiniteField::new(17, 2).unwrap();
        let table = f.class_table().unwrap();
        let t = build_trace_table(&f, Some(&table)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(289);
        for _ in 0..288 {
            let a = f.from_index(rng.gen_range(1..289));
            let direct = trace(&f, None, &a).unwrap();
            assert_eq!(t.lookup(&f, &a).unwrap(), direct);
            assert_eq!(t.trace_of_class(table.class_of_index(f.index(&a))), direct);
            assert!((direct as f64).abs() <= 2.0 * 17.0);
        }
    }

    #[test]
    fn torsion_bounds() {
        assert_eq!(torsion_order_bound(&Integer::from(1729)).unwrap(), 1);
        assert_eq!(torsion_order_bound(&Integer::from(7)).unwrap(), 1);
        assert_eq!(torsion_order_bound(&Integer::from(1)).unwrap(), 3);
        assert_eq!(torsion_order_bound(&Integer::from(2)).unwrap() % 2, 0);
        assert_eq!(torsion_order_bound(&Integer::from(-8)).unwrap() % 3, 0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn hasse_bound(pi in 2usize..40, n in 1usize..=2, a in 1u64..10_000) {
            let primes = crate::arith::integer::primes_up_to(200);
            let p = primes[pi];
            let field = FiniteField::new(p, n).unwrap();
            let a = field.from_index(1 + a % (field.size() - 1));
            let tr = trace(&field, None, &a).unwrap();
            prop_assert!((tr * tr) as u64 <= 4 * field.size());
        }

        #[test]
        fn supersingular_when_q_is_2_mod_3(pi in 2usize..40, a in 1u64..10_000) {
            let primes = crate::arith::integer::primes_up_to(200);
            let p = primes[pi];
            let n = if p % 3 == 2 { 1 } else { 2 };
            let field = FiniteField::new(p, n).unwrap();
            if field.size() % 3 == 2 {
                let a = field.from_index(1 + a % (field.size() - 1));
                prop_assert_eq!(count_points(&field, &a).unwrap(), field.size() + 1);
            }
        }
    }
}
