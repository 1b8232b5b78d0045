//! Taylor coefficients of rational functions via the denominator recurrence.

use super::{Field, RationalFunction};
use crate::error::{Error, Result};

/// First `count` Taylor coefficients of `f` at 0.
///
/// With `f = N/D`, the coefficients satisfy `Σ_j D_j a_{n−j} = N_n`, solved
/// forward for `a_n`. Expansion at infinity is obtained by the caller
/// substituting `x → 1/x` and clearing powers of `x`.
pub fn series_expand<F: Field>(f: &RationalFunction<F>, count: usize) -> Result<Vec<F>> {
    let den = f.den().coeffs();
    let num = f.num().coeffs();
    let d0_inv = den
        .first()
        .and_then(|d0| d0.inv())
        .ok_or_else(|| Error::InvalidInput("denominator vanishes at 0".into()))?;
    let mut out: Vec<F> = Vec::with_capacity(count);
    for n in 0..count {
        let mut acc = num.get(n).cloned().unwrap_or_else(F::zero);
        for (j, dj) in den.iter().enumerate().skip(1).take(n) {
            acc = acc - dj.clone() * out[n - j].clone();
        }
        out.push(acc * d0_inv.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Polynomial, Rational, Ring};

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction<Rational> {
        RationalFunction::new(Polynomial::from_i64s(n), Polynomial::from_i64s(d)).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_i64(x)).collect()
    }

    #[test]
    fn geometric_series() {
        assert_eq!(series_expand(&rf(&[1], &[1, -1]), 4).unwrap(), ints(&[1, 1, 1, 1]));
        assert_eq!(series_expand(&rf(&[0, 1], &[1, 0, -1]), 5).unwrap(), ints(&[0, 1, 0, 1, 0]));
    }

    #[test]
    fn near_miss_generating_function() {
        let f = rf(&[1, 53, 9], &[1, -82, -82, 1]);
        assert_eq!(series_expand(&f, 3).unwrap(), ints(&[1, 135, 11161]));
    }

    #[test]
    fn rejects_pole_at_zero() {
        assert!(series_expand(&rf(&[1], &[0, 1]), 3).is_err());
    }
}
