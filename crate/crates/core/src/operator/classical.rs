//! Operator comparison, shift invariance and the D-expansion.

use super::expr::Operator;
use crate::algebra::{Polynomial, ScalarSeries};
use crate::error::Result;
use crate::scalar::Scalar;

/// `Q x^n = R x^n` for every `n <= n_max`.
pub fn op_equal_upto<K: Scalar>(q: &Operator<K>, r: &Operator<K>, n_max: usize) -> Result<bool> {
    for n in 0..=n_max {
        let mono = Polynomial::monomial(K::one(), n);
        if q.apply(&mono)? != r.apply(&mono)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Shift sample set used when the caller has no preference.
pub fn default_shift_samples<K: Scalar>() -> Vec<K> {
    vec![K::one(), -K::one(), K::from_i64(2), K::from_frac(1, 2)]
}

/// Tests `Q E^a x^n = E^a Q x^n` for each sampled `a` and `n <= n_max`.
///
/// A `false` is a proof of non-invariance; `true` is evidence bounded by
/// the tested degree.
pub fn shift_invariance_check<K: Scalar>(
    q: &Operator<K>,
    n_max: usize,
    samples: &[K],
) -> Result<bool> {
    assert!(!samples.is_empty(), "need at least one shift sample");
    for n in 0..=n_max {
        let mono = Polynomial::monomial(K::one(), n);
        let image = q.apply(&mono)?;
        for a in samples {
            if q.apply(&mono.shift(a))? != image.shift(a) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Coefficients `a_k = [Q x^k / k!]_{x=0}` for `k = 0..=n`.
///
/// For a shift-invariant `Q`, `Σ a_k D^k` agrees with `Q` on degree `<= n`.
pub fn d_expand<K: Scalar>(q: &Operator<K>, n: usize) -> Result<ScalarSeries<K>> {
    let coeffs = (0..=n)
        .map(|k| {
            let image = q.apply(&Polynomial::monomial(K::one(), k))?;
            Ok(image.eval(&K::zero()) / K::factorial(k))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScalarSeries::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type R = BigRational;
    type Op = Operator<R>;

    fn r(n: i64, d: i64) -> R {
        R::from_frac(n, d)
    }

    #[test]
    fn equality_examples() {
        let comm = Op::D * Op::X - Op::X * Op::D;
        assert!(op_equal_upto(&comm, &Op::Identity, 10).unwrap());
        assert!(op_equal_upto(&Op::Integral, &Op::Integral, 5).unwrap());
        let e1_minus_i = Op::Shift(r(1, 1)) - Op::Identity;
        assert!(op_equal_upto(&Op::Difference, &e1_minus_i, 8).unwrap());
        assert!(!op_equal_upto(&Op::D, &Op::Difference, 3).unwrap());
    }

    #[test]
    fn shift_invariance() {
        let samples = [r(1, 1), r(-2, 1), r(1, 3)];
        assert!(shift_invariance_check(&Op::Difference, 8, &samples).unwrap());
        assert!(!shift_invariance_check(&Op::X, 3, &[r(1, 1)]).unwrap());
        assert!(!shift_invariance_check(&Op::Integral, 4, &[r(1, 1)]).unwrap());
        assert!(
            shift_invariance_check(&(Op::D * Op::Integral), 6, &default_shift_samples()).unwrap()
        );
    }

    #[test]
    fn d_expansions() {
        let d = d_expand(&Op::D, 3).unwrap();
        assert_eq!(d.coeffs(), &[r(0, 1), r(1, 1), r(0, 1), r(0, 1)]);
        let delta = d_expand(&Op::Difference, 4).unwrap();
        assert_eq!(
            delta.coeffs(),
            &[r(0, 1), r(1, 1), r(1, 2), r(1, 6), r(1, 24)]
        );
        // Taylor: [E^a x^k / k!]_{x=0} = a^k / k!
        let a = r(-3, 2);
        let shift = d_expand(&Op::Shift(a.clone()), 6).unwrap();
        assert_eq!(shift, ScalarSeries::exp_scaled(&a, 6));
    }
}
