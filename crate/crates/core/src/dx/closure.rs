//! Diagonals of a composition, and a two-variable diagonal that fails to
//! be polynomial.

use super::fit::DiagonalFamily;
use crate::algebra::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `u`-th diagonal of `R ∘ P`:
/// `q_u(n) = Σ_{t=u-S}^{T} p_t(n) r_{u-t}(n+t)`.
///
/// `p_t` must vanish for `t > T` and `r_s` for `s > S`, as witnessed by the
/// families' vanishing bounds.
pub fn compose_via_diagonals<K: Scalar>(
    p_diags: &DiagonalFamily<K>,
    r_diags: &DiagonalFamily<K>,
    u: i64,
    s_bound: i64,
    t_bound: i64,
) -> Result<Polynomial<K>> {
    for (fam, bound) in [(p_diags, t_bound), (r_diags, s_bound)] {
        match fam.vanishing_above {
            Some(v) if v <= bound => {}
            _ => return Err(Error::MissingVanishingCertificate { bound }),
        }
    }
    let mut acc = Polynomial::zero();
    for t in (u - s_bound)..=t_bound {
        let p = p_diags.get(t)?;
        if p.is_zero() {
            continue;
        }
        let r = r_diags.get(u - t)?;
        if r.is_zero() {
            continue;
        }
        acc = &acc + &(&p * &r.shift(&K::from_i64(t)));
    }
    Ok(acc)
}

/// `S(n) = Σ_{k=0}^{n} (n)_k (n+k)_k`.
pub fn counterexample_s<K: Scalar>(n: usize) -> K {
    let nk = K::from_usize(n);
    (0..=n).fold(K::zero(), |acc, k| {
        acc + K::falling(&nk, k) * K::falling(&K::from_usize(n + k), k)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dx::fit::dx_check;
    use crate::operator::{Operator, OperatorTable};
    use num_rational::BigRational;

    type R = BigRational;
    type Op = Operator<R>;

    fn family(op: Op) -> DiagonalFamily<R> {
        dx_check(&OperatorTable::new(op), -6, 4, 12, 3)
            .unwrap()
            .family()
            .unwrap()
    }

    #[test]
    fn d_after_x() {
        let q = compose_via_diagonals(&family(Op::X), &family(Op::D), 0, -1, 1).unwrap();
        assert_eq!(q, "x + 1".parse().unwrap());
    }

    #[test]
    fn identity_is_neutral() {
        let r = family(Op::Shift(R::from_i64(3)));
        let id = family(Op::Identity);
        for u in -3..=1 {
            assert_eq!(
                compose_via_diagonals(&id, &r, u, 0, 0).unwrap(),
                r.get(u).unwrap()
            );
        }
    }

    #[test]
    fn shifts_add() {
        let e1 = family(Op::Shift(R::from_i64(1)));
        let q = compose_via_diagonals(&e1, &e1, -1, 0, 0).unwrap();
        assert_eq!(q, "2x".parse().unwrap());
    }

    #[test]
    fn certificates_required() {
        let x = family(Op::X);
        assert_eq!(
            compose_via_diagonals(&x, &x, 1, 1, 0),
            Err(Error::MissingVanishingCertificate { bound: 0 })
        );
    }

    #[test]
    fn counterexample_values() {
        let s: Vec<R> = (0..3).map(counterexample_s).collect();
        assert_eq!(s, vec![R::from_i64(1), R::from_i64(3), R::from_i64(31)]);
    }
}
