//! Generating-function check of a DX-expansion against its operator.

use super::construct::DxExpansion;
use crate::algebra::{exp_xt, PolySeries, Polynomial};
use crate::error::{Error, Result};
use crate::operator::OperatorTable;
use crate::scalar::Scalar;

/// Compares `Q exp(xt) / exp(xt)` with
/// `Σ_n Σ_k C(n,k) f_n^(k)(t) x^{n-k}` through `t^N` and `x^N`.
///
/// The left side is read from `table`; the right side uses only the terms
/// of `e`.
pub fn gf_consistency_check<K: Scalar>(
    e: &DxExpansion<K>,
    table: &OperatorTable<K>,
    n: usize,
) -> Result<bool> {
    if e.certificate.is_none() {
        return Err(Error::NoCertificate);
    }
    if n > e.valid_degree {
        return Err(Error::Truncation {
            needed: n,
            available: e.valid_degree,
        });
    }
    Ok(direct_side(table, n)? == expansion_side(e, n))
}

/// `Q exp(xt) · exp(-xt)`, coefficients cut to `x`-degree `<= n`.
fn direct_side<K: Scalar>(table: &OperatorTable<K>, n: usize) -> Result<Vec<Polynomial<K>>> {
    let e = exp_xt::<K>(n);
    let image = PolySeries::new(
        (0..=n)
            .map(|k| Ok(table.row(k)?.scale(&(K::one() / K::factorial(k)))))
            .collect::<Result<_>>()?,
    );
    Ok(image
        .mul(&e.invert()?)
        .into_coeffs()
        .into_iter()
        .map(|c| cut(&c, n))
        .collect())
}

fn expansion_side<K: Scalar>(e: &DxExpansion<K>, n: usize) -> Vec<Polynomial<K>> {
    let mut grid = vec![vec![K::zero(); n + 1]; n + 1];
    for (idx, f) in e.terms.iter().enumerate() {
        for k in idx.saturating_sub(n)..=idx {
            let j = idx - k;
            let deriv = f.nth_derivative(k);
            let binom = K::binomial(idx, k);
            for (m, row) in grid.iter_mut().enumerate() {
                let Some(c) = deriv.get(m) else { break };
                if !c.is_zero() {
                    row[j] = row[j].clone() + binom.clone() * c.clone();
                }
            }
        }
    }
    grid.into_iter().map(Polynomial::new).collect()
}

fn cut<K: Scalar>(p: &Polynomial<K>, n: usize) -> Polynomial<K> {
    Polynomial::new(p.coeffs().iter().take(n + 1).cloned().collect())
}
