//! Normal ordering in the Weyl algebra generated by `D` and `X`.

use std::collections::BTreeMap;

use crate::algebra::{Polynomial, ScalarSeries};
use crate::error::{Error, Result};
use crate::operator::apply_series_prefix;
use crate::scalar::Scalar;

/// Which letters come first in a normal-ordered word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ordering {
    /// `X^a D^b`: multiplications left of derivatives.
    Xd,
    /// `D^b X^a`: derivatives left of multiplications.
    Dx,
}

/// One word `coef · X^x_pow D^d_pow` (or `coef · D^d_pow X^x_pow`).
#[derive(Clone, Debug, PartialEq)]
pub struct NormalTerm<K> {
    pub coef: K,
    pub x_pow: usize,
    pub d_pow: usize,
}

/// A finite sum of normal-ordered words.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm<K> {
    pub ordering: Ordering,
    pub terms: Vec<NormalTerm<K>>,
}

impl<K: Scalar> NormalForm<K> {
    /// The single word `D^d X^x` (in `Dx` order) or `X^x D^d` (in `Xd` order).
    pub fn word(ordering: Ordering, x_pow: usize, d_pow: usize) -> Self {
        Self {
            ordering,
            terms: vec![NormalTerm {
                coef: K::one(),
                x_pow,
                d_pow,
            }],
        }
    }

    pub fn apply(&self, p: &Polynomial<K>) -> Polynomial<K> {
        self.terms.iter().fold(Polynomial::zero(), |acc, term| {
            let image = match self.ordering {
                Ordering::Xd => p.nth_derivative(term.d_pow).mul_x_pow(term.x_pow),
                Ordering::Dx => p.mul_x_pow(term.x_pow).nth_derivative(term.d_pow),
            };
            &acc + &image.scale(&term.coef)
        })
    }

    /// Coefficients keyed by `(x_pow, d_pow)`, zero entries dropped.
    pub fn collect(&self) -> BTreeMap<(usize, usize), K> {
        let mut out: BTreeMap<(usize, usize), K> = BTreeMap::new();
        for term in &self.terms {
            let slot = out.entry((term.x_pow, term.d_pow)).or_insert_with(K::zero);
            *slot = slot.clone() + term.coef.clone();
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Rewrites every word into the opposite ordering and collects terms.
    pub fn reorder(&self) -> Self {
        let mut acc: BTreeMap<(usize, usize), K> = BTreeMap::new();
        for term in &self.terms {
            let rewritten: NormalForm<K> = match self.ordering {
                Ordering::Xd => normal_order_xi_dj(term.x_pow, term.d_pow),
                Ordering::Dx => normal_order_dj_xi(term.d_pow, term.x_pow),
            };
            for w in rewritten.terms {
                let slot = acc.entry((w.x_pow, w.d_pow)).or_insert_with(K::zero);
                *slot = slot.clone() + w.coef * term.coef.clone();
            }
        }
        let ordering = match self.ordering {
            Ordering::Xd => Ordering::Dx,
            Ordering::Dx => Ordering::Xd,
        };
        Self {
            ordering,
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((x_pow, d_pow), coef)| NormalTerm { coef, x_pow, d_pow })
                .collect(),
        }
    }
}

/// `D^j X^i = Σ_k (i)_k (j)_k / k! · X^{i-k} D^{j-k}`.
pub fn normal_order_dj_xi<K: Scalar>(j: usize, i: usize) -> NormalForm<K> {
    NormalForm {
        ordering: Ordering::Xd,
        terms: (0..=i.min(j))
            .map(|k| NormalTerm {
                coef: weyl_coef::<K>(i, j, k),
                x_pow: i - k,
                d_pow: j - k,
            })
            .collect(),
    }
}

/// `X^i D^j = Σ_k (-1)^k (i)_k (j)_k / k! · D^{j-k} X^{i-k}`.
pub fn normal_order_xi_dj<K: Scalar>(i: usize, j: usize) -> NormalForm<K> {
    NormalForm {
        ordering: Ordering::Dx,
        terms: (0..=i.min(j))
            .map(|k| {
                let c = weyl_coef::<K>(i, j, k);
                NormalTerm {
                    coef: if k % 2 == 0 { c } else { -c },
                    x_pow: i - k,
                    d_pow: j - k,
                }
            })
            .collect(),
    }
}

fn weyl_coef<K: Scalar>(i: usize, j: usize, k: usize) -> K {
    K::falling(&K::from_usize(i), k) * K::falling(&K::from_usize(j), k) / K::factorial(k)
}

/// Direction of [`reorder_product`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reorder {
    /// `f(D) p(X) = Σ_k p^(k)(X) f^(k)(D) / k!`.
    FdPxToXd,
    /// `p(X) f(D) = Σ_k (-1)^k f^(k)(D) p^(k)(X) / k!`.
    PxFdToDx,
}

/// `Σ_k poly_k(X) ∘ series_k(D)` (`Xd`) or `Σ_k series_k(D) ∘ poly_k(X)` (`Dx`).
#[derive(Clone, Debug, PartialEq)]
pub struct MixedForm<K> {
    pub ordering: Ordering,
    pub terms: Vec<(Polynomial<K>, ScalarSeries<K>)>,
    /// Largest input degree on which the truncated series suffice.
    pub valid_degree: Option<usize>,
}

impl<K: Scalar> MixedForm<K> {
    pub fn apply(&self, p: &Polynomial<K>) -> Result<Polynomial<K>> {
        let Some(deg) = p.degree() else {
            return Ok(Polynomial::zero());
        };
        match self.valid_degree {
            Some(v) if deg <= v => {}
            _ => {
                return Err(Error::Truncation {
                    needed: deg,
                    available: self.valid_degree.unwrap_or(0),
                })
            }
        }
        Ok(self.terms.iter().fold(Polynomial::zero(), |acc, (a, f)| {
            let image = match self.ordering {
                Ordering::Xd => a * &apply_series_prefix(f, p),
                Ordering::Dx => apply_series_prefix(f, &(a * p)),
            };
            &acc + &image
        }))
    }
}

/// Moves `p(X)` across `f(D)`. The sum stops at `k = deg p`.
pub fn reorder_product<K: Scalar>(
    f: &ScalarSeries<K>,
    p: &Polynomial<K>,
    direction: Reorder,
) -> MixedForm<K> {
    let deg_p = p.degree().unwrap_or(0);
    let mut terms = Vec::new();
    let mut pk = p.clone();
    let mut fk = f.clone();
    let mut k = 0usize;
    while !pk.is_zero() {
        let mut c = K::one() / K::factorial(k);
        if direction == Reorder::PxFdToDx && k % 2 == 1 {
            c = -c;
        }
        terms.push((pk.scale(&c), fk.clone()));
        pk = pk.derivative();
        fk = fk.derivative();
        k += 1;
    }
    MixedForm {
        ordering: match direction {
            Reorder::FdPxToXd => Ordering::Xd,
            Reorder::PxFdToDx => Ordering::Dx,
        },
        terms,
        valid_degree: f.trunc_order().checked_sub(deg_p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type R = BigRational;
    type P = Polynomial<R>;

    fn r(n: i64) -> R {
        R::from_i64(n)
    }

    fn p(text: &str) -> P {
        text.parse().unwrap()
    }

    #[test]
    fn commutator() {
        let nf = normal_order_dj_xi::<R>(1, 1);
        assert_eq!(
            nf.terms,
            vec![
                NormalTerm {
                    coef: r(1),
                    x_pow: 1,
                    d_pow: 1
                },
                NormalTerm {
                    coef: r(1),
                    x_pow: 0,
                    d_pow: 0
                },
            ]
        );
        let back = normal_order_xi_dj::<R>(1, 1);
        assert_eq!(back.terms[1].coef, r(-1));
        assert_eq!(normal_order_dj_xi::<R>(0, 4).terms.len(), 1);
        assert_eq!(normal_order_xi_dj::<R>(3, 0).terms[0].x_pow, 3);
    }

    #[test]
    fn two_two() {
        let xd = normal_order_dj_xi::<R>(2, 2).collect();
        assert_eq!(xd[&(2, 2)], r(1));
        assert_eq!(xd[&(1, 1)], r(4));
        assert_eq!(xd[&(0, 0)], r(2));
        let dx = normal_order_xi_dj::<R>(2, 2).collect();
        assert_eq!(dx[&(1, 1)], r(-4));
        assert_eq!(dx[&(0, 0)], r(2));
        for m in 0..7 {
            let mono = P::monomial(r(1), m);
            let direct = mono.mul_x_pow(2).nth_derivative(2);
            assert_eq!(normal_order_dj_xi::<R>(2, 2).apply(&mono), direct);
            let direct = mono.nth_derivative(2).mul_x_pow(2);
            assert_eq!(normal_order_xi_dj::<R>(2, 2).apply(&mono), direct);
        }
    }

    #[test]
    fn reorder_roundtrip() {
        let nf = normal_order_dj_xi::<R>(3, 2);
        assert_eq!(
            nf.reorder().collect(),
            NormalForm::<R>::word(Ordering::Dx, 2, 3).collect()
        );
    }

    #[test]
    fn mixed_products() {
        let t = ScalarSeries::monomial(r(1), 1, 6);
        let m = reorder_product(&t, &p("x"), Reorder::FdPxToXd);
        assert_eq!(m.terms.len(), 2);
        assert_eq!(m.apply(&p("x^3")).unwrap(), p("4x^3"));
        let t2 = ScalarSeries::monomial(r(1), 2, 8);
        let m = reorder_product(&t2, &p("x^2"), Reorder::FdPxToXd);
        let nf = normal_order_dj_xi::<R>(2, 2);
        for k in 0..=6 {
            let mono = P::monomial(r(1), k);
            assert_eq!(m.apply(&mono).unwrap(), nf.apply(&mono));
        }
        let f = ScalarSeries::exp_t(5);
        let one = reorder_product(&f, &P::one(), Reorder::PxFdToDx);
        assert_eq!(one.terms, vec![(P::one(), f)]);
        assert!(matches!(
            m.apply(&P::monomial(r(1), 7)),
            Err(Error::Truncation { .. })
        ));
    }
}
