//! Delta operators `P = f(D)`, their polynomial sequences, umbral operators
//! and umbral shifts.

use std::sync::Arc;

use crate::algebra::{PolySeries, Polynomial, ScalarSeries, Valuation};
use crate::dx::{DxExpansion, Growth, Tail};
use crate::error::{Error, Result};
use crate::operator::{Operator, OperatorTable};
use crate::scalar::Scalar;
use crate::xd::{divided_power_basis, Basis, DividedPowers, XdExpansion};

/// A delta operator `f(D)` with `ord f = 1`, known through `t^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Delta<K> {
    f: ScalarSeries<K>,
}

/// Wraps `f` after checking `ord f = 1`.
pub fn delta_from_series<K: Scalar>(f: ScalarSeries<K>) -> Result<Delta<K>> {
    match f.order() {
        Valuation::Finite(1) => Ok(Delta { f }),
        other => Err(Error::NotDelta {
            found: other.to_string(),
        }),
    }
}

impl<K: Scalar> Delta<K> {
    /// `D` itself.
    pub fn d(order: usize) -> Self {
        Self {
            f: ScalarSeries::monomial(K::one(), 1, order.max(1)),
        }
    }

    /// The forward difference, `f = e^t - 1`.
    pub fn forward_difference(order: usize) -> Self {
        Self {
            f: ScalarSeries::exp_minus_one(order.max(1)),
        }
    }

    pub fn symbol(&self) -> &ScalarSeries<K> {
        &self.f
    }

    pub fn trunc_order(&self) -> usize {
        self.f.trunc_order()
    }

    pub fn operator(&self) -> Operator<K> {
        Operator::SeriesInD(self.f.clone())
    }

    /// `P x = f'(0)`.
    pub fn px(&self) -> K {
        self.f.coeff(1)
    }

    fn budget(&self, needed: usize) -> Result<()> {
        if needed > self.trunc_order() {
            return Err(Error::Truncation {
                needed,
                available: self.trunc_order(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    /// `P p_n = p_{n-1}`, `p_n(0) = δ_{n0}`.
    DividedPower,
    /// `n! p_n`.
    Basic,
    /// `Σ p̄_k(x) t^k / k! = exp(x f(t))`.
    Conjugate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolySequence<K> {
    pub kind: SequenceKind,
    pub polys: Vec<Polynomial<K>>,
    pub source: Delta<K>,
}

impl<K: Scalar> PolySequence<K> {
    /// The basic family of a divided-power sequence.
    pub fn basic(&self) -> Self {
        assert_eq!(self.kind, SequenceKind::DividedPower);
        Self {
            kind: SequenceKind::Basic,
            polys: self
                .polys
                .iter()
                .enumerate()
                .map(|(n, p)| p.scale(&K::factorial(n)))
                .collect(),
            source: self.source.clone(),
        }
    }
}

/// Divided powers and conjugate sequence through index `n`.
///
/// The divided powers need `n + 1 <= N`, since degree reduction is checked
/// one step past the last polynomial.
pub fn sequences<K: Scalar>(p: &Delta<K>, n: usize) -> Result<(PolySequence<K>, PolySequence<K>)> {
    let divided = divided_powers(p, n)?;
    let conjugate = conjugate_sequence(p, n)?;
    Ok((
        PolySequence {
            kind: SequenceKind::DividedPower,
            polys: divided.polys,
            source: p.clone(),
        },
        PolySequence {
            kind: SequenceKind::Conjugate,
            polys: conjugate,
            source: p.clone(),
        },
    ))
}

fn divided_powers<K: Scalar>(p: &Delta<K>, n: usize) -> Result<DividedPowers<K>> {
    p.budget(n + 1)?;
    divided_power_basis(&p.operator(), n)
}

/// `p̄_0..p̄_n` from `exp(x f(t))`.
pub fn conjugate_sequence<K: Scalar>(p: &Delta<K>, n: usize) -> Result<Vec<Polynomial<K>>> {
    p.budget(n)?;
    let xf = PolySeries::new(
        (0..=n)
            .map(|k| Polynomial::monomial(p.f.coeff(k), 1))
            .collect(),
    );
    Ok(xf
        .exp()
        .into_coeffs()
        .into_iter()
        .enumerate()
        .map(|(k, c)| c.scale(&K::factorial(k)))
        .collect())
}

/// `U_P p`, the linear extension of `x^k ↦ p̄_k`.
pub fn umbral_op_apply<K: Scalar>(p: &Delta<K>, q: &Polynomial<K>) -> Result<Polynomial<K>> {
    let Some(d) = q.degree() else {
        return Ok(Polynomial::zero());
    };
    let conj = conjugate_sequence(p, d)?;
    Ok(q.coeffs()
        .iter()
        .zip(&conj)
        .fold(Polynomial::zero(), |acc, (c, pk)| &acc + &pk.scale(c)))
}

/// `U_P` as a row table through degree `n`; higher rows are truncation
/// errors.
pub fn umbral_op_table<K: Scalar>(p: &Delta<K>, n: usize) -> Result<OperatorTable<K>> {
    let conj = Arc::new(conjugate_sequence(p, n)?);
    Ok(OperatorTable::from_oracle(Arc::new(move |row| {
        conj.get(row).cloned().ok_or(Error::Truncation {
            needed: row,
            available: conj.len() - 1,
        })
    })))
}

/// `U_P = Σ_k X^k (P - D)^k / k!` as an XD-expansion through `D^n`.
pub fn umbral_op_xd<K: Scalar>(p: &Delta<K>, n: usize) -> Result<XdExpansion<K>> {
    p.budget(n)?;
    let g = p.f.truncate(n).sub(&ScalarSeries::monomial(K::one(), 1, n));
    let mut terms = vec![Polynomial::zero(); n + 1];
    let mut gk: ScalarSeries<K> = ScalarSeries::one(n);
    for k in 0..=n {
        let inv_fact = K::one() / K::factorial(k);
        for (m, slot) in terms.iter_mut().enumerate() {
            let c = gk.coeff(m);
            if !c.is_zero() {
                *slot = &*slot + &Polynomial::monomial(c * inv_fact.clone(), k);
            }
        }
        gk = gk.mul(&g);
    }
    Ok(XdExpansion {
        basis: Basis::D,
        terms,
    })
}

/// `Σ_{k <= K} s'(D) (D - s(D))^k X^k / k!` for a series `s` of order 1.
///
/// Taking `s = f` gives the operator `x^n ↦ n! p_n` (the inverse of
/// `U_P`); [`umbral_op_dx`] takes `s = f^{-1}`.
pub fn gj_expansion<K: Scalar>(s: &ScalarSeries<K>, k_max: usize) -> Result<DxExpansion<K>> {
    let n = s.trunc_order();
    let r = ScalarSeries::monomial(K::one(), 1, n).sub(s);
    let ds = s.derivative();
    let mut terms = Vec::with_capacity(k_max + 1);
    let mut rk: ScalarSeries<K> = ScalarSeries::one(n);
    for k in 0..=k_max {
        terms.push(ds.mul(&rk).scale(&(K::one() / K::factorial(k))));
        rk = rk.mul(&r);
    }
    DxExpansion::new(
        terms,
        Tail::Open,
        Growth::AtLeast {
            slope: 1,
            intercept: 0,
        },
    )
}

/// DX-expansion of `U_P` through `X^K`; needs `P x = 1`.
pub fn umbral_op_dx<K: Scalar>(p: &Delta<K>, k_max: usize) -> Result<DxExpansion<K>> {
    if !p.px().is_one() {
        return Err(Error::NotDxEligible {
            px: p.px().to_string(),
        });
    }
    gj_expansion(&p.f.reverse()?, k_max)
}

/// Symbol of the Pincherle derivative `P' = PX - XP`.
pub fn pincherle_derivative<K: Scalar>(f: &ScalarSeries<K>) -> ScalarSeries<K> {
    f.derivative()
}

/// `σ_P q`, the linear extension of `p_n ↦ (n+1) p_{n+1}`.
pub fn umbral_shift_apply<K: Scalar>(p: &Delta<K>, q: &Polynomial<K>) -> Result<Polynomial<K>> {
    let Some(d) = q.degree() else {
        return Ok(Polynomial::zero());
    };
    let basis = divided_powers(p, d + 1)?;
    let coords = basis.to_basis(q)?;
    Ok(coords
        .iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (n, c)| {
            &acc + &basis.polys[n + 1].scale(&(c.clone() * K::from_usize(n + 1)))
        }))
}

/// `σ_P = X (1/P')` through `D^n`.
pub fn rodrigues_xd<K: Scalar>(p: &Delta<K>, n: usize) -> Result<XdExpansion<K>> {
    p.budget(n + 1)?;
    let inv = pincherle_derivative(&p.f).invert()?;
    Ok(XdExpansion {
        basis: Basis::D,
        terms: (0..=n)
            .map(|k| Polynomial::monomial(inv.coeff(k), 1))
            .collect(),
    })
}

/// `σ_P = (1/P') X + P''/(P')^2`, valid on degree `<= n`.
///
/// The formula is evaluated for `cP` with `c = 1/f'(0)`, so that `cP x = 1`,
/// and scaled back through `σ_P = c σ_{cP}`.
pub fn umbral_shift_dx<K: Scalar>(p: &Delta<K>, n: usize) -> Result<DxExpansion<K>> {
    p.budget(n + 2)?;
    let (c, g) = normalized(&p.f.truncate(n + 2));
    let dg = g.derivative();
    let inv = dg.invert()?;
    let f1 = inv.scale(&c);
    let f0 = dg.derivative().mul(&inv).mul(&inv).scale(&c);
    Ok(DxExpansion::new(vec![f0, f1], Tail::Zero, Growth::Strict)?.cap_valid_degree(n))
}

/// `(c, c f)` with `c = 1/f'(0)`.
fn normalized<K: Scalar>(f: &ScalarSeries<K>) -> (K, ScalarSeries<K>) {
    let c = K::one() / f.coeff(1);
    let g = f.scale(&c);
    (c, g)
}

/// The delta operator `r(D)` with `r(f(t)) = t`.
pub fn delta_inverse<K: Scalar>(p: &Delta<K>) -> Result<Delta<K>> {
    Ok(Delta { f: p.f.reverse()? })
}

/// `p ↦ p(q(x))` as `Σ_n (q(x) - x)^n / n! · D^n`.
pub fn endomorphism_xd<K: Scalar>(q: &Polynomial<K>, n: usize) -> XdExpansion<K> {
    let diff = q - &Polynomial::x();
    XdExpansion {
        basis: Basis::D,
        terms: (0..=n)
            .map(|k| diff.pow(k).scale(&(K::one() / K::factorial(k))))
            .collect(),
    }
}
