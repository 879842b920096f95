use super::poly::Polynomial;
use super::series::ScalarSeries;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Series in `t` with exact polynomial coefficients in `x`, known through
/// `t^N`. Only the `t` direction is truncated.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySeries<K> {
    coeffs: Vec<Polynomial<K>>,
}

impl<K: Scalar> PolySeries<K> {
    pub fn new(coeffs: Vec<Polynomial<K>>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least t^0");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Polynomial::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Polynomial::one();
        s
    }

    /// Lifts a scalar series, each coefficient becoming a constant.
    pub fn from_scalar(f: &ScalarSeries<K>) -> Self {
        Self::new(
            f.coeffs()
                .iter()
                .cloned()
                .map(Polynomial::constant)
                .collect(),
        )
    }

    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Polynomial<K>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Polynomial<K>> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Polynomial<K> {
        &self.coeffs[i]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.trunc_order())].to_vec())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.trunc_order().min(rhs.trunc_order());
        Self::new((0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.trunc_order().min(rhs.trunc_order());
        Self::new((0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.trunc_order().min(rhs.trunc_order());
        let mut out = vec![Polynomial::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn scale_by_poly(&self, p: &Polynomial<K>) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * p).collect())
    }

    /// Multiplicative inverse; the constant coefficient must be exactly 1.
    pub fn invert(&self) -> Result<Self> {
        if self.coeffs[0] != Polynomial::one() {
            return Err(Error::Invert);
        }
        let n = self.trunc_order();
        let mut out: Vec<Polynomial<K>> = Vec::with_capacity(n + 1);
        out.push(Polynomial::one());
        for m in 1..=n {
            let acc = (1..=m).fold(Polynomial::zero(), |acc, k| {
                &acc + &(&self.coeffs[k] * &out[m - k])
            });
            out.push(-acc);
        }
        Ok(Self::new(out))
    }

    /// `exp(self)`; requires a zero constant coefficient.
    pub fn exp(&self) -> Self {
        assert!(self.coeffs[0].is_zero(), "exp needs zero constant term");
        let n = self.trunc_order();
        let mut out: Vec<Polynomial<K>> = Vec::with_capacity(n + 1);
        out.push(Polynomial::one());
        for m in 1..=n {
            let acc = (1..=m).fold(Polynomial::zero(), |acc, k| {
                &acc + &(&self.coeffs[k] * &out[m - k]).scale(&K::from_usize(k))
            });
            out.push(acc.scale(&(K::one() / K::from_usize(m))));
        }
        Self::new(out)
    }
}

/// `exp(x t)` through `t^order`: the coefficient of `t^n` is `x^n / n!`.
pub fn exp_xt<K: Scalar>(order: usize) -> PolySeries<K> {
    PolySeries::new(
        (0..=order)
            .map(|n| Polynomial::monomial(K::one() / K::factorial(n), n))
            .collect(),
    )
}
