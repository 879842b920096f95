use std::fmt;

use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Order (valuation) of a truncated series.
///
/// `Infinite` stands for a series whose known prefix is entirely zero;
/// it compares greater than every finite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(n) => write!(f, "{n}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Formal power series in `t` known exactly through `t^N`.
///
/// Binary operations on series of different truncation orders succeed and
/// return the smaller order.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarSeries<K> {
    coeffs: Vec<K>,
}

impl<K: Scalar> ScalarSeries<K> {
    /// Builds a series from `t^0..t^N`; `coeffs` must be nonempty.
    pub fn new(coeffs: Vec<K>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least t^0");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![K::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(K::one(), 0, order)
    }

    /// `c t^e` truncated at `order` (zero if `e > order`).
    pub fn monomial(c: K, e: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if e <= order {
            s.coeffs[e] = c;
        }
        s
    }

    /// Truncates or zero-pads the coefficients of `p` to `t^order`.
    pub fn from_poly(p: &Polynomial<K>, order: usize) -> Self {
        Self::new((0..=order).map(|i| p.coeff(i)).collect())
    }

    /// `exp(t) - 1` through `t^order`; the symbol of the forward difference.
    pub fn exp_minus_one(order: usize) -> Self {
        let mut s = Self::exp_t(order);
        s.coeffs[0] = K::zero();
        s
    }

    /// `exp(a t)` through `t^order`.
    pub fn exp_scaled(a: &K, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = K::one();
        for n in 0..=order {
            coeffs.push(term.clone());
            term = term * a.clone() / K::from_usize(n + 1);
        }
        Self::new(coeffs)
    }

    pub fn exp_t(order: usize) -> Self {
        Self::exp_scaled(&K::one(), order)
    }

    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, or `None` beyond the truncation order.
    pub fn get(&self, i: usize) -> Option<&K> {
        self.coeffs.get(i)
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs[i].clone()
    }

    pub fn order(&self) -> Valuation {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map_or(Valuation::Infinite, Valuation::Finite)
    }

    pub fn is_zero(&self) -> bool {
        self.order() == Valuation::Infinite
    }

    /// The known prefix as a polynomial in `t`.
    pub fn to_poly(&self) -> Polynomial<K> {
        Polynomial::new(self.coeffs.clone())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.trunc_order());
        Self::new(self.coeffs[..=order].to_vec())
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.trunc_order().min(rhs.trunc_order());
        Self::new(
            (0..=n)
                .map(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone())
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-K::one()))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.trunc_order().min(rhs.trunc_order());
        let mut out = vec![K::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(self.trunc_order()), |acc, _| acc.mul(self))
    }

    /// Formal derivative; the result is known one order less.
    ///
    /// A series truncated at order 0 has no known derivative coefficients;
    /// its derivative is reported as the zero series of order 0.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(0);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(e, c)| c.clone() * K::from_usize(e))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |s, _| s.derivative())
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::Invert);
        }
        let inv0 = K::one() / c0.clone();
        let n = self.trunc_order();
        let mut out: Vec<K> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for m in 1..=n {
            let acc = (1..=m).fold(K::zero(), |acc, k| {
                acc + self.coeffs[k].clone() * out[m - k].clone()
            });
            out.push(-acc * inv0.clone());
        }
        Ok(Self::new(out))
    }

    /// `self(inner(t))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Self {
        assert!(
            inner.coeffs[0].is_zero(),
            "composition needs an inner series with zero constant term"
        );
        let n = self.trunc_order().min(inner.trunc_order());
        let inner = inner.truncate(n);
        self.truncate(n)
            .coeffs
            .iter()
            .rev()
            .fold(Self::zero(n), |acc, c| {
                acc.mul(&inner).add(&Self::monomial(c.clone(), 0, n))
            })
    }

    /// Compositional inverse `r` with `self(r(t)) = t`; requires order 1.
    pub fn reverse(&self) -> Result<Self> {
        let order = self.order();
        if order != Valuation::Finite(1) {
            return Err(Error::Reverse {
                found: order.to_string(),
            });
        }
        let n = self.trunc_order();
        let lead_inv = K::one() / self.coeffs[1].clone();
        let mut r = Self::monomial(lead_inv.clone(), 1, n);
        // Fix one coefficient per pass: with r exact through t^(m-1), the
        // t^m coefficient of self(r) is affine in r_m with slope self_1.
        for m in 2..=n {
            let residual = self.compose(&r).coeffs[m].clone();
            r.coeffs[m] = -residual * lead_inv.clone();
        }
        Ok(r)
    }

    /// `exp(self)`; requires zero constant term.
    pub fn exp(&self) -> Self {
        assert!(self.coeffs[0].is_zero(), "exp needs zero constant term");
        let n = self.trunc_order();
        let mut out: Vec<K> = Vec::with_capacity(n + 1);
        out.push(K::one());
        for m in 1..=n {
            let acc = (1..=m).fold(K::zero(), |acc, k| {
                acc + K::from_usize(k) * self.coeffs[k].clone() * out[m - k].clone()
            });
            out.push(acc / K::from_usize(m));
        }
        Self::new(out)
    }

    pub fn render(&self) -> String {
        format!(
            "{} + O(t^{})",
            self.to_poly().render('t'),
            self.trunc_order() + 1
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;
    use proptest::prelude::*;

    type R = BigRational;
    type S = ScalarSeries<R>;

    fn s(c: &[(i64, i64)]) -> S {
        S::new(c.iter().map(|&(n, d)| R::from_frac(n, d)).collect())
    }

    fn arb_series(order: usize) -> impl Strategy<Value = S> {
        prop::collection::vec((-9i64..10, 1i64..6), order + 1)
            .prop_map(|c| S::new(c.iter().map(|&(n, d)| R::from_frac(n, d)).collect()))
    }

    #[test]
    fn geometric_series() {
        let one_minus_t = s(&[(1, 1), (-1, 1), (0, 1), (0, 1)]);
        assert_eq!(one_minus_t.invert().unwrap(), s(&[(1, 1); 4]));
        assert_eq!(S::zero(3).invert(), Err(Error::Invert));
    }

    #[test]
    fn reverse_identity_and_log() {
        let t = S::monomial(R::from_i64(1), 1, 5);
        assert_eq!(t.reverse().unwrap(), t);
        let p = S::exp_minus_one(4);
        let r = p.reverse().unwrap();
        assert_eq!(r, s(&[(0, 1), (1, 1), (-1, 2), (1, 3), (-1, 4)]));
        assert_eq!(p.compose(&r), S::monomial(R::from_i64(1), 1, 4));
        assert!(matches!(
            S::monomial(R::from_i64(1), 2, 4).reverse(),
            Err(Error::Reverse { .. })
        ));
        assert!(S::one(4).reverse().is_err());
    }

    #[test]
    fn truncation_is_minimum() {
        let a = S::exp_t(5);
        let b = S::exp_t(3);
        assert_eq!(a.mul(&b).trunc_order(), 3);
        assert_eq!(a.add(&b).trunc_order(), 3);
        assert_eq!(a.mul(&b), S::exp_scaled(&R::from_i64(2), 3));
    }

    #[test]
    fn order_and_exp() {
        assert_eq!(S::zero(3).order(), Valuation::Infinite);
        assert_eq!(S::exp_minus_one(3).order(), Valuation::Finite(1));
        assert!(Valuation::Finite(100) < Valuation::Infinite);
        let t = S::monomial(R::from_i64(1), 1, 6);
        assert_eq!(t.exp(), S::exp_t(6));
        assert_eq!(S::exp_t(4).derivative(), S::exp_t(3));
    }

    proptest! {
        #[test]
        fn invert_is_exact(mut f in arb_series(6)) {
            f.coeffs[0] = R::from_i64(1);
            let g = f.invert().unwrap();
            prop_assert_eq!(f.mul(&g), S::one(6));
        }

        #[test]
        fn reverse_is_involutive(mut f in arb_series(6)) {
            f.coeffs[0] = R::from_i64(0);
            prop_assume!(!f.coeffs[1].is_zero());
            let r = f.reverse().unwrap();
            prop_assert_eq!(f.compose(&r), S::monomial(R::from_i64(1), 1, 6));
            prop_assert_eq!(r.reverse().unwrap(), f);
        }
    }
}
