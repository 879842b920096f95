use std::ops::{Add, Mul, Sub};

use crate::algebra::{Polynomial, ScalarSeries};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A linear operator on `K[x]`, as an expression tree.
///
/// `Compose(r, p)` is `r ∘ p`: `p` is applied first.
#[derive(Clone, Debug, PartialEq)]
pub enum Operator<K> {
    /// Derivative `D`.
    D,
    /// Multiplication by `x`.
    X,
    Identity,
    /// Definite integral from 0, `J p(x) = ∫_0^x p(u) du`.
    Integral,
    /// Forward difference `Δ p(x) = p(x+1) - p(x)`.
    Difference,
    /// Translation `E^a p(x) = p(x+a)`.
    Shift(K),
    /// `p ↦ p(0)` as a constant polynomial.
    EvalZero,
    /// Endomorphism `p ↦ p(q(x))`.
    Substitute(Polynomial<K>),
    /// `f(D) = Σ f_k D^k` for a truncated series `f`.
    SeriesInD(ScalarSeries<K>),
    /// Multiplication by a fixed polynomial.
    PolyInX(Polynomial<K>),
    Compose(Box<Operator<K>>, Box<Operator<K>>),
    Sum(Vec<Operator<K>>),
    Scale(K, Box<Operator<K>>),
}

impl<K: Scalar> Operator<K> {
    pub fn zero() -> Self {
        Operator::Sum(Vec::new())
    }

    pub fn compose(outer: Self, inner: Self) -> Self {
        Operator::Compose(Box::new(outer), Box::new(inner))
    }

    pub fn scaled(c: K, inner: Self) -> Self {
        Operator::Scale(c, Box::new(inner))
    }

    /// `self ∘ self ∘ ... ∘ self`, `k` times; `k = 0` gives the identity.
    pub fn pow(&self, k: usize) -> Self {
        match k {
            0 => Operator::Identity,
            _ => (1..k).fold(self.clone(), |acc, _| Self::compose(acc, self.clone())),
        }
    }

    /// The image `Q p`.
    ///
    /// A `SeriesInD` leaf whose truncation order is below the degree of its
    /// argument is rejected instead of silently dropping terms.
    pub fn apply(&self, p: &Polynomial<K>) -> Result<Polynomial<K>> {
        Ok(match self {
            Operator::D => p.derivative(),
            Operator::X => p.mul_x_pow(1),
            Operator::Identity => p.clone(),
            Operator::Integral => p.integral(),
            Operator::Difference => &p.shift(&K::one()) - p,
            Operator::Shift(a) => p.shift(a),
            Operator::EvalZero => Polynomial::constant(p.eval(&K::zero())),
            Operator::Substitute(q) => p.compose(q),
            Operator::SeriesInD(f) => apply_series(f, p)?,
            Operator::PolyInX(q) => q * p,
            Operator::Compose(outer, inner) => outer.apply(&inner.apply(p)?)?,
            Operator::Sum(terms) => {
                let mut acc = Polynomial::zero();
                for term in terms {
                    acc = &acc + &term.apply(p)?;
                }
                acc
            }
            Operator::Scale(c, inner) => inner.apply(p)?.scale(c),
        })
    }
}

/// `f(D) p`, rejecting truncations too short for `deg p`.
pub fn apply_series<K: Scalar>(f: &ScalarSeries<K>, p: &Polynomial<K>) -> Result<Polynomial<K>> {
    if let Some(d) = p.degree() {
        if d > f.trunc_order() {
            return Err(Error::Truncation {
                needed: d,
                available: f.trunc_order(),
            });
        }
    }
    Ok(apply_series_prefix(f, p))
}

/// `f(D) p` using only the known coefficients of `f`.
pub(crate) fn apply_series_prefix<K: Scalar>(
    f: &ScalarSeries<K>,
    p: &Polynomial<K>,
) -> Polynomial<K> {
    let mut acc = Polynomial::zero();
    let mut deriv = p.clone();
    for c in f.coeffs() {
        if deriv.is_zero() {
            break;
        }
        if !c.is_zero() {
            acc = &acc + &deriv.scale(c);
        }
        deriv = deriv.derivative();
    }
    acc
}

impl<K: Scalar> Add for Operator<K> {
    type Output = Operator<K>;

    fn add(self, rhs: Self) -> Self {
        match self {
            Operator::Sum(mut terms) => {
                terms.push(rhs);
                Operator::Sum(terms)
            }
            lhs => Operator::Sum(vec![lhs, rhs]),
        }
    }
}

impl<K: Scalar> Sub for Operator<K> {
    type Output = Operator<K>;

    fn sub(self, rhs: Self) -> Self {
        self + Operator::scaled(-K::one(), rhs)
    }
}

/// `r * p` is the composition `r ∘ p`.
impl<K: Scalar> Mul for Operator<K> {
    type Output = Operator<K>;

    fn mul(self, rhs: Self) -> Self {
        Operator::compose(self, rhs)
    }
}
