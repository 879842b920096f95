//! Scalar field abstraction.
//!
//! Every engine in this crate is generic over a field of characteristic
//! zero. The intended instantiation is [`BigRational`]; fixed-width ratios
//! are supported for small, overflow-free experiments.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed};

/// An exact scalar from a field of characteristic zero.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Signed + Send + Sync + 'static
{
    fn from_i64(n: i64) -> Self;

    fn from_usize(n: usize) -> Self {
        Self::from_i64(i64::try_from(n).expect("index fits in i64"))
    }

    fn from_frac(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn factorial(n: usize) -> Self {
        (1..=n).fold(Self::one(), |acc, k| acc * Self::from_usize(k))
    }

    /// `(base)_k = base (base - 1) ... (base - k + 1)`, with `(base)_0 = 1`.
    fn falling(base: &Self, k: usize) -> Self {
        let mut acc = Self::one();
        let mut cur = base.clone();
        for _ in 0..k {
            acc = acc * cur.clone();
            cur = cur - Self::one();
        }
        acc
    }

    /// Binomial coefficient `C(n, k)` for nonnegative integers.
    fn binomial(n: usize, k: usize) -> Self {
        if k > n {
            return Self::zero();
        }
        Self::falling(&Self::from_usize(n), k) / Self::factorial(k)
    }
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

macro_rules! impl_scalar_for_ratio {
    ($($t:ty),*) => {
        $(
            impl Scalar for Ratio<$t> {
                fn from_i64(n: i64) -> Self {
                    Ratio::from_integer(<$t>::from(n))
                }
            }
        )*
    };
}

impl_scalar_for_ratio!(i64, i128);
