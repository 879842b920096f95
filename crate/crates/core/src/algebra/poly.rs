use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// A univariate polynomial with exact coefficients, indexed by exponent.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is
/// the empty vector and equality is structural.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<K> {
    coeffs: Vec<K>,
}

impl<K: Scalar> Polynomial<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn x() -> Self {
        Self::monomial(K::one(), 1)
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: K, exp: usize) -> Self {
        let mut coeffs = vec![K::zero(); exp + 1];
        coeffs[exp] = c;
        Self::new(coeffs)
    }

    /// `(x)_m = x (x - 1) ... (x - m + 1)`.
    pub fn falling_factorial(m: usize) -> Self {
        (0..m).fold(Self::one(), |acc, j| {
            &acc * &Self::new(vec![-K::from_usize(j), K::one()])
        })
    }

    /// Binomial polynomial `C(x, n) = (x)_n / n!`.
    pub fn binomial(n: usize) -> Self {
        Self::falling_factorial(n).scale(&(K::one() / K::factorial(n)))
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    pub fn coeff(&self, exp: usize) -> K {
        self.coeffs.get(exp).cloned().unwrap_or_else(K::zero)
    }

    /// Degree, with `None` standing for the degree of the zero polynomial.
    ///
    /// `None < Some(_)` under `Option`'s ordering, which matches the usual
    /// convention `deg 0 = -inf`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn mul_x_pow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![K::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn derivative(&self) -> Self {
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
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative vanishing at 0.
    pub fn integral(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(K::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(e, c)| c.clone() / K::from_usize(e + 1)),
        );
        Self::new(coeffs)
    }

    pub fn eval(&self, at: &K) -> K {
        self.coeffs
            .iter()
            .rev()
            .fold(K::zero(), |acc, c| acc * at.clone() + c.clone())
    }

    /// `p(q(x))` by Horner's rule.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * inner) + &Self::constant(c.clone())
        })
    }

    /// `p(x + a)`.
    pub fn shift(&self, a: &K) -> Self {
        self.compose(&Self::new(vec![a.clone(), K::one()]))
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Canonical text with `var` as the indeterminate.
    pub fn render(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = c.abs();
            match e {
                0 => out.push_str(&mag.to_string()),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&mag.to_string());
                        out.push('*');
                    }
                    out.push(var);
                    if e > 1 {
                        out.push('^');
                        out.push_str(&e.to_string());
                    }
                }
            }
        }
        out
    }
}

impl<K: Scalar> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render('x'))
    }
}

impl<K: Scalar> Add for &Polynomial<K> {
    type Output = Polynomial<K>;

    fn add(self, rhs: Self) -> Polynomial<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<K: Scalar> Sub for &Polynomial<K> {
    type Output = Polynomial<K>;

    fn sub(self, rhs: Self) -> Polynomial<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<K: Scalar> Mul for &Polynomial<K> {
    type Output = Polynomial<K>;

    fn mul(self, rhs: Self) -> Polynomial<K> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<K: Scalar> Neg for &Polynomial<K> {
    type Output = Polynomial<K>;

    fn neg(self) -> Polynomial<K> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<K: Scalar> $tr for Polynomial<K> {
            type Output = Polynomial<K>;

            fn $method(self, rhs: Self) -> Polynomial<K> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<K: Scalar> Neg for Polynomial<K> {
    type Output = Polynomial<K>;

    fn neg(self) -> Polynomial<K> {
        -&self
    }
}
