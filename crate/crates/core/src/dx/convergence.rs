//! Window-relative convergence certificates for `Σ f_k(D) X^k`.
//!
//! The sum converges in the discrete topology when `ord(f_k) - k` tends to
//! infinity. A finite window can only show this trend, so a certificate
//! names the window it was read from.

use std::fmt;

use crate::algebra::Valuation;

/// `ord(f_k) - k`; `Infinite` for a term that is zero on its known prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Margin {
    Finite(i64),
    Infinite,
}

impl fmt::Display for Margin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Margin::Finite(m) => write!(f, "{m}"),
            Margin::Infinite => f.write_str("inf"),
        }
    }
}

/// What is known about the terms past the last listed `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tail {
    /// All later terms are zero: the expansion is a finite sum.
    Zero,
    /// Later terms are unknown.
    Open,
}

/// Growth required of the margins over the window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Growth {
    /// Each finite margin exceeds every earlier finite margin.
    Strict,
    /// `margin_k >= slope * k + intercept`, with `slope >= 1`.
    AtLeast { slope: i64, intercept: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    /// Only the listed terms exist.
    FiniteSum,
    /// `margin_k >= slope * k + intercept` for every `k`.
    Linear { slope: i64, intercept: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceCertificate {
    /// Last index `K` of the inspected window `0..=K`.
    pub window: usize,
    pub margins: Vec<Margin>,
    pub bound: Bound,
}

impl ConvergenceCertificate {
    /// Largest input degree `n` such that no term past the window acts on a
    /// polynomial of degree `<= n`; `None` when the sum is finite.
    ///
    /// `f_k(D) X^k p` vanishes once `ord(f_k) > deg p + k`, i.e. once the
    /// margin exceeds `deg p`.
    pub fn degree_bound(&self) -> Option<i64> {
        match self.bound {
            Bound::FiniteSum => None,
            Bound::Linear { slope, intercept } => {
                Some(slope * (self.window as i64 + 1) + intercept - 1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvergenceVerdict {
    Certified(ConvergenceCertificate),
    Violated { at_k: usize, margin: Margin },
}

impl ConvergenceVerdict {
    pub fn certificate(&self) -> Option<&ConvergenceCertificate> {
        match self {
            ConvergenceVerdict::Certified(c) => Some(c),
            ConvergenceVerdict::Violated { .. } => None,
        }
    }
}

/// Checks `(k, ord f_k)` for `k = 0..=K` against `growth`.
///
/// # Panics
///
/// If `orders` does not list `k = 0, 1, ..., K` in sequence, or if an
/// `AtLeast` requirement has `slope < 1`.
pub fn dx_convergence_check(
    orders: &[(usize, Valuation)],
    tail: Tail,
    growth: Growth,
) -> ConvergenceVerdict {
    for (i, (k, _)) in orders.iter().enumerate() {
        assert_eq!(*k, i, "orders must list k = 0..=K in sequence");
    }
    let margins: Vec<Margin> = orders
        .iter()
        .map(|&(k, ord)| match ord {
            Valuation::Finite(o) => Margin::Finite(o as i64 - k as i64),
            Valuation::Infinite => Margin::Infinite,
        })
        .collect();
    let window = orders.len().saturating_sub(1);
    if tail == Tail::Zero {
        return ConvergenceVerdict::Certified(ConvergenceCertificate {
            window,
            margins,
            bound: Bound::FiniteSum,
        });
    }
    let bound = match growth {
        Growth::Strict => {
            let mut best: Option<i64> = None;
            let mut intercept: Option<i64> = None;
            for (k, m) in margins.iter().enumerate() {
                let Margin::Finite(m) = *m else { continue };
                if best.is_some_and(|b| m <= b) {
                    return ConvergenceVerdict::Violated {
                        at_k: k,
                        margin: Margin::Finite(m),
                    };
                }
                best = Some(m);
                let c = m - k as i64;
                intercept = Some(intercept.map_or(c, |i: i64| i.min(c)));
            }
            // every term zero: the margin grows without bound
            Bound::Linear {
                slope: 1,
                intercept: intercept.unwrap_or(window as i64 + 1),
            }
        }
        Growth::AtLeast { slope, intercept } => {
            assert!(slope >= 1, "a divergent margin needs slope >= 1");
            for (k, m) in margins.iter().enumerate() {
                if let Margin::Finite(m) = *m {
                    if m < slope * k as i64 + intercept {
                        return ConvergenceVerdict::Violated {
                            at_k: k,
                            margin: Margin::Finite(m),
                        };
                    }
                }
            }
            Bound::Linear { slope, intercept }
        }
    };
    ConvergenceVerdict::Certified(ConvergenceCertificate {
        window,
        margins,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(f: impl Fn(usize) -> Valuation, k: usize) -> Vec<(usize, Valuation)> {
        (0..=k).map(|i| (i, f(i))).collect()
    }

    #[test]
    fn even_powers_certified() {
        let v = dx_convergence_check(
            &orders(|k| Valuation::Finite(2 * k), 6),
            Tail::Open,
            Growth::Strict,
        );
        let cert = v.certificate().unwrap();
        assert_eq!(cert.margins[4], Margin::Finite(4));
        assert_eq!(
            cert.bound,
            Bound::Linear {
                slope: 1,
                intercept: 0
            }
        );
        assert_eq!(cert.degree_bound(), Some(6));
        let v = dx_convergence_check(
            &orders(|k| Valuation::Finite(2 * k), 6),
            Tail::Open,
            Growth::AtLeast {
                slope: 1,
                intercept: 0,
            },
        );
        assert!(v.certificate().is_some());
    }

    #[test]
    fn constant_terms_violate() {
        let v = dx_convergence_check(
            &orders(|_| Valuation::Finite(0), 5),
            Tail::Open,
            Growth::Strict,
        );
        assert_eq!(
            v,
            ConvergenceVerdict::Violated {
                at_k: 1,
                margin: Margin::Finite(-1)
            }
        );
    }

    #[test]
    fn flat_margin_violates_strict() {
        let v = dx_convergence_check(&orders(Valuation::Finite, 5), Tail::Open, Growth::Strict);
        assert_eq!(
            v,
            ConvergenceVerdict::Violated {
                at_k: 1,
                margin: Margin::Finite(0)
            }
        );
        let finite =
            dx_convergence_check(&orders(Valuation::Finite, 5), Tail::Zero, Growth::Strict);
        assert_eq!(finite.certificate().unwrap().degree_bound(), None);
    }

    #[test]
    fn zero_terms_are_skipped() {
        let o = vec![
            (0, Valuation::Finite(0)),
            (1, Valuation::Infinite),
            (2, Valuation::Finite(3)),
        ];
        let v = dx_convergence_check(&o, Tail::Open, Growth::Strict);
        assert_eq!(v.certificate().unwrap().margins[1], Margin::Infinite);
    }
}
