//! Diagonal fitting: is `q_t(n) = c_{n,n+t}` a polynomial in `n`?
//!
//! Verdicts are relative to the sampled window `n = 0..=n_max`. A degree `d`
//! is accepted only if `d + slack <= n_max`, so at least `slack` zero
//! entries of `Δ^{d+1} q_t` back it up.

use std::collections::BTreeMap;
use std::thread;

use crate::algebra::Polynomial;
use crate::error::{Error, Result};
use crate::operator::OperatorTable;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub n_max: usize,
    pub slack: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FitVerdict<K> {
    /// Newton-form fit, as a polynomial in `n`.
    Polynomial(Polynomial<K>),
    /// `Δ^order q_t` is nonzero somewhere on the window, and so is every
    /// lower difference; `witness` is its first nonzero entry.
    NotPolynomial {
        order: usize,
        witness: K,
    },
    Zero,
    /// A nonzero `q_t` with `t < 0` vanishes at `n = 0..-t-1`, so its degree
    /// is at least `-t`; the window is too short to confirm such a degree.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalFit<K> {
    pub t: i64,
    pub samples: Vec<K>,
    pub verdict: FitVerdict<K>,
    pub window: Window,
}

/// Rows `s, Δs, Δ²s, ...`; row `j` has `len - j` entries.
pub fn forward_differences<K: Scalar>(samples: &[K]) -> Vec<Vec<K>> {
    let mut rows = vec![samples.to_vec()];
    while rows.last().is_some_and(|r| r.len() > 1) {
        let last = rows.last().expect("nonempty");
        let next = last
            .windows(2)
            .map(|w| w[1].clone() - w[0].clone())
            .collect();
        rows.push(next);
    }
    rows
}

/// Fits `q_t` from its samples at `n = 0..=n_max`.
pub fn fit_diagonal<K: Scalar>(t: i64, samples: Vec<K>, slack: usize) -> Result<DiagonalFit<K>> {
    let n_max = samples.len().saturating_sub(1);
    if samples.is_empty() || n_max < slack + 2 {
        return Err(Error::WindowTooSmall { n_max, slack });
    }
    let window = Window { n_max, slack };
    let diffs = forward_differences(&samples);
    let verdict = if samples.iter().all(|s| s.is_zero()) {
        FitVerdict::Zero
    } else if let Some(d) = (0..=n_max - slack).find(|&d| diffs[d + 1].iter().all(|c| c.is_zero()))
    {
        let newton = (0..=d).fold(Polynomial::zero(), |acc, j| {
            &acc + &Polynomial::binomial(j).scale(&diffs[j][0])
        });
        FitVerdict::Polynomial(newton)
    } else if -t + slack as i64 > n_max as i64 {
        FitVerdict::Inconclusive
    } else {
        let order = n_max - slack + 1;
        let witness = diffs[order]
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .expect("a nonvanishing difference row");
        FitVerdict::NotPolynomial { order, witness }
    };
    Ok(DiagonalFit {
        t,
        samples,
        verdict,
        window,
    })
}

/// Overall reading of a window of diagonal fits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DxVerdict {
    /// Every fit is polynomial, zero or inconclusive, and the top of the
    /// window shows the vanishing tail.
    Accepted,
    /// `q_t` is not a polynomial on the window.
    Rejected { t: i64 },
    /// No rejection, but no vanishing tail was observed.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DxReport<K> {
    pub fits: Vec<DiagonalFit<K>>,
    /// Smallest `T` such that every fitted `q_t` with `T < t <= t_max` is
    /// zero; `None` when `q_{t_max}` is not.
    pub vanishing_above: Option<i64>,
}

impl<K: Scalar> DxReport<K> {
    pub fn verdict(&self) -> DxVerdict {
        if let Some(fit) = self
            .fits
            .iter()
            .find(|f| matches!(f.verdict, FitVerdict::NotPolynomial { .. }))
        {
            return DxVerdict::Rejected { t: fit.t };
        }
        match self.vanishing_above {
            Some(_) => DxVerdict::Accepted,
            None => DxVerdict::Inconclusive,
        }
    }

    pub fn fit(&self, t: i64) -> Option<&DiagonalFit<K>> {
        self.fits.iter().find(|f| f.t == t)
    }

    /// The fitted diagonals as polynomials in `n`.
    ///
    /// Fails with `NotDx` if any diagonal in the window is not polynomial.
    /// Inconclusive diagonals are left out of the family.
    pub fn family(&self) -> Result<DiagonalFamily<K>> {
        let mut diags = BTreeMap::new();
        for fit in &self.fits {
            match &fit.verdict {
                FitVerdict::Polynomial(p) => {
                    diags.insert(fit.t, p.clone());
                }
                FitVerdict::Zero => {
                    diags.insert(fit.t, Polynomial::zero());
                }
                FitVerdict::Inconclusive => {}
                FitVerdict::NotPolynomial { .. } => {
                    return Err(Error::NotDx {
                        t: fit.t,
                        reason: "diagonal is not a polynomial in n".into(),
                    })
                }
            }
        }
        Ok(DiagonalFamily {
            diags,
            vanishing_above: self.vanishing_above,
        })
    }
}

/// Diagonal polynomials `q_t(n)` of one operator, with the observed
/// vanishing bound.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalFamily<K> {
    pub diags: BTreeMap<i64, Polynomial<K>>,
    pub vanishing_above: Option<i64>,
}

impl<K: Scalar> DiagonalFamily<K> {
    /// `q_t`, which is zero above the vanishing bound.
    pub fn get(&self, t: i64) -> Result<Polynomial<K>> {
        if self.vanishing_above.is_some_and(|v| t > v) {
            return Ok(Polynomial::zero());
        }
        self.diags
            .get(&t)
            .cloned()
            .ok_or(Error::MissingDiagonal { t })
    }
}

/// Fits every diagonal `t_min..=t_max` on the window `n = 0..=n_max`.
///
/// The rows `Q x^0..Q x^n_max` are filled in parallel before fitting.
pub fn dx_check<K: Scalar>(
    table: &OperatorTable<K>,
    t_min: i64,
    t_max: i64,
    n_max: usize,
    slack: usize,
) -> Result<DxReport<K>> {
    if n_max < slack + 2 {
        return Err(Error::WindowTooSmall { n_max, slack });
    }
    assert!(t_min <= t_max, "empty diagonal range");
    prefill_rows(table, n_max)?;
    let fits = (t_min..=t_max)
        .map(|t| fit_diagonal(t, table.diagonal(t, n_max)?, slack))
        .collect::<Result<Vec<_>>>()?;
    let mut vanishing_above = None;
    for fit in fits.iter().rev() {
        if fit.verdict != FitVerdict::Zero {
            break;
        }
        vanishing_above = Some(fit.t - 1);
    }
    Ok(DxReport {
        fits,
        vanishing_above,
    })
}

fn prefill_rows<K: Scalar>(table: &OperatorTable<K>, n_max: usize) -> Result<()> {
    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(n_max + 1);
    thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    (w..=n_max)
                        .step_by(workers)
                        .try_for_each(|n| table.row(n).map(|_| ()))
                })
            })
            .collect();
        handles
            .into_iter()
            .try_for_each(|h| h.join().expect("row worker panicked"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::Operator;
    use num_rational::BigRational;

    type R = BigRational;
    type Op = Operator<R>;

    fn check(op: Op, t_min: i64, t_max: i64) -> DxReport<R> {
        dx_check(&OperatorTable::new(op), t_min, t_max, 12, 3).unwrap()
    }

    #[test]
    fn integral_rejected_at_t1() {
        let rep = check(Op::Integral, -1, 2);
        assert!(matches!(
            rep.fit(1).unwrap().verdict,
            FitVerdict::NotPolynomial { .. }
        ));
        assert_eq!(rep.fit(0).unwrap().verdict, FitVerdict::Zero);
        assert_eq!(rep.verdict(), DxVerdict::Rejected { t: 1 });
    }

    #[test]
    fn eval_zero_and_dilation_rejected() {
        let rep = check(Op::EvalZero, 0, 2);
        assert!(matches!(
            rep.fit(0).unwrap().verdict,
            FitVerdict::NotPolynomial { .. }
        ));
        let rep = check(Op::Substitute("2x".parse().unwrap()), 0, 1);
        assert!(matches!(
            rep.fit(0).unwrap().verdict,
            FitVerdict::NotPolynomial { .. }
        ));
    }

    #[test]
    fn shift_accepted_with_binomial_diagonals() {
        let rep = check(Op::Shift(R::from_i64(1)), -12, 3);
        assert_eq!(rep.verdict(), DxVerdict::Accepted);
        assert_eq!(rep.vanishing_above, Some(0));
        let FitVerdict::Polynomial(q) = &rep.fit(-2).unwrap().verdict else {
            panic!("q_-2 should fit")
        };
        assert_eq!(q, &Polynomial::binomial(2));
        assert_eq!(rep.fit(-12).unwrap().verdict, FitVerdict::Inconclusive);
        let fam = rep.family().unwrap();
        assert_eq!(fam.get(5).unwrap(), Polynomial::zero());
        assert_eq!(fam.get(-12), Err(Error::MissingDiagonal { t: -12 }));
    }

    #[test]
    fn window_guard() {
        let table = OperatorTable::new(Op::D);
        assert_eq!(
            dx_check(&table, 0, 1, 4, 3),
            Err(Error::WindowTooSmall { n_max: 4, slack: 3 })
        );
    }

    #[test]
    fn newton_fit_reproduces_samples() {
        let samples: Vec<R> = (0..10)
            .map(|n| R::from_i64(n * n * n - 2 * n + 7))
            .collect();
        let fit = fit_diagonal(0, samples.clone(), 3).unwrap();
        let FitVerdict::Polynomial(q) = fit.verdict else {
            panic!()
        };
        assert_eq!(q.degree(), Some(3));
        for (n, s) in samples.iter().enumerate() {
            assert_eq!(&q.eval(&R::from_usize(n)), s);
        }
    }
}
