//! DX-expansions `Q = Σ_k f_k(D) X^k` and their construction from diagonals.

use super::convergence::{dx_convergence_check, ConvergenceCertificate, Growth, Tail};
use super::fit::{dx_check, FitVerdict};
use crate::algebra::{Polynomial, ScalarSeries};
use crate::error::{Error, Result};
use crate::operator::{apply_series_prefix, OperatorTable};
use crate::scalar::Scalar;

/// `Σ_{k <= K} f_k(D) X^k`.
///
/// `valid_degree` is the largest input degree on which the stored terms
/// determine the operator: every term past `K` vanishes there, and each
/// `f_k` is known through `t^{k + valid_degree}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DxExpansion<K> {
    pub terms: Vec<ScalarSeries<K>>,
    pub valid_degree: usize,
    pub certificate: Option<ConvergenceCertificate>,
}

impl<K: Scalar> DxExpansion<K> {
    /// Runs the convergence check on `terms` and derives the degree window.
    ///
    /// A failed check, or a certificate too weak to cover degree 0, leaves
    /// the expansion without a certificate.
    pub fn new(terms: Vec<ScalarSeries<K>>, tail: Tail, growth: Growth) -> Result<Self> {
        let mut trunc_bound: Option<usize> = None;
        for (k, f) in terms.iter().enumerate() {
            let room = f.trunc_order().checked_sub(k).ok_or(Error::Truncation {
                needed: k,
                available: f.trunc_order(),
            })?;
            trunc_bound = Some(trunc_bound.map_or(room, |b| b.min(room)));
        }
        let orders: Vec<_> = terms
            .iter()
            .enumerate()
            .map(|(k, f)| (k, f.order()))
            .collect();
        let mut certificate = dx_convergence_check(&orders, tail, growth)
            .certificate()
            .cloned();
        let mut valid_degree = trunc_bound.unwrap_or(usize::MAX);
        if let Some(bound) = certificate.as_ref().and_then(|c| c.degree_bound()) {
            match usize::try_from(bound) {
                Ok(b) => valid_degree = valid_degree.min(b),
                Err(_) => certificate = None,
            }
        }
        Ok(Self {
            terms,
            valid_degree,
            certificate,
        })
    }

    /// The empty sum, i.e. the zero operator.
    pub fn zero() -> Self {
        Self::new(Vec::new(), Tail::Zero, Growth::Strict).expect("empty sum")
    }

    /// Index `K` of the last stored term.
    pub fn trunc_k(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    /// Common truncation order of the coefficient series.
    pub fn series_order(&self) -> Option<usize> {
        self.terms.iter().map(ScalarSeries::trunc_order).min()
    }

    pub fn cap_valid_degree(mut self, cap: usize) -> Self {
        self.valid_degree = self.valid_degree.min(cap);
        self
    }

    /// Margins `ord(f_k) - k` as recorded, or `None` for the zero series.
    pub fn margins(&self) -> Vec<Option<i64>> {
        self.terms
            .iter()
            .enumerate()
            .map(|(k, f)| match f.order() {
                crate::algebra::Valuation::Finite(o) => Some(o as i64 - k as i64),
                crate::algebra::Valuation::Infinite => None,
            })
            .collect()
    }
}

/// `Σ_k f_k(D) X^k p`, guarded by the certificate and degree window.
pub fn dx_apply<K: Scalar>(e: &DxExpansion<K>, p: &Polynomial<K>) -> Result<Polynomial<K>> {
    if e.certificate.is_none() {
        return Err(Error::NoCertificate);
    }
    if let Some(d) = p.degree() {
        if d > e.valid_degree {
            return Err(Error::Truncation {
                needed: d,
                available: e.valid_degree,
            });
        }
    }
    Ok(dx_apply_window(e, p))
}

/// The stored partial sum applied to `p`, without any guard.
pub fn dx_apply_window<K: Scalar>(e: &DxExpansion<K>, p: &Polynomial<K>) -> Polynomial<K> {
    e.terms
        .iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (k, f)| {
            &acc + &apply_series_prefix(f, &p.mul_x_pow(k))
        })
}

/// `Σ_j D^j a_j(X)` with `a_j(x) = Σ_k [t^j] f_k · x^k`, for
/// `j <= valid_degree + K`.
///
/// Coefficients of `f_k` past its truncation are entered as zero; they only
/// meet `D^j` with `j > deg(X^k p)` on the valid degrees.
pub fn dx_transpose<K: Scalar>(e: &DxExpansion<K>) -> Result<Vec<Polynomial<K>>> {
    if e.certificate.is_none() {
        return Err(Error::NoCertificate);
    }
    let top = e.valid_degree.saturating_add(e.trunc_k()).min(
        e.terms
            .iter()
            .map(ScalarSeries::trunc_order)
            .max()
            .unwrap_or(0),
    );
    Ok((0..=top)
        .map(|j| {
            Polynomial::new(
                e.terms
                    .iter()
                    .map(|f| f.get(j).cloned().unwrap_or_else(K::zero))
                    .collect(),
            )
        })
        .collect())
}

/// `Σ_j D^j (a_j p)`.
pub fn transposed_apply<K: Scalar>(a: &[Polynomial<K>], p: &Polynomial<K>) -> Polynomial<K> {
    a.iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (j, aj)| {
            &acc + &(aj * p).nth_derivative(j)
        })
}

/// Builds `Σ_t Σ_k a_{t,k} D^k X^{t+k}` from the fitted diagonals, writing
/// each `q_t(n) = Σ_k a_{t,k} (n+t+k)_k`.
///
/// Diagonals above `t_max` are taken to vanish. Inconclusive diagonals at
/// the bottom of the window are dropped, which shrinks the degree window to
/// `-t` for the lowest conclusive `t`.
pub fn dx_construct<K: Scalar>(
    table: &OperatorTable<K>,
    t_min: i64,
    t_max: i64,
    n_max: usize,
    slack: usize,
) -> Result<DxExpansion<K>> {
    let report = dx_check(table, t_min, t_max, n_max, slack)?;
    let mut t_lo = t_min;
    let mut fitted = Vec::new();
    for fit in &report.fits {
        match &fit.verdict {
            FitVerdict::NotPolynomial { order, .. } => {
                return Err(Error::NotDx {
                    t: fit.t,
                    reason: format!("difference of order {order} does not vanish"),
                })
            }
            FitVerdict::Inconclusive => {
                if !fitted.is_empty() {
                    return Err(Error::NotDx {
                        t: fit.t,
                        reason: "inconclusive diagonal above a fitted one".into(),
                    });
                }
                t_lo = fit.t + 1;
            }
            FitVerdict::Zero => fitted.push((fit.t, Polynomial::zero())),
            FitVerdict::Polynomial(q) => fitted.push((fit.t, q.clone())),
        }
    }
    if t_lo > 0 {
        return Err(Error::NotDx {
            t: t_lo,
            reason: "window does not reach the main diagonal".into(),
        });
    }
    let valid_degree = (n_max - slack).min((-t_lo) as usize);

    let mut coeffs: Vec<Vec<K>> = Vec::new();
    for (t, q) in fitted {
        for (k, a) in diagonal_coordinates(t, &q).into_iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let j = usize::try_from(t + k as i64)
                .map_err(|_| Error::NegativePowerViolation { t, k })?;
            if coeffs.len() <= j {
                coeffs.resize(j + 1, Vec::new());
            }
            let slot = &mut coeffs[j];
            if slot.len() <= k {
                slot.resize(k + 1, K::zero());
            }
            slot[k] = slot[k].clone() + a;
        }
    }
    let terms = coeffs
        .into_iter()
        .enumerate()
        .map(|(j, mut c)| {
            c.resize(j + valid_degree + 1, K::zero());
            ScalarSeries::new(c)
        })
        .collect();
    Ok(DxExpansion::new(terms, Tail::Zero, Growth::Strict)?.cap_valid_degree(valid_degree))
}

/// Coordinates of `q(n)` in the monic basis `p_k(n) = (n+t+k)_k`.
fn diagonal_coordinates<K: Scalar>(t: i64, q: &Polynomial<K>) -> Vec<K> {
    let Some(deg) = q.degree() else {
        return Vec::new();
    };
    let basis = |k: usize| Polynomial::falling_factorial(k).shift(&K::from_i64(t + k as i64));
    let mut rest = q.clone();
    let mut out = vec![K::zero(); deg + 1];
    for k in (0..=deg).rev() {
        let a = rest.coeff(k);
        if !a.is_zero() {
            rest = &rest - &basis(k).scale(&a);
        }
        out[k] = a;
    }
    debug_assert!(rest.is_zero());
    out
}
