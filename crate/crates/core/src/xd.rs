//! XD- and XB-expansions: `Q = Σ a_n(X) B^n` for a degree-reducing `B`.
//!
//! For `B = D` the coefficients come from `Q exp(xt) / exp(xt)`; for a
//! general `B` with divided powers `b_n`, from `Q b(x,t) / b(x,t)` where
//! `b(x,t) = Σ b_n(x) t^n`.

use crate::algebra::{exp_xt, PolySeries, Polynomial};
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::Scalar;

/// Which degree-reducing operator sits to the right of the coefficients.
#[derive(Clone, Debug, PartialEq)]
pub enum Basis<K> {
    D,
    Custom(Operator<K>),
}

impl<K: Scalar> Basis<K> {
    pub fn operator(&self) -> Operator<K> {
        match self {
            Basis::D => Operator::D,
            Basis::Custom(b) => b.clone(),
        }
    }
}

/// `Σ_{n <= N} a_n(X) B^n`, correct on every polynomial of degree `<= N`.
#[derive(Clone, Debug, PartialEq)]
pub struct XdExpansion<K> {
    pub basis: Basis<K>,
    pub terms: Vec<Polynomial<K>>,
}

impl<K: Scalar> XdExpansion<K> {
    pub fn trunc_order(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    /// `Σ_k a_k(X) B^k p`. Only finitely many terms act nonzero, since `B`
    /// lowers degree; terms beyond the stored ones are treated as zero.
    pub fn apply(&self, p: &Polynomial<K>) -> Result<Polynomial<K>> {
        let reducer = self.basis.operator();
        let mut acc = Polynomial::zero();
        let mut image = p.clone();
        for a in &self.terms {
            if image.is_zero() {
                break;
            }
            acc = &acc + &(a * &image);
            image = reducer.apply(&image)?;
        }
        Ok(acc)
    }

    /// Like [`apply`](Self::apply), but refuses inputs above the stored
    /// truncation order.
    pub fn apply_strict(&self, p: &Polynomial<K>) -> Result<Polynomial<K>> {
        if let Some(d) = p.degree() {
            if self.terms.is_empty() || d > self.trunc_order() {
                return Err(Error::Truncation {
                    needed: d,
                    available: self.trunc_order(),
                });
            }
        }
        self.apply(p)
    }

    /// Renders `a_0(x) + a_1(x)·B + a_2(x)·B^2 + ...`, skipping zero terms.
    pub fn render(&self, basis_name: &str) -> String {
        let mut out = String::new();
        for (k, a) in self.terms.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            let single = a.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
            let negative = single && a.leading().is_some_and(|c| c.is_negative());
            out.push_str(match (out.is_empty(), negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            let coeff = if negative {
                (-a.clone()).to_string()
            } else if single {
                a.to_string()
            } else {
                format!("({a})")
            };
            out.push_str(&match k {
                0 => coeff,
                1 => format!("{coeff}·{basis_name}"),
                _ => format!("{coeff}·{basis_name}^{k}"),
            });
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }
}

/// Divided powers `b_0..b_N` of a degree-reducing `B`: `B b_n = b_{n-1}`,
/// `b_n(0) = δ_{n0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DividedPowers<K> {
    pub reducer: Operator<K>,
    pub polys: Vec<Polynomial<K>>,
    pub genfun: PolySeries<K>,
}

impl<K: Scalar> DividedPowers<K> {
    pub fn trunc_order(&self) -> usize {
        self.polys.len() - 1
    }

    /// Coordinates `c` with `p = Σ c_n b_n`.
    pub fn to_basis(&self, p: &Polynomial<K>) -> Result<Vec<K>> {
        let Some(d) = p.degree() else {
            return Ok(Vec::new());
        };
        if d > self.trunc_order() {
            return Err(Error::Truncation {
                needed: d,
                available: self.trunc_order(),
            });
        }
        let mut rest = p.clone();
        let mut out = vec![K::zero(); d + 1];
        for n in (0..=d).rev() {
            let b = &self.polys[n];
            let c = rest.coeff(n) / b.coeff(n);
            if !c.is_zero() {
                rest = &rest - &b.scale(&c);
            }
            out[n] = c;
        }
        Ok(out)
    }

    /// `Σ c_n b_n`.
    pub fn to_monomial(&self, coords: &[K]) -> Result<Polynomial<K>> {
        if coords.len() > self.polys.len() {
            return Err(Error::Truncation {
                needed: coords.len() - 1,
                available: self.trunc_order(),
            });
        }
        Ok(coords
            .iter()
            .zip(&self.polys)
            .fold(Polynomial::zero(), |acc, (c, b)| &acc + &b.scale(c)))
    }
}

/// `B` kills constants and lowers the degree of `x^1..x^n_max` by exactly one.
pub fn degree_reducing_check<K: Scalar>(b: &Operator<K>, n_max: usize) -> Result<bool> {
    Ok(first_degree_failure(b, n_max)?.is_none())
}

fn first_degree_failure<K: Scalar>(b: &Operator<K>, n_max: usize) -> Result<Option<usize>> {
    if !b.apply(&Polynomial::one())?.is_zero() {
        return Ok(Some(0));
    }
    for n in 1..=n_max {
        if b.apply(&Polynomial::monomial(K::one(), n))?.degree() != Some(n - 1) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Solves `B b_n = b_{n-1}` with `b_n(0) = 0` for `n >= 1` by triangular
/// back-substitution against the images `B x^j`.
pub fn divided_power_basis<K: Scalar>(b: &Operator<K>, n: usize) -> Result<DividedPowers<K>> {
    if let Some(degree) = first_degree_failure(b, n + 1)? {
        return Err(Error::NotDegreeReducing { degree });
    }
    let images: Vec<Polynomial<K>> = (0..=n)
        .map(|j| b.apply(&Polynomial::monomial(K::one(), j)))
        .collect::<Result<_>>()?;
    let mut polys = vec![Polynomial::one()];
    for m in 1..=n {
        let mut rest: Polynomial<K> = polys[m - 1].clone();
        let mut coeffs = vec![K::zero(); m + 1];
        for j in (1..=m).rev() {
            let img = &images[j];
            let c = rest.coeff(j - 1) / img.coeff(j - 1);
            if !c.is_zero() {
                rest = &rest - &img.scale(&c);
            }
            coeffs[j] = c;
        }
        debug_assert!(rest.is_zero());
        polys.push(Polynomial::new(coeffs));
    }
    let genfun = PolySeries::new(polys.clone());
    Ok(DividedPowers {
        reducer: b.clone(),
        polys,
        genfun,
    })
}

/// XD-expansion through order `n`:
/// `a_m(x) = Σ_{k<=m} (Q x^k)/k! · (-x)^{m-k}/(m-k)!`.
pub fn xd_expand<K: Scalar>(q: &Operator<K>, n: usize) -> Result<XdExpansion<K>> {
    let scaled_rows: Vec<Polynomial<K>> = (0..=n)
        .map(|k| {
            let row = q.apply(&Polynomial::monomial(K::one(), k))?;
            Ok(row.scale(&(K::one() / K::factorial(k))))
        })
        .collect::<Result<_>>()?;
    let neg_exp: Vec<Polynomial<K>> = (0..=n)
        .map(|j| {
            let sign = if j % 2 == 0 { K::one() } else { -K::one() };
            Polynomial::monomial(sign / K::factorial(j), j)
        })
        .collect();
    let terms = (0..=n)
        .map(|m| {
            (0..=m).fold(Polynomial::zero(), |acc, k| {
                &acc + &(&scaled_rows[k] * &neg_exp[m - k])
            })
        })
        .collect();
    Ok(XdExpansion {
        basis: Basis::D,
        terms,
    })
}

/// XB-expansion through order `n` from `Q b(x,t) · b(x,t)^{-1}`.
pub fn xb_expand<K: Scalar>(
    q: &Operator<K>,
    basis: &DividedPowers<K>,
    n: usize,
) -> Result<XdExpansion<K>> {
    if n > basis.trunc_order() {
        return Err(Error::Truncation {
            needed: n,
            available: basis.trunc_order(),
        });
    }
    let genfun = basis.genfun.truncate(n);
    let image = PolySeries::new(
        genfun
            .coeffs()
            .iter()
            .map(|b| q.apply(b))
            .collect::<Result<_>>()?,
    );
    let terms = image.mul(&genfun.invert()?).into_coeffs();
    Ok(XdExpansion {
        basis: Basis::Custom(basis.reducer.clone()),
        terms,
    })
}

/// The XD-expansion read off directly as `Q exp(xt) · exp(-xt)`; kept as an
/// independent route for cross-checks.
pub fn xd_expand_by_division<K: Scalar>(q: &Operator<K>, n: usize) -> Result<XdExpansion<K>> {
    let e = exp_xt::<K>(n);
    let image = PolySeries::new(
        e.coeffs()
            .iter()
            .map(|c| q.apply(c))
            .collect::<Result<_>>()?,
    );
    Ok(XdExpansion {
        basis: Basis::D,
        terms: image.mul(&e.invert()?).into_coeffs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type R = BigRational;
    type Op = Operator<R>;
    type P = Polynomial<R>;

    fn p(text: &str) -> P {
        text.parse().unwrap()
    }

    #[test]
    fn divided_powers_of_d_delta_and_2d() {
        let d = divided_power_basis(&Op::D, 3).unwrap();
        assert_eq!(d.polys, vec![p("1"), p("x"), p("x^2/2"), p("x^3/6")]);
        let delta = divided_power_basis(&Op::Difference, 3).unwrap();
        assert_eq!(
            delta.polys,
            vec![p("1"), p("x"), p("x(x-1)/2"), p("x(x-1)(x-2)/6")]
        );
        let two_d = divided_power_basis(&Op::scaled(R::from_i64(2), Op::D), 2).unwrap();
        assert_eq!(two_d.polys, vec![p("1"), p("x/2"), p("x^2/8")]);
    }

    #[test]
    fn degree_reducing() {
        assert!(degree_reducing_check(&Op::D, 10).unwrap());
        assert!(!degree_reducing_check(&Op::X, 5).unwrap());
        assert!(!degree_reducing_check(&(Op::Integral * Op::D * Op::D), 6).unwrap());
        assert_eq!(
            divided_power_basis(&Op::X, 2),
            Err(Error::NotDegreeReducing { degree: 0 })
        );
        assert_eq!(
            divided_power_basis(&Op::D.pow(2), 2),
            Err(Error::NotDegreeReducing { degree: 1 })
        );
    }

    #[test]
    fn integral_xd_terms() {
        let e = xd_expand(&Op::Integral, 4).unwrap();
        for (n, a) in e.terms.iter().enumerate() {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let expect = P::monomial(R::from_i64(sign) / R::factorial(n + 1), n + 1);
            assert_eq!(a, &expect);
        }
        assert_eq!(e.apply(&p("x^3")).unwrap(), p("x^4/4"));
        assert_eq!(e, xd_expand_by_division(&Op::Integral, 4).unwrap());
    }

    #[test]
    fn multiplication_and_identity() {
        let e = xd_expand(&Op::PolyInX(p("x^2")), 2).unwrap();
        assert_eq!(e.terms, vec![p("x^2"), P::zero(), P::zero()]);
        let id = xd_expand(&Op::Identity, 6).unwrap();
        assert_eq!(id.apply(&p("x^5")).unwrap(), p("x^5"));
        let empty = XdExpansion::<R> {
            basis: Basis::D,
            terms: vec![],
        };
        assert_eq!(empty.apply(&p("x^2 + 1")).unwrap(), P::zero());
        assert!(empty.apply_strict(&p("x")).is_err());
        assert!(id.apply_strict(&p("x^7")).is_err());
    }

    #[test]
    fn endomorphism_xd_matches_taylor_form() {
        let q = p("x^2 - 3x + 1/2");
        let e = xd_expand(&Op::Substitute(q.clone()), 5).unwrap();
        let diff = &q - &P::x();
        for (n, a) in e.terms.iter().enumerate() {
            assert_eq!(a, &diff.pow(n).scale(&(R::from_i64(1) / R::factorial(n))));
        }
    }

    #[test]
    fn integral_over_difference_basis() {
        let basis = divided_power_basis(&Op::Difference, 3).unwrap();
        let e = xb_expand(&Op::Integral, &basis, 3).unwrap();
        assert_eq!(
            e.terms,
            vec![
                p("x"),
                p("-x^2/2"),
                p("x^2/4 + x^3/6"),
                p("-(x^2/6 + x^3/6 + x^4/24)")
            ]
        );
        // reconstruction on x^3: x^4/4 = x^4 - 3/2 x^4 + x^4 + 6 c x^4 forces c = -1/24
        assert_eq!(e.apply(&p("x^3")).unwrap(), p("x^4/4"));
        assert_eq!(
            e.render("Δ"),
            "x - 1/2*x^2·Δ + (1/6*x^3 + 1/4*x^2)·Δ^2 + (-1/24*x^4 - 1/6*x^3 - 1/6*x^2)·Δ^3"
        );
    }

    #[test]
    fn xb_of_the_basis_operator_and_identity() {
        let basis = divided_power_basis(&Op::Difference, 2).unwrap();
        let b = xb_expand(&Op::Difference, &basis, 2).unwrap();
        assert_eq!(b.terms, vec![P::zero(), P::one(), P::zero()]);
        let id = xb_expand(&Op::Identity, &basis, 2).unwrap();
        assert_eq!(id.terms, vec![P::one(), P::zero(), P::zero()]);
        assert!(xb_expand(&Op::Identity, &basis, 3).is_err());
    }

    #[test]
    fn basis_change() {
        let delta = divided_power_basis(&Op::Difference, 3).unwrap();
        let c = delta.to_basis(&p("x^2")).unwrap();
        assert_eq!(c, vec![R::from_i64(0), R::from_i64(1), R::from_i64(2)]);
        assert_eq!(delta.to_monomial(&c).unwrap(), p("x^2"));
        let b3 = delta.polys[3].clone();
        let unit: Vec<R> = [0, 0, 0, 1].iter().map(|&n| R::from_i64(n)).collect();
        assert_eq!(delta.to_basis(&b3).unwrap(), unit);
        let d = divided_power_basis(&Op::D, 2).unwrap();
        assert_eq!(
            d.to_monomial(&[R::from_i64(1), R::from_i64(1)]).unwrap(),
            p("1 + x")
        );
        assert!(d.to_basis(&p("x^3")).is_err());
    }
}
