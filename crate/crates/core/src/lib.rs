//! Exact operator calculus on univariate polynomials.
//!
//! Linear operators on `K[x]` are written as expression trees and expanded
//! as `Σ a_n(X) D^n` (XD form), `Σ a_n(X) B^n` for a degree-reducing `B`,
//! or `Σ f_n(D) X^n` (DX form) where that exists. Delta operators, their
//! polynomial sequences, umbral operators and umbral shifts live in
//! [`umbral`].
//!
//! Everything is generic over a [`Scalar`] field; the aliases below fix it
//! to arbitrary-precision rationals.
//!
//! ```
//! use opcalc_core::{xd_expand, OpExpr, Poly};
//!
//! let e = xd_expand(&OpExpr::Integral, 3).unwrap();
//! assert_eq!(e.terms[1], "-x^2/2".parse::<Poly>().unwrap());
//! ```

pub mod algebra;
pub mod dx;
pub mod error;
pub mod operator;
pub mod scalar;
pub mod umbral;
pub mod xd;

pub use algebra::{exp_xt, PolySeries, Polynomial, ScalarSeries, Valuation};
pub use dx::{
    compose_via_diagonals, counterexample_s, dx_apply, dx_apply_window, dx_check, dx_construct,
    dx_convergence_check, dx_transpose, gf_consistency_check, normal_order_dj_xi,
    normal_order_xi_dj, reorder_product,
};
pub use error::{Error, Result};
pub use operator::{
    apply_series, d_expand, default_shift_samples, op_equal_upto, shift_invariance_check, Operator,
    OperatorTable, RowOracle,
};
pub use scalar::Scalar;
pub use umbral::{
    conjugate_sequence, delta_from_series, delta_inverse, endomorphism_xd, gj_expansion,
    pincherle_derivative, rodrigues_xd, sequences, umbral_op_apply, umbral_op_dx, umbral_op_table,
    umbral_op_xd, umbral_shift_apply, umbral_shift_dx,
};
pub use xd::{
    degree_reducing_check, divided_power_basis, xb_expand, xd_expand, xd_expand_by_division, Basis,
};

/// Exact rational scalar.
pub type Rat = num_rational::BigRational;
pub type Poly = Polynomial<Rat>;
pub type SSeries = ScalarSeries<Rat>;
pub type PSeries = PolySeries<Rat>;
pub type OpExpr = Operator<Rat>;
pub type OpTable = OperatorTable<Rat>;
pub type XDExpansion = xd::XdExpansion<Rat>;
pub type DividedPowerBasis = xd::DividedPowers<Rat>;
pub type DXExpansion = dx::DxExpansion<Rat>;
pub type DiagonalFit = dx::DiagonalFit<Rat>;
pub type DeltaOp = umbral::Delta<Rat>;
pub type PolySequence = umbral::PolySequence<Rat>;
