//! DX-expansions `Q = Σ_k f_k(D) X^k`: normal ordering, convergence,
//! the diagonal test, construction, and closure under composition.

mod closure;
mod construct;
mod convergence;
mod fit;
mod gf;
mod ordering;

pub use closure::{compose_via_diagonals, counterexample_s};
pub use construct::{
    dx_apply, dx_apply_window, dx_construct, dx_transpose, transposed_apply, DxExpansion,
};
pub use convergence::{
    dx_convergence_check, Bound, ConvergenceCertificate, ConvergenceVerdict, Growth, Margin, Tail,
};
pub use fit::{
    dx_check, fit_diagonal, forward_differences, DiagonalFamily, DiagonalFit, DxReport, DxVerdict,
    FitVerdict, Window,
};
pub use gf::gf_consistency_check;
pub use ordering::{
    normal_order_dj_xi, normal_order_xi_dj, reorder_product, MixedForm, NormalForm, NormalTerm,
    Ordering, Reorder,
};
