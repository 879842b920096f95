//! Operator expressions, their matrix view, and the classical D-expansion.

mod classical;
mod expr;
mod table;

pub use classical::{d_expand, default_shift_samples, op_equal_upto, shift_invariance_check};
pub(crate) use expr::apply_series_prefix;
pub use expr::{apply_series, Operator};
pub use table::{OperatorTable, RowOracle};
