//! Exact polynomials and truncated formal power series.

mod poly;
mod pseries;
mod series;
mod text;

pub use poly::Polynomial;
pub use pseries::{exp_xt, PolySeries};
pub use series::{ScalarSeries, Valuation};
