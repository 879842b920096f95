use thiserror::Error;

/// Errors raised by the algebra and expansion engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncated data too short: need order {needed}, have {available}")]
    Truncation { needed: usize, available: usize },

    #[error("series has zero constant term and cannot be inverted")]
    Invert,

    #[error("series reversion needs order exactly 1, found {found}")]
    Reverse { found: String },

    #[error("operator is not degree reducing at degree {degree}")]
    NotDegreeReducing { degree: usize },

    #[error("window too small: n_max = {n_max} must be at least slack + 2 = {}", slack + 2)]
    WindowTooSmall { n_max: usize, slack: usize },

    #[error("operator has no DX-expansion on this window (diagonal t = {t}: {reason})")]
    NotDx { t: i64, reason: String },

    #[error("diagonal t = {t} carries a D^{k} X^{} term with a negative X power", t + *k as i64)]
    NegativePowerViolation { t: i64, k: usize },

    #[error("DX-expansion has no convergence certificate")]
    NoCertificate,

    #[error("diagonal family lacks a vanishing-tail certificate at or below {bound}")]
    MissingVanishingCertificate { bound: i64 },

    #[error("diagonal family has no fitted diagonal t = {t}")]
    MissingDiagonal { t: i64 },

    #[error("series order is {found}, a delta operator needs order 1")]
    NotDelta { found: String },

    #[error("umbral operator has no DX-expansion: P x = {px}, expected 1")]
    NotDxEligible { px: String },

    #[error("polynomial parse error at column {column}: {message}")]
    PolyParse { column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
