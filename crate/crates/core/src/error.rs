//! Crate-wide error taxonomy.
//!
//! Every failure mode that is part of the public contract gets its own
//! variant with a stable machine-readable code (see [`Error::code`]), so
//! batch front-ends can serialize errors without string matching.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("time scale must contain at least one interval")]
    EmptyTimeScale,
    #[error("invalid interval [{lo}, {hi}]: lower bound exceeds upper bound")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("point {0} does not belong to the time scale")]
    PointNotInScale(f64),
    #[error("degenerate difference quotient at {0}: no scattered gap and no dense side")]
    DegenerateQuotient(f64),

    #[error("triangular parameters not sorted: ({0}, {1}, {2})")]
    NotSorted(f64, f64, f64),
    #[error("level endpoints not nested at level {level}")]
    LevelMonotonicityViolation { level: usize },
    #[error("empty core: lower endpoint exceeds upper endpoint at grade one")]
    EmptyCore,
    #[error("level resolutions differ: {0} vs {1}")]
    ResolutionMismatch(usize, usize),
    #[error("gH-difference does not exist as a fuzzy number (level {level})")]
    GHDifferenceNotFuzzy { level: usize },

    #[error("limit did not converge at {at} after {refinements} refinements")]
    NonConvergent { at: f64, refinements: usize },
    #[error("point {0} excluded from the derivative domain (kappa restriction)")]
    PointNotInKappa(f64),
    #[error("alpha {0} outside [0, 1]")]
    AlphaOutOfRange(f64),

    #[error("adaptive quadrature exceeded depth {depth} on [{lo}, {hi}]")]
    QuadratureDepthExceeded { lo: f64, hi: f64, depth: usize },
    #[error("integrand is not a valid fuzzy number at t = {0}")]
    IntegrandNotFuzzyAt(f64),
    #[error("stacked integral violates fuzzy-number invariants beyond tolerance")]
    ResultNotFuzzy,

    #[error("time scale is not quasi-regular")]
    NotQuasiRegular,
    #[error("time scale is not homogeneous")]
    NotHomogeneous,
    #[error("nabla-derivative of sigma is not piecewise constant over the window: {0}")]
    NablaSigmaNotPiecewiseConstant(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// Stable machine-readable code, part of the serialized error contract.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyTimeScale => "EmptyTimeScale",
            Error::InvalidInterval { .. } => "InvalidInterval",
            Error::PointNotInScale(_) => "PointNotInScale",
            Error::DegenerateQuotient(_) => "DegenerateQuotient",
            Error::NotSorted(..) => "NotSorted",
            Error::LevelMonotonicityViolation { .. } => "LevelMonotonicityViolation",
            Error::EmptyCore => "EmptyCore",
            Error::ResolutionMismatch(..) => "ResolutionMismatch",
            Error::GHDifferenceNotFuzzy { .. } => "GHDifferenceNotFuzzy",
            Error::NonConvergent { .. } => "NonConvergent",
            Error::PointNotInKappa(_) => "PointNotInKappa",
            Error::AlphaOutOfRange(_) => "AlphaOutOfRange",
            Error::QuadratureDepthExceeded { .. } => "QuadratureDepthExceeded",
            Error::IntegrandNotFuzzyAt(_) => "IntegrandNotFuzzyAt",
            Error::ResultNotFuzzy => "ResultNotFuzzy",
            Error::NotQuasiRegular => "NotQuasiRegular",
            Error::NotHomogeneous => "NotHomogeneous",
            Error::NablaSigmaNotPiecewiseConstant(_) => "NablaSigmaNotPiecewiseConstant",
            Error::InvalidConfig(_) => "InvalidConfig",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
