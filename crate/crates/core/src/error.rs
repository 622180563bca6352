use thiserror::Error;

/// Errors raised by group constructors, compositions and solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported matrix dimension {0} (expected 2, 4, 5 or 6)")]
    UnsupportedDimension(usize),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("matrix is singular (|det| = {det:e})")]
    SingularMatrix { det: f64 },

    #[error("rate |v| = {v} is not below the speed bound c = {c}")]
    SuperluminalRate { v: f64, c: f64 },

    #[error("rate bound exceeded: w^2 = {w2} (must be < 1)")]
    RateBoundExceeded { w2: f64 },

    #[error("composition denominator {0:e} is degenerate")]
    DegenerateDenominator(f64),

    #[error("U(1) parameter a = {0} must be zero for this operation")]
    NonzeroU1Param(f64),

    #[error("imaginary rapidity: beta^2 + gamma^2 - vartheta^2 = {0} < 0")]
    ImaginaryOmega(f64),

    #[error("homogeneous block is not symplectic (residual {0:e})")]
    NotSymplectic(f64),

    #[error("conjugate does not lie in the group (reconstruction residual {0:e})")]
    NotInGroup(f64),

    #[error("rank-deficient generator set")]
    RankDeficient,

    #[error("no sign assignment of the template commutes with every generator")]
    NoCommutingCombination,

    #[error("unknown discrete element label {0:?}")]
    UnknownLabel(String),

    #[error("singular Hessian ({which}): |d2H| = {value:e}")]
    SingularHessian { which: &'static str, value: f64 },

    #[error("Legendre solve did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("integration step too large: state became non-finite at t = {0}")]
    StepTooLarge(f64),

    #[error("index {index} out of range for trajectory of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("gradient inconsistent with energy at (p={p}, q={q}, t={t}): deviation {deviation:e}")]
    InconsistentGradient {
        p: f64,
        q: f64,
        t: f64,
        deviation: f64,
    },
}

impl Error {
    /// Variant name, for machine-readable error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::UnsupportedDimension(..) => "UnsupportedDimension",
            Error::NonFinite(..) => "NonFinite",
            Error::SingularMatrix { .. } => "SingularMatrix",
            Error::SuperluminalRate { .. } => "SuperluminalRate",
            Error::RateBoundExceeded { .. } => "RateBoundExceeded",
            Error::DegenerateDenominator(..) => "DegenerateDenominator",
            Error::NonzeroU1Param(..) => "NonzeroU1Param",
            Error::ImaginaryOmega(..) => "ImaginaryOmega",
            Error::NotSymplectic(..) => "NotSymplectic",
            Error::NotInGroup(..) => "NotInGroup",
            Error::RankDeficient => "RankDeficient",
            Error::NoCommutingCombination => "NoCommutingCombination",
            Error::UnknownLabel(..) => "UnknownLabel",
            Error::SingularHessian { .. } => "SingularHessian",
            Error::NoConvergence(..) => "NoConvergence",
            Error::StepTooLarge(..) => "StepTooLarge",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::InvalidArgument(..) => "InvalidArgument",
            Error::InconsistentGradient { .. } => "InconsistentGradient",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
