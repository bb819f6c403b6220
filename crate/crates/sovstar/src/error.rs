//! Error type shared across the crate.

use thiserror::Error;

/// Diagnosis attached to a singular Γ (or metric) matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularKind {
    /// ψ ≠ 0 at the base point but the metric g_{kl̄} is degenerate there.
    Case1DegenerateMetric,
    /// Base point lies on the hypersurface and the Levi form is degenerate.
    Case2DegenerateLevi,
    /// Critical point of ψ on the hypersurface; Γ is always singular there.
    CriticalPoint,
    /// Chart was built from a bare potential jet; no ψ-classification available.
    Unclassified,
}

impl std::fmt::Display for SingularKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SingularKind::Case1DegenerateMetric => write!(f, "case 1, degenerate metric"),
            SingularKind::Case2DegenerateLevi => write!(f, "case 2, degenerate Levi form"),
            SingularKind::CriticalPoint => write!(f, "critical point"),
            SingularKind::Unclassified => write!(f, "unclassified"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("base point mismatch")]
    BasePointMismatch,

    #[error("dimension mismatch")]
    DimensionMismatch,

    #[error("jet precision exhausted")]
    PrecisionExhausted,

    #[error("not invertible")]
    NotInvertible,

    #[error("gamma matrix singular ({0})")]
    GammaSingular(SingularKind),

    #[error("base point lies on the hypersurface")]
    OnHypersurface,

    #[error("base point does not lie on the hypersurface")]
    NotOnHypersurface,

    #[error("critical point of the defining function")]
    CriticalPoint,

    #[error("internal consistency failure: {0}")]
    ConsistencyFailure(String),

    #[error("fiber grade violation: {0}")]
    FiberGradeViolation(String),
}

impl Error {
    /// Stable class token used by scenario configs to declare expected failures.
    pub fn class(&self) -> &'static str {
        match self {
            Error::BasePointMismatch => "BasePointMismatch",
            Error::DimensionMismatch => "DimensionMismatch",
            Error::PrecisionExhausted => "PrecisionExhausted",
            Error::NotInvertible => "NotInvertible",
            Error::GammaSingular(_) => "GammaSingular",
            Error::OnHypersurface => "OnHypersurface",
            Error::NotOnHypersurface => "NotOnHypersurface",
            Error::CriticalPoint => "CriticalPoint",
            Error::ConsistencyFailure(_) => "ConsistencyFailure",
            Error::FiberGradeViolation(_) => "FiberGradeViolation",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
