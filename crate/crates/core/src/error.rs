use thiserror::Error;

use crate::geometry::Point2;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("field value is not finite at ({}, {})", .0.x, .0.y)]
    NonFiniteValue(Point2),

    #[error("density is non-positive or not finite at ({}, {})", .0.x, .0.y)]
    SingularDensity(Point2),

    #[error("adaptive quadrature did not converge (max depth {0} exceeded)")]
    NoConvergence(usize),

    #[error("curve has zero length")]
    DegenerateCurve,

    #[error("gradient vanishes at ({}, {})", .0.x, .0.y)]
    VanishingGradient(Point2),

    #[error("curve endpoints differ from the minimizer endpoints by {0:e}")]
    EndpointMismatch(f64),

    #[error("minimizer drifts off its level curve: |g - g(start)| = {residual:e} > {tolerance:e}")]
    NotOnLevelCurve { residual: f64, tolerance: f64 },

    #[error("no competitor fits in the domain after {0} attempts")]
    CannotFitInDomain(usize),

    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(f64),

    #[error("domain is not inside the open quadrant x > 0, y > 0")]
    DomainOutsideQuadrant,

    #[error("validity condition 1 - c^2 v(y)^2 > 0 fails at y = {0}")]
    ValidityViolated(f64),

    #[error("Cauchy-Riemann residual {residual:e} exceeds {threshold:e} at ({}, {})", .at.x, .at.y)]
    CauchyRiemannViolated {
        at: Point2,
        residual: f64,
        threshold: f64,
    },

    #[error("unknown catalog entry `{name}`; valid names: {}", .valid.join(", "))]
    UnknownEntry { name: String, valid: Vec<String> },

    #[error("level-curve trace hit the step limit ({0}) before its stop condition")]
    MaxStepsExceeded(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable variant name, used on the CLI's stderr.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonFiniteValue(_) => "NonFiniteValue",
            Error::SingularDensity(_) => "SingularDensity",
            Error::NoConvergence(_) => "NoConvergence",
            Error::DegenerateCurve => "DegenerateCurve",
            Error::VanishingGradient(_) => "VanishingGradient",
            Error::EndpointMismatch(_) => "EndpointMismatch",
            Error::NotOnLevelCurve { .. } => "NotOnLevelCurve",
            Error::CannotFitInDomain(_) => "CannotFitInDomain",
            Error::NonPositiveArgument(_) => "NonPositiveArgument",
            Error::DomainOutsideQuadrant => "DomainOutsideQuadrant",
            Error::ValidityViolated(_) => "ValidityViolated",
            Error::CauchyRiemannViolated { .. } => "CauchyRiemannViolated",
            Error::UnknownEntry { .. } => "UnknownEntry",
            Error::MaxStepsExceeded(_) => "MaxStepsExceeded",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
