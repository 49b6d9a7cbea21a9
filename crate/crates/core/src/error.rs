use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the domain of a special function or kernel.
    #[error("{func}: argument outside domain ({detail})")]
    Domain { func: &'static str, detail: String },

    /// An intermediate quantity exceeded the representable range.
    #[error("{func}: result overflows f64 ({detail})")]
    Overflow { func: &'static str, detail: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "integration did not converge: estimate {value:e} with error {error_estimate:e} \
         after {subdivisions} subdivisions"
    )]
    NonConvergence {
        value: f64,
        error_estimate: f64,
        subdivisions: usize,
    },

    /// The closed form is ill-conditioned this close to `|Ω| = m`.
    #[error(
        "detuning |m - |omega|| * delta_tau = {detuning:e} is inside the resonance window; \
         use the resonance or quadrature path"
    )]
    NearResonance { detuning: f64 },

    #[error("underflow: {0}")]
    Underflow(String),

    #[error("invalid sweep configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Usage,
    Convergence,
    Domain,
    Io,
}

impl Error {
    pub fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            func,
            detail: detail.into(),
        }
    }

    pub fn overflow(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Overflow {
            func,
            detail: detail.into(),
        }
    }

    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::InvalidParameter(_) | Error::Config(_) => ErrorCategory::Usage,
            Error::NonConvergence { .. } => ErrorCategory::Convergence,
            Error::Domain { .. }
            | Error::Overflow { .. }
            | Error::NearResonance { .. }
            | Error::Underflow(_) => ErrorCategory::Domain,
            Error::Io(_) => ErrorCategory::Io,
        }
    }
}
