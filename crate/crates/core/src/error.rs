use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParams { name: &'static str, reason: String },

    #[error("point lies on the hyperboloid boundary (|z z̄ - 1| = {distance:e})")]
    Boundary { distance: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular point: {0}")]
    Singularity(String),

    #[error("trajectory entered the guard zone of `{quantity}` at t = {t}")]
    SingularityApproach { t: f64, quantity: &'static str },

    #[error("step size underflow at t = {t} (h = {h:e})")]
    StepFailure { t: f64, h: f64 },

    #[error("point is off the level set: {0}")]
    OffSurface(String),

    #[error("{what} = {value} exceeds the cutoff {max}")]
    Range { what: &'static str, value: String, max: String },

    #[error("inadmissible quantum numbers: {0}")]
    QuantumNumber(String),

    #[error("level N = {level} does not map: right-hand side {rhs} is negative")]
    PositivityViolation { level: String, rhs: f64 },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParams { name, reason: reason.into() }
    }
}
