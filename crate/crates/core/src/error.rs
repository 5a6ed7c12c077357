use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("{name} = {value} is outside the domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// A structured parameter failed validation.
    #[error("invalid {field}: {message}")]
    InvalidParameter {
        field: &'static str,
        message: String,
    },

    /// The posterior formula has a zero denominator.
    #[error(
        "degenerate configuration: P(sig) = 0 at theta = {theta}, alpha = {alpha}, power = {power}"
    )]
    Degenerate { theta: f64, alpha: f64, power: f64 },

    #[error("summary needs at least 2 draws, got {0}")]
    TooFewDraws(usize),

    #[error("operation requires a point Type II error")]
    PointTypeIIRequired,
}

impl Error {
    pub(crate) fn invalid(field: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            message: message.into(),
        }
    }

    /// Name of the offending input, when the error is tied to one.
    pub fn field(&self) -> Option<&'static str> {
        match self {
            Error::Domain { name, .. } => Some(name),
            Error::InvalidParameter { field, .. } => Some(field),
            _ => None,
        }
    }
}
