use num::complex::Complex64;
use thiserror::Error;

/// Error type shared by every module in the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// The evaluation point lies outside the validity strip of a
    /// representation.
    #[error("{id}: z = {z} is outside the validity strip {strip}")]
    OutsideStrip { id: String, z: Complex64, strip: String },

    /// The evaluation point is too close to a pole or excluded point.
    #[error("{what} has a pole at {where_}; got {z}")]
    NearPole { what: String, where_: String, z: Complex64 },

    /// No catalogue entry with this id.
    #[error("unknown representation id {0:?}")]
    UnknownRepresentation(String),

    /// The representation needs a parameter that was not supplied.
    #[error("{id}: missing required parameter {name:?}")]
    MissingParam { id: String, name: &'static str },

    /// A parameter value is unusable for this representation.
    #[error("{id}: invalid parameter {name:?}: {why}")]
    InvalidParam { id: String, name: &'static str, why: String },

    /// The entry is catalogued but disabled by default.
    #[error("{0}: disabled experimental representation (pass the experimental flag to evaluate it)")]
    Disabled(String),

    /// An integrand or kernel returned NaN or infinity.
    #[error("non-finite value encountered at {at}")]
    NonFinite { at: f64 },

    /// The quadrature engine ran out of budget before reaching the tolerance.
    #[error("quadrature did not converge: {0}")]
    NoConvergence(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
