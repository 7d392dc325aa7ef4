use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the formula or solver.
    #[error("domain error: {0}")]
    Domain(String),

    /// A length does not exceed the UV cutoff.
    #[error("cutoff violation: {what} = {value} must exceed the cutoff a = {cutoff}")]
    CutoffViolation {
        what: &'static str,
        value: f64,
        cutoff: f64,
    },

    /// Malformed structured input (interval sets, blocks, datasets).
    #[error("validation error: {0}")]
    Validation(String),

    /// Evaluation at (or within the guard radius of) a singular point.
    #[error("singularity: {0}")]
    Singularity(String),

    /// The map derivative vanishes, so the point is not conformal.
    #[error("non-conformal point: map derivative vanishes at {0}")]
    NonConformal(String),

    /// The request would exceed the memory guard of a solver.
    #[error("resource limit: {0}")]
    Resource(String),

    #[error("insufficient data: need at least {needed} points, got {got}")]
    InsufficientData { needed: usize, got: usize },

    /// A numerical result violates an identity that holds for every valid input.
    #[error("internal consistency: {0}")]
    Consistency(String),

    #[error("zero mode: {0}")]
    ZeroMode(String),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}
