use crate::base_field::FieldError;
use crate::hahn::HahnError;

/// Errors raised above the base field.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Hahn(#[from] HahnError),
    #[error("λ^θ + λ does not equal δ")]
    WitnessMismatch,
    #[error("x² + x + δ visibly splits over K (δ = y² + y for y = {0})")]
    ReducibleExtension(String),
    #[error("β must be nonzero")]
    ZeroBeta,
    #[error("the linear conditions cannot be met: a constraint vector lies in the radical of f")]
    Unsolvable,
    #[error("the linear conditions are inconsistent")]
    InconsistentSystem,
    #[error("the operation needs a nonzero element")]
    ZeroElement,
    #[error("the element lies in the radical [K] of f")]
    RadicalInput,
    #[error("vertex model violated: {0}")]
    ModelViolation(String),
    #[error("root closure failed: {0}")]
    ClosureFailure(String),
    #[error("collection left the 20-root set: {0}")]
    ClosureViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
