use thiserror::Error;

use crate::bounds::Violation;

/// Errors surfaced by library operations.
///
/// Structural *defects* of a complex or behavior are not errors; they are
/// reported as data by the respective `validate` functions. Errors are
/// reserved for misuse of an operation (out-of-range indices, size
/// mismatches, broken preconditions) and for unparseable input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for complex with {n_vertices} vertices")]
    VertexOutOfRange { vertex: usize, n_vertices: usize },

    #[error("assignment has {found} values but the complex has {expected} vertices")]
    AssignmentSizeMismatch { expected: usize, found: usize },

    #[error("probability {value} at index {index} is outside [0,1]")]
    ProbabilityOutOfRange { index: usize, value: String },

    #[error("assignment violates class E on facet {facet:?} with total {total}")]
    AssignmentViolatesE { facet: Vec<usize>, total: String },

    #[error("cycle length must be an odd integer >= 3, got {0}")]
    InvalidCycleLength(u64),

    #[error("number of copies must be >= 1")]
    InvalidCopies,

    #[error("root base must be nonnegative, got {0}")]
    NegativeRootBase(String),

    #[error("root degree must be >= 1")]
    InvalidRootDegree,

    #[error("complex carries no vertex labels, cannot resolve events")]
    MissingLabels,

    #[error("label {label:?} does not resolve to an event: {reason}")]
    UnresolvedLabel { label: String, reason: String },

    #[error("malformed event label {label:?}: {reason}")]
    MalformedLabel { label: String, reason: String },

    #[error("invalid box scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid behavior: {0}")]
    InvalidBehavior(String),

    #[error("cannot parse rational from {input:?}")]
    MalformedRational { input: String },

    #[error("invalid {field}: {reason}")]
    InvalidField { field: String, reason: String },
}

impl Error {
    pub(crate) fn violates_e(v: &Violation) -> Self {
        Error::AssignmentViolatesE {
            facet: v.clique.clone(),
            total: v.total.to_string(),
        }
    }
}
