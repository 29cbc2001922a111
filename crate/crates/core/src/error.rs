use thiserror::Error;

use crate::curve::GenericityReport;

/// Errors raised by curvewind operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("arcs belong to different model kernels")]
    MixedKernels,
    #[error("deck elements belong to different groups")]
    MixedGroups,
    #[error("directions are parallel within tolerance")]
    Parallel,
    #[error("consecutive directions are antiparallel (cusp)")]
    CuspTurn,
    #[error("holonomy is the identity")]
    IdentityHolonomy,
    #[error("the group is orientable; reversibility needs a non-trivial orientation character")]
    OrientableGroup,
    #[error("holonomy is parabolic; use a horocycle representative")]
    ParabolicHolonomy,
    #[error("holonomy is not parabolic")]
    NotParabolic,
    #[error("not enough room: {0}")]
    TooCrowded(String),
    #[error("no other strand within reach of the finger")]
    NoNearbyStrand,
    #[error("perturbation exceeds the regularity/genericity margin")]
    MarginExceeded,
    #[error("malformed curve: {0}")]
    MalformedCurve(String),
    #[error("curve is not generic ({} violation(s))", .0.violations.len())]
    NonGeneric(Box<GenericityReport>),
    #[error("curve is null-homotopic")]
    NullHomotopic,
    #[error("curve is not null-homotopic")]
    NotNullHomotopic,
    #[error("holonomy reverses orientation")]
    OrientationReversingHolonomy,
    #[error("invariant does not apply to this case: {0}")]
    WrongCase(String),
    #[error("holonomy class is not reversible")]
    NotReversible,
    #[error("holonomy class is reversible; use the reversible invariant")]
    ReversibleClass,
    #[error("holonomy is not conjugate to the reference {0}")]
    NotConjugate(String),
    #[error("surface is not orientable")]
    NonOrientable,
    #[error("holonomy acts non-trivially on directions")]
    NonTrivialDifferential,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
