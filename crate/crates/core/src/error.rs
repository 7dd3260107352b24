use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{op} needs degree at least {min}, got {degree}")]
    DegreeUnderflow { op: &'static str, degree: u32, min: u32 },

    #[error("term {monomial} has degree {found}, expected {expected}")]
    NotHomogeneous { monomial: String, expected: u32, found: u32 },

    #[error("cannot parse polynomial: {0}")]
    PolyParse(String),

    #[error("the partial derivatives are linearly dependent (cone or non-reduced input)")]
    PartialsDependent,

    #[error("Hilbert function of the Jacobian algebra did not stabilize by degree {cap} (non-reduced input?)")]
    StabilizationFailure { cap: u32 },

    #[error("mdr = {d1} exceeds (m-1)/2 for m = {m}; du Plessis-Wall criterion not applicable")]
    MdrOutOfRange { m: u32, d1: u32 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("components {0} and {1} share a common factor")]
    SharedComponent(usize, usize),

    #[error("no generic projection found after {attempts} attempts")]
    ProjectionDegenerate { attempts: u32 },

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("unsupported singularity at {location}: {pattern}")]
    UnsupportedSingularity { location: String, pattern: String },

    #[error("combinatorial count violated: expected {expected} intersections, census gives {found}")]
    CountMismatch { expected: u64, found: u64 },

    #[error("cubic component {0} is not smooth")]
    NotSmooth(usize),

    #[error("point is singular on the curve")]
    SingularPoint,

    #[error("invalid component: {0}")]
    InvalidComponent(String),

    #[error("unknown example {0:?}")]
    UnknownExample(String),
}
