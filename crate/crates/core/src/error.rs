use thiserror::Error;

/// Errors raised by the basis, solver and problem modules.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid interval: end {b} must exceed start {a}")]
    InvalidInterval { a: f64, b: f64 },

    #[error("Gauss-Legendre Newton iteration did not converge for q = {q}")]
    QuadratureNotConverged { q: usize },

    #[error("quadrature must have at least one point")]
    EmptyQuadrature,

    #[error("projection onto degree {target_deg} needs at least {} quadrature points, got {q}", target_deg + 1)]
    ProjectionUnderresolved { q: usize, target_deg: usize },

    #[error("expected {expected} samples, got {got}")]
    SampleCount { expected: usize, got: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("t = {t} lies outside the interval [{a}, {b}]")]
    OutOfInterval { t: f64, a: f64, b: f64 },

    #[error("invalid time partition: {0}")]
    InvalidPartition(String),

    #[error("invalid solver options: {0}")]
    InvalidOptions(String),

    #[error(
        "Picard iteration did not converge in {iterations} iterations (last residual {residual:e})"
    )]
    PicardDiverged { iterations: usize, residual: f64 },

    #[error("contraction condition violated: k * L = {kl} >= sqrt(2)")]
    ContractionViolated { kl: f64 },

    #[error("singular linear system in direct step solve")]
    SingularSystem,

    #[error("step {index} on ({a}, {b}) failed: {source}")]
    Step {
        index: usize,
        a: f64,
        b: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("operator is not skew-symmetric at t = {t} (|A + A^T| = {defect:e})")]
    SkewCheckFailed { t: f64, defect: f64 },

    #[error("EOC input invalid: {0}")]
    InvalidEoc(String),

    #[error("unknown problem `{0}`")]
    UnknownProblem(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
