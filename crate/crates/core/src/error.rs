use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Jacobi parameters must satisfy alpha > -1 and beta > -1 (got alpha = {alpha}, beta = {beta})")]
    ParameterDomain { alpha: f64, beta: f64 },

    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("root iteration for index {index} did not converge")]
    RootNonConvergence { index: usize },

    #[error("model degenerates at x = {x}: denominator {denominator} below threshold")]
    SingularModel { x: f64, denominator: f64 },

    #[error("non-finite entry ({row}, {col}) in assembled collocation system")]
    Assembly { row: usize, col: usize },

    #[error("singular collocation system: pivot {pivot:e} at column {col}")]
    SingularSystem { col: usize, pivot: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("QLM step {iteration} failed: {source}")]
    StepFailed {
        iteration: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("QLM step {iteration} produced non-finite coefficient at index {index}")]
    NonFiniteCoefficients { iteration: usize, index: usize },

    #[error("shooting integration broke down at x = {x}")]
    OracleFailure { x: f64 },

    #[error("shooting bracket [{lo}, {hi}] does not change sign of the far-field mismatch")]
    Bracketing { lo: f64, hi: f64 },

    #[error("shooting did not converge in {iterations} iterations (|mismatch| = {mismatch:e})")]
    ShootingNonConvergence { iterations: usize, mismatch: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
