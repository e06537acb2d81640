use thiserror::Error;

/// Every failure the library can report.
///
/// Hypothesis violations carry a human-readable statement of the violated
/// condition so front ends can print it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("transition matrix is malformed: {0}")]
    BadMatrix(String),
    #[error("every state is removed by trimming; the subshift is empty")]
    AllStatesDead,
    #[error("power iteration did not converge after {iterations} iterations (bracket gap {gap:e})")]
    NoConvergence { iterations: usize, gap: f64 },
    #[error("lookup at index {index} lies outside the point window [{lo}, {hi}]")]
    HorizonExceeded { index: i64, lo: i64, hi: i64 },
    #[error("points belong to different shift spaces")]
    DifferentSpaces,
    #[error("{0} distance entries are horizon-limited bounds, not values")]
    SaturatedDistances(usize),
    #[error("quasi-metric inequality with K = 2 fails on {0} triples")]
    QuasiMetricViolated(usize),
    #[error("Frink sandwich rho <= 4 D fails for pair ({0}, {1})")]
    SandwichViolated(usize, usize),
    #[error("gamma = {gamma} must satisfy 0 < gamma < min(a, b) - 1 = {limit}")]
    GammaTooLarge { gamma: f64, limit: f64 },
    #[error("sample does not contain the shift sigma^{0} of a requested point")]
    SampleNotOrbitClosed(i64),
    #[error("radius {0} is outside the open interval (0, 1)")]
    RadiusOutOfRange(f64),
    #[error("radii out of order: need 0 < r = {r} <= r1 = {r1} < 1")]
    RadiiOutOfOrder { r: f64, r1: f64 },
    #[error("no integer h with positive m2, n2 for r = {0}; take r smaller")]
    NoIntegerSolution(f64),
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("stochastic matrix is reducible; stationary vector is not unique")]
    Reducible,
    #[error("word is not admissible or has zero mass: {0}")]
    InadmissibleWord(String),
    #[error("cylinder window of length {0} exceeds the enumeration budget")]
    WindowTooLarge(usize),
    #[error("alpha = {alpha} must satisfy 0 <= alpha < min(ln a, ln b) = {limit}")]
    AlphaTooLarge { alpha: f64, limit: f64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("incompatible inputs: {0}")]
    IncompatibleInputs(String),
    #[error("invalid measure: {0}")]
    BadMeasure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
