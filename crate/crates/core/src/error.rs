use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid epsilon pair: need eps2 < 0 < eps1, got eps2={eps2}, eps1={eps1}")]
    InvalidEpsilon { eps2: String, eps1: String },
    #[error("box ({row},{col}) lies outside the diagram")]
    OutOfDiagram { row: usize, col: usize },
    #[error("ch^vee_0 must equal 1, got {0}")]
    BadLeadingMoment(String),
    #[error("no value for mode V_{0}")]
    MissingMode(usize),
    #[error("joint eigenspace for {partition} has dimension {dim} (expected 1)")]
    Degenerate { partition: String, dim: usize },
    #[error("degree {degree} exceeds the limit {limit}")]
    DegreeTooLarge { degree: usize, limit: usize },
    #[error("symbol is not real: in and out modes differ")]
    NonReal,
    #[error("normalization deficit {deficit:.3e} exceeds threshold {threshold:.1e}; use truncation D >= {required}")]
    DeficitTooLarge { deficit: f64, threshold: f64, required: usize },
    #[error("u - v(w) has winding number {0} on the unit circle")]
    Winding(i64),
    #[error("u is too close to the symbol range (min |u - v| = {0:.3e})")]
    NearSpectrum(f64),
    #[error("Fourier modes did not decay below tolerance (last mode {0:.3e})")]
    NoConvergence(f64),
    #[error("evaluation point on the wrong side of the unit circle: {0}")]
    WrongSide(String),
    #[error("coincident points")]
    Coincident,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
