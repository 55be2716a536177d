use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, LcError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LcError {
    #[error("reciprocal of zero")]
    ReciprocalOfZero,
    #[error("infinite radius / degenerate z-circumference")]
    DegenerateCircle,
    #[error("root coincides with fixed point")]
    RootAtFixedPoint,
    #[error("pole: line point too close to the origin")]
    Pole,
    #[error("projection pole: intersection at the origin")]
    ProjectionPole,
    #[error("degenerate projections")]
    DegenerateProjections,
    #[error("negative t* = {0} violates the constraint t* >= 0")]
    NegativeT(f64),
    #[error("degree {degree} not supported: {hint}")]
    Degree { degree: usize, hint: &'static str },
    #[error("root list is empty")]
    EmptyRoots,
    #[error("root oracle did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize, best: Vec<Complex64> },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}
