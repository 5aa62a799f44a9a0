use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("mesh endpoints differ: ({a1}, {b1}) vs ({a2}, {b2})")]
    DomainMismatch { a1: f64, b1: f64, a2: f64, b2: f64 },

    #[error("cell {cell} has polynomial degree {degree}; at most 2 is supported")]
    DegreeTooHigh { cell: usize, degree: usize },

    #[error("expected {expected} cells, got {got}")]
    CellCountMismatch { expected: usize, got: usize },

    #[error("field is not continuous at x = {at} (jump {jump:e})")]
    NotContinuous { at: f64, jump: f64 },

    #[error("diffusion coefficient must be positive, got {value} on cell {cell}")]
    NonPositiveDiffusion { cell: usize, value: f64 },

    #[error("diffusion coefficient must be constant on each cell (cell {cell})")]
    NonConstantDiffusion { cell: usize },

    #[error("point {x} lies outside the domain ({a}, {b})")]
    OutsideDomain { x: f64, a: f64, b: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("inadmissible function: {0}")]
    Inadmissible(String),

    #[error("boundary mismatch at x = {at}: expected {expected}, got {got}")]
    BoundaryMismatch { at: f64, expected: f64, got: f64 },

    #[error("dual infeasibility on ({left}, {right}): {reason}")]
    DualInfeasible { left: f64, right: f64, reason: String },

    #[error("multiplier {name} out of range on ({left}, {right})")]
    MultiplierOutOfRange { name: &'static str, left: f64, right: f64 },

    #[error("{name}: residual {residual:e} exceeds tolerance {tolerance:e}")]
    IdentityViolation {
        name: &'static str,
        residual: f64,
        tolerance: f64,
    },

    #[error("solver did not converge in {iterations} sweeps (last change {last_change:e})")]
    NotConverged { iterations: usize, last_change: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}
