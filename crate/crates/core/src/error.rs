//! Error types shared across the crate.

use thiserror::Error;

/// Errors from the arithmetic kernel: polynomials, rational functions,
/// parsing and exact linear algebra.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum KernelError {
    #[error("variable contexts differ: [{left}] vs [{right}]")]
    ContextMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no value assigned for variable `{0}`")]
    MissingAssignment(String),
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    #[error("cannot parse polynomial: {0}")]
    BadPolynomial(String),
    #[error("division by the zero polynomial")]
    ZeroDenominator,
    #[error("duplicate variable name `{0}` in context")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    BadVariableName(String),
}

/// Errors from Lie-algebra construction and validation.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LieError {
    #[error("basis has {names} names but dimension is {dim}")]
    BasisSizeMismatch { dim: usize, names: usize },
    #[error("bracket entry ({i},{j}) violates the i<j storage rule")]
    BadBracketIndex { i: usize, j: usize },
    #[error("bracket entry ({i},{j}) appears more than once")]
    DuplicateBracket { i: usize, j: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("action matrices do not form a representation: [pi({a}), pi({b})] != pi([{a},{b}])")]
    NotARepresentation { a: String, b: String },
    #[error("pi({z}) is not a derivation of the radical: fails on ({u}, {v})")]
    NotADerivation { z: String, u: String, v: String },
    #[error("action matrix {index} is {rows}x{cols}, expected {dim}x{dim}")]
    BadActionShape { index: usize, rows: usize, cols: usize, dim: usize },
    #[error("expected {expected} action matrices, got {got}")]
    BadActionCount { expected: usize, got: usize },
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Errors from invariant search and the structural predicates built on it.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("module highest weight must be at least 3 (radical dimension >= 4), got {0}")]
    RadicalTooSmall(u32),
    #[error("algebra has dimension {dim}, expected {expected} for highest weight {weight}")]
    UnexpectedDimension { dim: usize, expected: usize, weight: u32 },
    #[error("subalgebra is not abelian: [{a}, {b}] != 0")]
    NotAbelian { a: String, b: String },
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Errors from the numeric oracle.
#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("trajectory left the finite range at step {step}")]
    NonFiniteState { step: usize },
    #[error("start point has {got} coordinates, algebra has dimension {expected}")]
    BadStartDimension { got: usize, expected: usize },
    #[error("start point must lie in [-2, 2]^n, coordinate {index} is {value}")]
    StartOutOfRange { index: usize, value: f64 },
    #[error("step*steps must not exceed 1 (got {0})")]
    HorizonTooLong(f64),
    #[error("field index {index} out of range for dimension {dim}")]
    FieldOutOfRange { index: usize, dim: usize },
}
