use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("cube {cube}: face {face} refers to unknown cube {target}")]
    DanglingFace { cube: String, face: String, target: String },
    #[error("cube {cube}: face {face} has dimension {found}, expected {expected}")]
    DimensionMismatch { cube: String, face: String, expected: usize, found: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension {requested} exceeds the cap {cap}")]
    DimensionCap { requested: usize, cap: usize },
    #[error("closure exceeded the budget of {0} morphisms")]
    ClosureBudgetExceeded(usize),
    #[error("level {level} is not below dimension {dim}")]
    BadLevel { level: usize, dim: usize },
    #[error("cell set is not a composable pasting diagram")]
    NotDecomposable,
    #[error("assignment is not compatible with composition in the target")]
    IncompatibleAssignment,
    #[error("category is not of length at most one")]
    NotLengthAtMostOne,
    #[error("category is contracting: {0}")]
    NotNonContracting(String),
    #[error("unknown state {0}")]
    UnknownState(String),
    #[error("index {index} out of range 1..={max}")]
    BadIndex { index: usize, max: usize },
    #[error("cubes are not composable along direction {0}")]
    NotComposable(usize),
    #[error("shell is not fillable: {0}")]
    NotFillable(String),
    #[error("interior does not match the shell boundary")]
    SourceMismatch,
    #[error("cube is not branching")]
    NotBranching,
    #[error("ill-formed complex: {0}")]
    IllFormedComplex(String),
    #[error("quotient is not a category: {0}")]
    BadQuotient(String),
}
