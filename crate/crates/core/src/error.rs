use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("order relation has a cycle through {0:?} and {1:?}")]
    Cycle(String, String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("{what} has size {size}, above the cap {cap}")]
    SizeCapExceeded { what: String, size: usize, cap: usize },
    #[error("quiver is not ordered: {0}")]
    NotOrderedQuiver(String),
    #[error("q-integer [{m}]_q vanishes at q = {q}")]
    QDegenerate { m: usize, q: String },
    #[error("index error: {0}")]
    Index(String),
    #[error("series kinds differ: {0} vs {1}")]
    KindMismatch(String, String),
    #[error("series bounds differ: {0} vs {1}")]
    BoundMismatch(usize, usize),
    #[error("eulerian parameters differ: {0} vs {1}")]
    QMismatch(String, String),
    #[error("series is not invertible: leading coefficient is zero")]
    NotInvertible,
    #[error("incidence functions live on different posets")]
    ParentMismatch,
    #[error("unknown interval type {0}")]
    UnknownType(usize),
    #[error("interval relation is not order compatible")]
    NotCompatible,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("coalgebra has no group-like basis element")]
    NoGrouplike,
    #[error("comodule degree {degree} exceeds the degree cap {cap}")]
    CapTooSmall { degree: u32, cap: u32 },
    #[error("not a cochain complex: {0}")]
    NotAComplex(String),
    #[error("{what} needs {size} cochain coordinates, budget is {budget}")]
    BudgetExceeded { what: String, size: usize, budget: usize },
    #[error("algebra is not in incidence form: {0}")]
    NotIncidenceForm(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("cup product would land in degree {degree}, past n_max = {n_max}")]
    DegreeOverflow { degree: usize, n_max: usize },
    #[error("coefficient bimodule carries no algebra structure")]
    CoefficientNotAlgebra,
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
