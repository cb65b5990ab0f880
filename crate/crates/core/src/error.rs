use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("degree must be at least 1, got {0}")]
    ZeroDegree(usize),

    #[error("field of order {p}^{degree} is too large")]
    FieldTooLarge { p: u32, degree: usize },

    #[error("modulus is malformed: {0}")]
    BadModulus(String),

    #[error("{which} modulus is reducible")]
    ReducibleModulus { which: &'static str },

    #[error("element {0} does not belong to this field tower")]
    ForeignElement(u32),

    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("field level mismatch")]
    LevelMismatch,

    #[error("enumeration needs {needed} items but the budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },

    #[error("generator rows are linearly dependent (rank {rank} < {rows} rows)")]
    DependentRows { rank: usize, rows: usize },

    #[error("a code needs at least one generator row")]
    EmptyCode,

    #[error("subspace is not invariant under Frobenius")]
    NotFrobeniusInvariant,

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("r = {r} is out of range 1..={max}")]
    RankOutOfRange { r: usize, max: usize },

    #[error("invalid code descriptor: {0}")]
    Descriptor(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("random code generation gave up after {0} attempts")]
    RetriesExhausted(u32),

    #[error("{path}: {msg}")]
    Parse { path: String, msg: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            msg: msg.into(),
        }
    }

    /// True for errors that mean "this instance is outside the supported or
    /// stated regime" rather than "something is wrong".
    pub fn is_gate(&self) -> bool {
        matches!(self, Error::Hypothesis(_) | Error::BudgetExceeded { .. })
    }
}
