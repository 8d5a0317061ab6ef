use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid instance K({n},{k}): {reason}")]
    InvalidInstance { n: u32, k: u32, reason: &'static str },

    #[error("element {element} is outside [1, {n}]")]
    OutOfRange { element: u32, n: u32 },

    #[error("set has {found} elements, expected {expected}")]
    WrongArity { expected: u32, found: usize },

    #[error("element {0} appears twice in one set")]
    DuplicateElement(u32),

    #[error("cannot separate element {0} from itself")]
    DegeneratePair(u32),

    #[error("family has {0} sets; at most 64 are supported")]
    TooManySets(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("search budget exceeded")]
    BudgetExceeded,

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}
