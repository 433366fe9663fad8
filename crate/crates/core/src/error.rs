use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("basis is empty")]
    EmptyBasis,

    #[error("basis must start with 1, found {0}")]
    MissingLeadingOne(u32),

    #[error("basis is not strictly increasing at position {index}: {prev} followed by {next}")]
    NotIncreasing { index: usize, prev: u32, next: u32 },

    #[error("malformed basis text {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("new element {new} must exceed the largest element {last}")]
    Ordering { new: u32, last: u32 },

    #[error("modulus {p} is out of range (need {min} <= p <= {max})")]
    Modulus { p: u32, min: u32, max: u32 },

    #[error("basis is not admissible: range {range} falls short of largest element {last}")]
    Inadmissible { range: u32, last: u32 },

    #[error("{basis} is not a {p}-basis")]
    NotPBasis { basis: String, p: u32 },

    #[error("{basis} is not {p}-extensible")]
    NotExtensible { basis: String, p: u32 },

    #[error("residues of {basis} (with 0) do not cover every class mod {p}")]
    ResiduesIncomplete { basis: String, p: u32 },

    #[error(
        "{basis} has {len} elements; a {p}+ basis with {depth} free element(s) needs {expected}"
    )]
    WrongLength {
        basis: String,
        p: u32,
        depth: u32,
        len: usize,
        expected: usize,
    },

    #[error("free element {value} is not in the admissible window ({low}, {high}]")]
    FreeElementOutOfWindow { value: u32, low: u32, high: u32 },

    #[error("construction repeats element {0}")]
    DuplicateElement(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("node budget of {budget} exceeded after {visited} nodes")]
    BudgetExceeded { budget: u64, visited: u64 },

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
