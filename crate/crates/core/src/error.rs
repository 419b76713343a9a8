use crate::linalg::CodeBasis;
use crate::reduce::IterationCounters;

/// Errors shared by all modules.
///
/// Usage errors (bad arguments, mismatched fields) and domain errors
/// (singular matrices, non-primitive inputs) are kept as distinct variants so
/// callers can tell a caller bug from a data condition.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field cardinality {0} exceeds the supported maximum 2^16")]
    FieldTooLarge(u64),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("vector lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("element {0} is not a valid encoding in F_{1}")]
    InvalidElement(u32, u32),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is rank-deficient")]
    RankDeficient,
    #[error("vector is not a codeword of the given basis")]
    NotInCode,
    #[error("codeword is not primitive")]
    NotPrimitive,
    #[error("basis is not proper")]
    NotProper,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("iteration cap {cap} exhausted")]
    CapExhausted {
        cap: u64,
        partial: Box<CodeBasis>,
        counters: IterationCounters,
    },
    #[error("no information set within the first k + beta columns; resample the input")]
    RetryableSystematization,
    #[error("oracle failure: {0}")]
    Oracle(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
