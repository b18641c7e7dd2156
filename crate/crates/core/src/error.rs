use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan type `{0}`")]
    InvalidCartanType(String),

    #[error("ell = {ell} is not good for type {cartan}: {reason}")]
    BadEll {
        cartan: String,
        ell: u64,
        reason: String,
    },

    #[error("simple reflection index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("word {word:?} is not reduced (length {length} < {letters} letters)")]
    NotReduced {
        word: Vec<usize>,
        length: usize,
        letters: usize,
    },

    #[error("group enumeration exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("ell = {ell} shares the factor {gcd} with the element order {order}")]
    OrderNotCoprime { ell: u64, order: u64, gcd: u64 },

    #[error("subgroup is not contained in the supergroup")]
    NotContained,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("stratum is not on the fully Azumaya locus: {0}")]
    NotAzumaya(String),

    #[error("algebra error: {0}")]
    Algebra(String),

    #[error("field F_{p} is too small or the instance is not split: {reason}")]
    NonSplit { p: u64, reason: String },

    #[error("element {0:?} does not lie in the group")]
    NotInGroup(Vec<i64>),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
