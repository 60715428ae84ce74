use thiserror::Error;

use crate::lie::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("word is not good")]
    NotGood,
    #[error("multipliers are not in nondecreasing order")]
    UnsortedMultipliers,
    #[error("enumeration exceeds the configured cap of {cap} words")]
    ResourceBound { cap: usize },
    #[error("zero polynomial has no leading word")]
    ZeroPolynomial,
    #[error("subtree at the occurrence path does not match the leading word")]
    PatternMismatch,
    #[error("occurrence path leaves the host word")]
    InvalidPath,
    #[error("relation set is not a Gröbner–Shirshov basis")]
    NotConfluent,
    #[error("letter of rank {rank} is outside an alphabet of {size} letters")]
    LetterOutOfRange { rank: usize, size: usize },
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("empty generator name")]
    EmptyGenerator,
    #[error("invalid Lie structure constants: {} violation(s)", .0.len())]
    InvalidLie(Vec<Violation>),
    #[error("structure constant index {index} is outside 1..={dim}")]
    LieIndexOutOfRange { index: usize, dim: usize },
}
