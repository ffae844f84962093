use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("not an involution: {0}")]
    NotAnInvolution(String),
    #[error("fixed-point signs do not match involution {0}")]
    InvalidSigns(String),
    #[error("{1} does not cover {0} in the involution poset")]
    NotACover(String, String),
    #[error("cover {0} < {1} matches none of the transposition shapes")]
    UnclassifiedCover(String, String),
    #[error("{0} is not a fixed-point-free involution exchanging the two halves")]
    NotInIntervalSubset(String),
    #[error("({0}, {1}) is not a cover given by a single transposition")]
    NotATranspositionCover(String, String),
    #[error("cover {lower} < {upper} jumps {gap} ranks")]
    GradingViolation { lower: String, upper: String, gap: i64 },
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("{0} and {1} are not comparable")]
    NotComparable(String, String),
    #[error("{0} rank-2 intervals do not have exactly two midpoints")]
    DiamondViolation(usize),
    #[error("sign system has no solution ({} diamonds in certificate)", .0.len())]
    Unsolvable(Vec<usize>),
    #[error("sign assignment does not match the poset: {0}")]
    SignMismatch(String),
    #[error("edge degree gap is not 1 between {0} and {1}")]
    DegreeMismatch(String, String),
    #[error("p = {p} must exceed n - 1 = {}", .n - 1)]
    IrregularCharacter { p: usize, n: usize },
    #[error("invalid clan: {0}")]
    InvalidClan(String),
    #[error("no chain construction for signature ({0}, {1})")]
    UnsupportedSignature(usize, usize),
    #[error("size {0} is outside the supported range")]
    TooLarge(usize),
    #[error("fixture: {0}")]
    Fixture(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
