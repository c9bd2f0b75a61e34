use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid intersection set: {0}")]
    InvalidSpec(String),

    #[error("L = {l:?} together with r = {r} is not an arithmetic progression")]
    NotArithmetic { r: usize, l: Vec<usize> },

    #[error("uniformity mismatch: family is {family}-uniform, predicate expects {expected}")]
    UniformityMismatch { family: usize, expected: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("set family text: {0}")]
    FamilyFormat(String),

    #[error("vertex set {0:?} does not induce a clique")]
    NotAClique(Vec<usize>),

    #[error("cells have unequal sizes {0:?}")]
    UnequalCells(Vec<usize>),

    #[error("no prime power q with q | {l3} and q ∤ {twice_l2}")]
    NoPrimePower { l3: u64, twice_l2: u64 },

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("instance exceeds configured cap: {0}")]
    OverCap(String),
}
