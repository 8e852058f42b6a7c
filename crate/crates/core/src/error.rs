use thiserror::Error;

use crate::axioms::AxiomWitness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a grand set needs at least 2 items, got {0}")]
    TooFewItems(usize),
    #[error("grand set of {n} items exceeds the cap of {cap}")]
    TooManyItems { n: usize, cap: usize },
    #[error("invalid item label {0:?}")]
    InvalidLabel(String),
    #[error("duplicate item label {0:?}")]
    DuplicateLabel(String),
    #[error("choice table has {got} entries, expected {expected}")]
    TableSize { got: usize, expected: usize },
    #[error("menu {0:#b} uses items outside the grand set")]
    MenuOutOfRange(u32),
    #[error("choice from menu {menu:#b} is {chosen:#b}, not a submenu")]
    NotContractive { menu: u32, chosen: u32 },
    #[error("relation has {got} rows, expected {expected}")]
    RelationSize { got: usize, expected: usize },
    #[error("objects live on different grand sets")]
    MismatchedGrandSets,
    #[error("ballot family must contain at least one ballot")]
    EmptyFamily,
    #[error("replication factor must be positive")]
    ZeroReplication,
    #[error("invalid share {0}: expected p/q with 0 <= p/q < 1")]
    InvalidShare(String),
    #[error("axiom alpha fails: {0}")]
    AlphaViolated(AxiomWitness),
    #[error("family would contain {size} ballots, above the limit of {limit}")]
    SizeExceeded { size: u128, limit: u64 },
    #[error("grand set of {n} items is above the solver limit of {max}")]
    GrandSetTooLarge { n: usize, max: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
