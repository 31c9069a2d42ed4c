use thiserror::Error;

/// Everything that can go wrong in the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("slot {slot} out of range for operation of arity {arity}")]
    SlotRange { slot: usize, arity: usize },
    #[error("boxes do not partition the unit cube: {0}")]
    NotPartition(String),
    #[error("box partition is not realizable by midpoint cuts")]
    NotGuillotine,
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("cannot compose: codomain has length {codomain}, domain has length {domain}")]
    DomainMismatch { codomain: usize, domain: usize },
    #[error("cospan legs have different codomains ({0} vs {1})")]
    CodomainMismatch(usize, usize),
    #[error("the given pairs are not square fillings of the cospan")]
    NotFillings,
    #[error("base word mismatch: {0} vs {1}")]
    BaseMismatch(usize, usize),
    #[error("marking length {marking} does not match word length {word}")]
    Length { marking: usize, word: usize },
    #[error("class is not a multiball")]
    NotMultiball,
    #[error("class is not a partition")]
    NotPartitionClass,
    #[error("element does not stabilize the partition pointwise")]
    NotInStabilizer,
    #[error("search bound exhausted without a verdict")]
    Unknown,
    #[error("object is not split")]
    NotSplit,
    #[error("flavor violation: {0}")]
    Flavor(String),
    #[error("invalid backend: {0}")]
    Backend(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
