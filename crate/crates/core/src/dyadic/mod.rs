//! Dyadic intervals, bricks and dyadic coverings of `I^s(m)`, with the
//! refinement lattice on coverings.

mod brick;
mod covering;
mod enumerate;
mod interval;

use num_rational::BigRational;
use thiserror::Error;

pub use brick::{bounding_brick, Brick};
pub use covering::{validate_covering, Classification, Covering};
pub(crate) use covering::UnionFind;
pub use enumerate::{
    count_by_size, enumerate_coarsenings, enumerate_elementary, enumerate_elementary_bounded, labelings,
    random_coarsening, random_covering, sibling_parent, DEFAULT_MAX_COARSENING_BRICKS, DEFAULT_MAX_ENUM_DIM,
};
pub use interval::{Dyadic, DyadicInterval, MAX_LEVEL};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DyadicError {
    #[error("{numerator}/2^{exponent} is not in [0, 1]")]
    OutOfUnitRange { numerator: u64, exponent: u32 },
    #[error("level {level} exceeds the maximum {max}")]
    LevelTooDeep { level: u32, max: u32 },
    #[error("index {index} out of range for level {level}")]
    IndexOutOfRange { level: u32, index: u64 },
    #[error("I^{s}({m}) is empty")]
    EmptySpace { s: u32, m: u32 },
    #[error("expected {expected} edges, found {found}")]
    DimensionMismatch { expected: u32, found: u32 },
    #[error("block {block} outside 1..={m}")]
    BlockOutOfRange { block: u32, m: u32 },
    #[error("either every brick carries a label or none does")]
    PartialLabels,
    #[error("label {label} is not part of a bijection with 1..={n}")]
    BadLabel { label: u32, n: usize },
    #[error("bricks {first} and {second} overlap")]
    Overlap { first: Brick, second: Brick },
    #[error("block {block} has no bricks")]
    MissingBlock { block: u32 },
    #[error("block {block} has volume deficit {deficit}")]
    VolumeDeficit { block: u32, deficit: BigRational },
    #[error("coverings live on I^{}({}) and I^{}({})", left.0, left.1, right.0, right.1)]
    SpaceMismatch { left: (u32, u32), right: (u32, u32) },
    #[error("brick is not contained in the reference brick")]
    NotContained,
    #[error("empty input")]
    EmptyInput,
    #[error("bricks from different blocks")]
    MixedBlocks,
    #[error("{what} = {value} exceeds bound {bound}")]
    BoundExceeded { what: &'static str, value: usize, bound: usize },
}

#[cfg(test)]
mod tests;
