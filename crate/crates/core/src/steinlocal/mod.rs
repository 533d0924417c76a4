//! Mergings of labeled bricks, the posets `Eₙ ⊇ VEₙ`, the height
//! `h = (c, b)` and the checks built on descending links.

mod interval;
mod iso;
mod links;
mod merging;
mod poset;

use thiserror::Error;

use crate::complexes::ComplexError;
use crate::dyadic::DyadicError;
use crate::groupsv::MapError;
use crate::guard::GuardError;
use crate::matching::MatchingError;

pub use interval::{cube_lemma_check, interval_complex, CubeLemmaReport, IntervalComplex, IntervalKind};
pub use iso::{desc_link_of_vertex, ve_iso, DescLinkReport, VeIsoReport};
pub use links::{
    descending_link, height_rules, morse_pair_check, no_two_bricks_check, sub_order_complex, two_bricks_certificate,
    DescendingLink, HeightRuleViolation, MorseLevel, NoTwoBricksCheck, TwoBricksCertificate,
};
pub use merging::{merging_le, Height, Merging, Part};
pub use poset::{enumerate_posets, MergingPoset};

#[derive(Debug, Error)]
pub enum SteinError {
    #[error("a merging needs at least one block with two or more bricks")]
    TrivialMerging,
    #[error("part {0:?} does not carry exactly its labels on one block")]
    BadPart(Vec<u32>),
    #[error("labels must partition 1..=n")]
    BadLabels,
    #[error("part {0:?} is not elementary")]
    NotElementary(Vec<u32>),
    #[error("mergings differ in s or n")]
    Mismatch,
    #[error("merging is not in the poset")]
    NotInPoset,
    #[error("merging has no block of exactly two bricks")]
    NoTwoBrickBlock,
    #[error("merging has a block of exactly two bricks")]
    HasTwoBrickBlock,
    #[error("up-link is empty")]
    EmptyUpLink,
    #[error("element {0} is not in the up-link")]
    LeavesUpLink(u32),
    #[error("comparable elements {0} and {1} have equal height")]
    HeightTie(u32, u32),
    #[error("merging is not very elementary")]
    NotVeryElementary,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(&'static str),
    #[error(transparent)]
    Dyadic(#[from] DyadicError),
    #[error(transparent)]
    Guard(#[from] GuardError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
}
