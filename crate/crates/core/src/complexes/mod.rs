//! Finite posets, simplicial complexes and their integral homology.

mod certificate;
mod chain;
mod homology;
mod poset;
mod simplicial;
mod snf;

use thiserror::Error;

pub use certificate::{contraction_certificate, Step};
pub use chain::{ChainComplex, SparseMatrix};
pub use homology::{
    connectivity_report, homology, relative_homology, ConnectivityVerdict, HomologyGroup, HomologyReport, Witness,
};
pub use poset::FinitePoset;
pub use simplicial::{join_complex, order_complex, SimplicialComplex, DEFAULT_MAX_SIMPLICES};
pub use snf::{elimination_invariants, smith_normal_form, IntMatrix, SmithForm};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("element {0} is out of range")]
    UnknownElement(u32),
    #[error("relation between {0} and {1} violates antisymmetry")]
    NotAntisymmetric(u32, u32),
    #[error("{0} < {1} < {2} but not {0} < {2}")]
    NotTransitive(u32, u32, u32),
    #[error("simplex {0:?} repeats a vertex")]
    RepeatedVertex(Vec<u32>),
    #[error("simplex {simplex:?} lacks its face {missing:?}")]
    NotFaceClosed { simplex: Vec<u32>, missing: Vec<u32> },
    #[error("vertex {0} occurs in both join factors")]
    SharedVertex(u32),
    #[error("simplex {0:?} of the subcomplex is missing from the complex")]
    NotSubcomplex(Vec<u32>),
    #[error("homology through degree {needed} needs simplices of dimension {} but only {available} were built", needed + 1)]
    InsufficientSkeleton { needed: isize, available: isize },
    #[error("{what} = {value} exceeds bound {bound}")]
    BoundExceeded { what: &'static str, value: usize, bound: usize },
    #[error("map {step} has {found} entries for a poset of {expected} elements")]
    MapLength { step: usize, found: usize, expected: usize },
    #[error("map {step} is not order preserving: {a} < {b} but images are not related")]
    NotMonotone { step: usize, a: u32, b: u32 },
    #[error("map {step} is not pointwise comparable with its predecessor at {at}")]
    NotComparable { step: usize, at: u32 },
    #[error("last map is not constant at {target}")]
    NotConstant { target: u32 },
    #[error("cannot contract an empty poset")]
    EmptyPoset,
    #[error("internal check failed: {0}")]
    Inconsistent(String),
}

#[cfg(test)]
mod tests;
