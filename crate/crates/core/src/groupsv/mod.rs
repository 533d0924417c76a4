//! Elements of `sV` as dyadic maps between multi-block cubes, and the poset
//! `P₁` of dyadic maps out of one block modulo codomain block order.

mod map;
mod vertex;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::dyadic::{random_covering, DyadicError};

pub use map::{ArrowKind, DyadicMap, MapRecord};
pub use vertex::{core_covering, Comparison, PVertex};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MapError {
    #[error(transparent)]
    Dyadic(#[from] DyadicError),
    #[error("domain and codomain coverings have different dimensions")]
    DimensionMismatch,
    #[error("pairing is not a bijection of bricks")]
    NotBijection,
    #[error("label {0} does not occur")]
    UnknownLabel(u32),
    #[error("spaces I^{}({}) and I^{}({}) do not match", left.0, left.1, right.0, right.1)]
    SpaceMismatch { left: (u32, u32), right: (u32, u32) },
    #[error("point lies outside the domain")]
    PointOutside,
    #[error("expected a single block, found {0}")]
    NotLevelOne(u32),
    #[error("vertices are not comparable")]
    NotComparable,
    #[error("{what} = {value} exceeds bound {bound}")]
    BoundExceeded { what: &'static str, value: usize, bound: usize },
}

/// A random element of `sV` given by two random `pieces`-brick coverings of
/// `I^s` and a random pairing.
pub fn random_element<R: Rng>(rng: &mut R, s: u32, pieces: usize, max_level: u32) -> DyadicMap {
    let dom = random_covering(rng, s, 1, pieces, max_level);
    let cod = random_covering(rng, s, 1, pieces, max_level);
    let mut targets: Vec<_> = cod.bricks().to_vec();
    targets.shuffle(rng);
    let pairs = dom.bricks().iter().cloned().zip(targets).collect();
    DyadicMap::assemble(s, 1, 1, pairs)
}

/// A random vertex at level `t`: a random element of `sV` followed by a
/// random splitting into `t` blocks.
pub fn random_vertex<R: Rng>(rng: &mut R, s: u32, t: u32, pieces: usize, max_level: u32) -> PVertex {
    let g = random_element(rng, s, pieces, max_level);
    let u = random_covering(rng, s, 1, t as usize, max_level);
    let z = DyadicMap::splitting(&u);
    PVertex::canonicalize(&DyadicMap::compose(&z, &g).expect("spaces match")).expect("one block")
}

#[cfg(test)]
mod tests;
