use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{DyadicError, DyadicInterval};

/// A product of `s` dyadic intervals inside one block of `I^s(m)`.
///
/// Blocks are numbered from 1. The optional label is carried along by
/// coverings whose bricks are indexed (domains of dyadic maps, mergings).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Brick {
    pub block: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<u32>,
    pub edges: Vec<DyadicInterval>,
}

impl Brick {
    pub fn new(block: u32, edges: Vec<DyadicInterval>) -> Self {
        Brick { block, label: None, edges }
    }

    /// The whole block.
    pub fn unit(s: u32, block: u32) -> Self {
        Brick::new(block, vec![DyadicInterval::UNIT; s as usize])
    }

    pub fn with_label(mut self, label: u32) -> Self {
        self.label = Some(label);
        self
    }

    pub fn unlabeled(&self) -> Brick {
        Brick { label: None, ..self.clone() }
    }

    pub fn dim(&self) -> usize {
        self.edges.len()
    }

    /// `e` such that the volume is `2^-e`.
    pub fn volume_exponent(&self) -> u32 {
        self.edges.iter().map(|e| e.level()).sum()
    }

    pub fn volume(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::one() << self.volume_exponent() as usize)
    }

    pub fn is_elementary(&self) -> bool {
        self.edges.iter().all(|e| e.level() <= 1)
    }

    pub fn is_very_elementary(&self) -> bool {
        self.volume_exponent() <= 1
    }

    pub fn same_region(&self, other: &Brick) -> bool {
        self.block == other.block && self.edges == other.edges
    }

    pub fn contains(&self, other: &Brick) -> bool {
        self.block == other.block
            && self.edges.len() == other.edges.len()
            && self.edges.iter().zip(&other.edges).all(|(a, b)| a.contains(b))
    }

    pub fn intersects(&self, other: &Brick) -> bool {
        self.intersection(other).is_some()
    }

    pub fn intersection(&self, other: &Brick) -> Option<Brick> {
        if self.block != other.block || self.edges.len() != other.edges.len() {
            return None;
        }
        let edges = self
            .edges
            .iter()
            .zip(&other.edges)
            .map(|(a, b)| a.intersect(b))
            .collect::<Option<Vec<_>>>()?;
        Some(Brick::new(self.block, edges))
    }

    /// The two halves of the brick cut across dimension `dim` (0-based).
    pub fn halves(&self, dim: usize) -> Result<(Brick, Brick), DyadicError> {
        let (lo, hi) = self.edges[dim].halves()?;
        let mut a = self.unlabeled();
        let mut b = self.unlabeled();
        a.edges[dim] = lo;
        b.edges[dim] = hi;
        Ok((a, b))
    }

    /// Image of `sub ⊆ self` under the product of increasing affine maps
    /// taking `self` onto `target`. Labels are dropped.
    pub fn transport(&self, target: &Brick, sub: &Brick) -> Result<Brick, DyadicError> {
        if !self.contains(sub) || target.dim() != self.dim() {
            return Err(DyadicError::NotContained);
        }
        let edges = self
            .edges
            .iter()
            .zip(&target.edges)
            .zip(&sub.edges)
            .map(|((f, t), x)| DyadicInterval::transport(f, t, x))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Brick::new(target.block, edges))
    }

    /// `sub ⊆ self` rescaled so that `self` becomes the unit cube of `block`.
    pub fn relative(&self, sub: &Brick, block: u32) -> Result<Brick, DyadicError> {
        self.transport(&Brick::unit(self.dim() as u32, block), sub)
    }

    pub fn contains_point(&self, block: u32, coords: &[BigRational]) -> bool {
        self.block == block
            && coords.len() == self.edges.len()
            && self.edges.iter().zip(coords).all(|(e, x)| e.contains_point(x))
    }

    fn region_cmp(&self, other: &Brick) -> Ordering {
        self.block.cmp(&other.block).then_with(|| self.edges.cmp(&other.edges))
    }
}

/// Canonical order: block, then per-dimension interval addresses, then label.
impl Ord for Brick {
    fn cmp(&self, other: &Self) -> Ordering {
        self.region_cmp(other).then_with(|| self.label.cmp(&other.label))
    }
}

impl PartialOrd for Brick {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Brick {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.block)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, "×")?;
            }
            write!(f, "{e}")?;
        }
        if let Some(l) = self.label {
            write!(f, "#{l}")?;
        }
        Ok(())
    }
}

/// Smallest brick containing every input brick: per dimension the common
/// ancestor of the edges.
pub fn bounding_brick<'a, I>(bricks: I) -> Result<Brick, DyadicError>
where
    I: IntoIterator<Item = &'a Brick>,
{
    let mut iter = bricks.into_iter();
    let first = iter.next().ok_or(DyadicError::EmptyInput)?;
    let mut acc = first.unlabeled();
    for b in iter {
        if b.block != acc.block {
            return Err(DyadicError::MixedBlocks);
        }
        if b.dim() != acc.dim() {
            return Err(DyadicError::DimensionMismatch { expected: acc.dim() as u32, found: b.dim() as u32 });
        }
        for (a, e) in acc.edges.iter_mut().zip(&b.edges) {
            *a = a.common_ancestor(e);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b1(l: u32, k: u64) -> Brick {
        Brick::new(1, vec![DyadicInterval::new(l, k).unwrap()])
    }

    #[test]
    fn bounding_singleton() {
        assert_eq!(bounding_brick([&b1(2, 0)]).unwrap(), b1(2, 0));
    }

    #[test]
    fn bounding_siblings() {
        assert_eq!(bounding_brick([&b1(2, 0), &b1(2, 1)]).unwrap(), b1(1, 0));
    }

    #[test]
    fn bounding_without_common_prefix() {
        let got = bounding_brick([&b1(2, 1), &b1(2, 2)]).unwrap();
        assert_eq!(got, b1(0, 0));
        // exhaustive containment check: no proper dyadic interval holds both
        for l in 1..=2 {
            for k in 0..(1u64 << l) {
                let c = b1(l, k);
                assert!(!(c.contains(&b1(2, 1)) && c.contains(&b1(2, 2))));
            }
        }
    }

    #[test]
    fn bounding_errors() {
        assert_eq!(bounding_brick(std::iter::empty::<&Brick>()), Err(DyadicError::EmptyInput));
        let other = Brick::new(2, vec![DyadicInterval::UNIT]);
        assert_eq!(bounding_brick([&b1(1, 0), &other]), Err(DyadicError::MixedBlocks));
    }

    #[test]
    fn elementary_flags() {
        let i = |l, k| DyadicInterval::new(l, k).unwrap();
        let quarter = Brick::new(1, vec![i(1, 0), i(1, 1)]);
        assert!(quarter.is_elementary());
        assert!(!quarter.is_very_elementary());
        let half = Brick::new(1, vec![i(1, 0), DyadicInterval::UNIT]);
        assert!(half.is_very_elementary());
        let thin = Brick::new(1, vec![i(2, 0), DyadicInterval::UNIT]);
        assert!(!thin.is_elementary());
    }
}
