use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::SteinError;
use crate::dyadic::{bounding_brick, validate_covering, Brick, Covering};
use crate::matching::Edge;

/// One block of a merging: the labels it absorbs and an elementary tiling
/// of the unit cube whose bricks carry those labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Part {
    labels: Vec<u32>,
    bricks: Vec<Brick>,
}

impl Part {
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn bricks(&self) -> &[Brick] {
        &self.bricks
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn brick_of(&self, label: u32) -> Option<&Brick> {
        self.bricks.iter().find(|b| b.label == Some(label))
    }

    /// The unlabeled shape, as a covering of one block.
    pub fn shape(&self, s: u32) -> Covering {
        Covering::new(s, 1, self.bricks.iter().map(Brick::unlabeled).collect()).expect("parts tile their block")
    }

    pub(crate) fn assemble(mut bricks: Vec<Brick>) -> Part {
        bricks.sort();
        let mut labels: Vec<u32> = bricks.iter().map(|b| b.label.expect("labeled")).collect();
        labels.sort_unstable();
        Part { labels, bricks }
    }
}

/// An element of `Eₙ`: a non-trivial elementary merging of `n` labeled
/// bricks, up to the order of the resulting blocks.
///
/// Parts are sorted by least label; within a part, bricks are in canonical
/// order and carry the global labels `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Merging {
    s: u32,
    n: u32,
    parts: Vec<Part>,
}

#[derive(Serialize, Deserialize)]
struct RawPartCovering {
    s: u32,
    m: u32,
    bricks: Vec<Brick>,
}

#[derive(Serialize, Deserialize)]
struct RawPart {
    labels: Vec<u32>,
    covering: RawPartCovering,
}

#[derive(Serialize, Deserialize)]
struct RawMerging {
    n: u32,
    s: u32,
    parts: Vec<RawPart>,
}

impl Serialize for Merging {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawMerging {
            n: self.n,
            s: self.s,
            parts: self
                .parts
                .iter()
                .map(|p| RawPart {
                    labels: p.labels.clone(),
                    covering: RawPartCovering { s: self.s, m: 1, bricks: p.bricks.clone() },
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Merging {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawMerging::deserialize(deserializer)?;
        let mut parts = Vec::with_capacity(raw.parts.len());
        for p in raw.parts {
            if p.covering.s != raw.s || p.covering.m != 1 {
                return Err(serde::de::Error::custom("part coverings must be single blocks of I^s"));
            }
            parts.push((p.labels, p.covering.bricks));
        }
        Merging::new(raw.s, raw.n, parts).map_err(serde::de::Error::custom)
    }
}

/// `h = (c, b)`: `c = (c_s, …, c₂)` counts bricks of volume `2^-i`, and `b`
/// is the number of blocks. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Height {
    pub c: Vec<u32>,
    pub b: u32,
}

impl Merging {
    /// Validates and canonicalizes. Each entry is `(labels, bricks)` with
    /// bricks in block 1 labeled by exactly `labels`.
    pub fn new(s: u32, n: u32, parts: Vec<(Vec<u32>, Vec<Brick>)>) -> Result<Merging, SteinError> {
        let m = Self::build(s, n, parts)?;
        if m.is_trivial() {
            return Err(SteinError::TrivialMerging);
        }
        Ok(m)
    }

    fn build(s: u32, n: u32, parts: Vec<(Vec<u32>, Vec<Brick>)>) -> Result<Merging, SteinError> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(parts.len());
        for (labels, bricks) in parts {
            let declared: BTreeSet<u32> = labels.iter().copied().collect();
            let carried: BTreeSet<u32> = bricks.iter().filter_map(|b| b.label).collect();
            if labels.is_empty()
                || declared.len() != labels.len()
                || carried != declared
                || bricks.len() != labels.len()
                || bricks.iter().any(|b| b.block != 1)
            {
                return Err(SteinError::BadPart(labels));
            }
            for &l in &labels {
                if l == 0 || l > n || !seen.insert(l) {
                    return Err(SteinError::BadLabels);
                }
            }
            let plain: Vec<Brick> = bricks.iter().map(Brick::unlabeled).collect();
            validate_covering(s, 1, &plain)?;
            if !plain.iter().all(Brick::is_elementary) {
                return Err(SteinError::NotElementary(labels));
            }
            out.push(Part::assemble(bricks));
        }
        if seen.len() != n as usize {
            return Err(SteinError::BadLabels);
        }
        Ok(Self::from_parts(s, n, out))
    }

    pub(crate) fn from_parts(s: u32, n: u32, mut parts: Vec<Part>) -> Merging {
        parts.sort_by_key(|p| p.labels[0]);
        Merging { s, n, parts }
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    /// Number of blocks.
    pub fn b(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.iter().all(|p| p.len() == 1)
    }

    pub fn is_very_elementary(&self) -> bool {
        self.parts.iter().all(|p| p.bricks.iter().all(Brick::is_very_elementary))
    }

    pub fn part_of(&self, label: u32) -> Option<usize> {
        self.parts.iter().position(|p| p.labels.binary_search(&label).is_ok())
    }

    pub fn c(&self) -> Vec<u32> {
        let mut c = vec![0u32; self.s.saturating_sub(1) as usize];
        for b in self.parts.iter().flat_map(|p| &p.bricks) {
            let e = b.volume_exponent();
            if e >= 2 {
                c[(self.s - e) as usize] += 1;
            }
        }
        c
    }

    pub fn height(&self) -> Height {
        Height { c: self.c(), b: self.b() }
    }

    /// Oriented colored edge of a very elementary two-brick part: from the
    /// lower half to the upper half, colored by the cut direction.
    pub fn ve_edge(part: &Part) -> Option<Edge> {
        if part.len() != 2 || !part.bricks.iter().all(Brick::is_very_elementary) {
            return None;
        }
        let (a, b) = (&part.bricks[0], &part.bricks[1]);
        let dim = (0..a.dim()).find(|&d| a.edges[d] != b.edges[d])?;
        let (lo, hi) = if a.edges[dim].index() == 0 { (a, b) } else { (b, a) };
        Some(Edge { tail: lo.label?, head: hi.label?, color: dim as u32 + 1 })
    }

    /// The oriented edges of a very elementary merging, sorted.
    pub fn ve_edges(&self) -> Option<Vec<Edge>> {
        let mut out = Vec::new();
        for p in &self.parts {
            match p.len() {
                1 => {}
                _ => out.push(Self::ve_edge(p)?),
            }
        }
        out.sort();
        Some(out)
    }
}

/// Splits one part along a coarsening `w` of its shape: each brick of `w`
/// becomes a new part holding the labeled bricks inside it, rescaled.
pub(crate) fn split_part(part: &Part, w: &Covering) -> Vec<Part> {
    w.bricks()
        .iter()
        .map(|d| {
            let inner = part
                .bricks
                .iter()
                .filter(|b| d.contains(b))
                .map(|b| {
                    let mut r = d.relative(b, 1).expect("contained");
                    r.label = b.label;
                    r
                })
                .collect();
            Part::assemble(inner)
        })
        .collect()
}

/// `a ≤ b`: `b` arises from `a` by splitting blocks. Decided directly from
/// the definition: `b`'s partition refines `a`'s, each `b`-part fills a
/// brick `D` of its `a`-part, and rescaling `D` to the unit cube gives
/// `b`'s tiling of that part.
pub fn merging_le(a: &Merging, b: &Merging) -> Result<bool, SteinError> {
    if a.s != b.s || a.n != b.n {
        return Err(SteinError::Mismatch);
    }
    for q in &b.parts {
        let Some(pi) = a.part_of(q.labels[0]) else { return Ok(false) };
        let p = &a.parts[pi];
        if !q.labels.iter().all(|l| p.labels.binary_search(l).is_ok()) {
            return Ok(false);
        }
        let inside: Vec<&Brick> = q.labels.iter().map(|&l| p.brick_of(l).expect("label present")).collect();
        let d = bounding_brick(inside.iter().copied())?;
        // disjoint bricks inside `D` tile it iff their rescaled volumes sum to one
        let vol: BigRational = inside.iter().map(|b| d.relative(b, 1).expect("inside").volume()).sum();
        if !vol.is_one() {
            return Ok(false);
        }
        let mut rescaled: Vec<Brick> = inside
            .iter()
            .map(|b| {
                let mut r = d.relative(b, 1).expect("inside");
                r.label = b.label;
                r
            })
            .collect();
        rescaled.sort();
        if rescaled != q.bricks {
            return Ok(false);
        }
    }
    Ok(true)
}
