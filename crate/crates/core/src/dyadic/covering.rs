use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{bounding_brick, Brick, DyadicError, DyadicInterval};

/// A dyadic covering of `I^s(m)`: finitely many bricks tiling every block.
///
/// Bricks are kept in canonical order, so two coverings are equal exactly
/// when they consist of the same bricks (with the same labels).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCovering")]
pub struct Covering {
    s: u32,
    m: u32,
    bricks: Vec<Brick>,
}

#[derive(Deserialize)]
struct RawCovering {
    s: u32,
    m: u32,
    bricks: Vec<Brick>,
}

impl TryFrom<RawCovering> for Covering {
    type Error = DyadicError;

    fn try_from(raw: RawCovering) -> Result<Self, Self::Error> {
        Covering::new(raw.s, raw.m, raw.bricks)
    }
}

/// Result of [`Covering::classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub elementary: bool,
    pub very_elementary: bool,
    pub volumes: Vec<BigRational>,
}

/// Checks the covering invariants, reporting the first one violated.
pub fn validate_covering(s: u32, m: u32, bricks: &[Brick]) -> Result<(), DyadicError> {
    if s == 0 || m == 0 {
        return Err(DyadicError::EmptySpace { s, m });
    }
    for b in bricks {
        if b.dim() != s as usize {
            return Err(DyadicError::DimensionMismatch { expected: s, found: b.dim() as u32 });
        }
        if b.block == 0 || b.block > m {
            return Err(DyadicError::BlockOutOfRange { block: b.block, m });
        }
    }
    check_labels(bricks)?;

    let mut by_block: BTreeMap<u32, Vec<&Brick>> = BTreeMap::new();
    for b in bricks {
        by_block.entry(b.block).or_default().push(b);
    }
    for members in by_block.values() {
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                if a.intersects(b) {
                    return Err(DyadicError::Overlap { first: (*a).clone(), second: (*b).clone() });
                }
            }
        }
    }
    for block in 1..=m {
        let Some(members) = by_block.get(&block) else {
            return Err(DyadicError::MissingBlock { block });
        };
        let total: BigRational = members.iter().map(|b| b.volume()).sum();
        if total != BigRational::one() {
            return Err(DyadicError::VolumeDeficit { block, deficit: BigRational::one() - total });
        }
    }
    Ok(())
}

fn check_labels(bricks: &[Brick]) -> Result<(), DyadicError> {
    let labeled = bricks.iter().filter(|b| b.label.is_some()).count();
    if labeled == 0 {
        return Ok(());
    }
    if labeled != bricks.len() {
        return Err(DyadicError::PartialLabels);
    }
    let mut seen = vec![false; bricks.len()];
    for b in bricks {
        let l = b.label.expect("all labeled");
        if l == 0 || l as usize > bricks.len() || seen[l as usize - 1] {
            return Err(DyadicError::BadLabel { label: l, n: bricks.len() });
        }
        seen[l as usize - 1] = true;
    }
    Ok(())
}

impl Covering {
    pub fn new(s: u32, m: u32, mut bricks: Vec<Brick>) -> Result<Self, DyadicError> {
        validate_covering(s, m, &bricks)?;
        bricks.sort();
        Ok(Covering { s, m, bricks })
    }

    /// For bricks produced by operations that preserve the invariants.
    pub(crate) fn assemble(s: u32, m: u32, mut bricks: Vec<Brick>) -> Self {
        bricks.sort();
        debug_assert_eq!(validate_covering(s, m, &bricks), Ok(()));
        Covering { s, m, bricks }
    }

    /// `𝒯_m`: every block is a single brick.
    pub fn trivial(s: u32, m: u32) -> Self {
        Covering::assemble(s, m, (1..=m).map(|b| Brick::unit(s, b)).collect())
    }

    /// `ℰ`: every block cut in half once in each direction, `m·2^s` bricks.
    pub fn maximal_elementary(s: u32, m: u32) -> Self {
        let mut bricks = Vec::with_capacity((m as usize) << s);
        for block in 1..=m {
            for mask in 0u64..(1 << s) {
                let edges = (0..s)
                    .map(|d| DyadicInterval::new(1, (mask >> d) & 1).expect("level 1"))
                    .collect();
                bricks.push(Brick::new(block, edges));
            }
        }
        Covering::assemble(s, m, bricks)
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn bricks(&self) -> &[Brick] {
        &self.bricks
    }

    pub fn len(&self) -> usize {
        self.bricks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bricks.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.bricks.len() == self.m as usize
    }

    pub fn is_labeled(&self) -> bool {
        self.bricks.first().is_some_and(|b| b.label.is_some())
    }

    pub fn block(&self, block: u32) -> impl Iterator<Item = &Brick> + '_ {
        self.bricks.iter().filter(move |b| b.block == block)
    }

    pub fn by_label(&self, label: u32) -> Option<&Brick> {
        self.bricks.iter().find(|b| b.label == Some(label))
    }

    /// Same regions, labels removed.
    pub fn unlabeled(&self) -> Covering {
        Covering::assemble(self.s, self.m, self.bricks.iter().map(Brick::unlabeled).collect())
    }

    /// Labels `1..=n` assigned in canonical brick order.
    pub fn labeled_in_order(&self) -> Covering {
        let bricks = self
            .bricks
            .iter()
            .enumerate()
            .map(|(i, b)| b.unlabeled().with_label(i as u32 + 1))
            .collect();
        Covering { s: self.s, m: self.m, bricks }
    }

    /// The brick containing `b`, if any.
    pub fn container_of(&self, b: &Brick) -> Option<&Brick> {
        self.bricks.iter().find(|c| c.contains(b))
    }

    fn check_compatible(&self, other: &Covering) -> Result<(), DyadicError> {
        if self.s != other.s || self.m != other.m {
            return Err(DyadicError::SpaceMismatch {
                left: (self.s, self.m),
                right: (other.s, other.m),
            });
        }
        Ok(())
    }

    /// Whether every brick of `self` lies inside a brick of `other`.
    pub fn refines(&self, other: &Covering) -> Result<bool, DyadicError> {
        self.check_compatible(other)?;
        Ok(self.bricks.iter().all(|b| other.container_of(b).is_some()))
    }

    /// Coarsest common refinement: all nonempty pairwise intersections.
    pub fn join(&self, other: &Covering) -> Result<Covering, DyadicError> {
        self.check_compatible(other)?;
        let mut bricks = Vec::new();
        for a in &self.bricks {
            for b in other.block(a.block) {
                if let Some(c) = a.intersection(b) {
                    bricks.push(c);
                }
            }
        }
        Ok(Covering::assemble(self.s, self.m, bricks))
    }

    /// Finest common coarsening.
    ///
    /// Per block, `self`-bricks are grouped by overlap with `other`-bricks;
    /// each group is then widened to its bounding brick, absorbing whatever
    /// that brick touches, until every group fills its bounding brick.
    pub fn meet(&self, other: &Covering) -> Result<Covering, DyadicError> {
        self.check_compatible(other)?;
        let mut out = Vec::new();
        for block in 1..=self.m {
            let us: Vec<&Brick> = self.block(block).collect();
            let vs: Vec<&Brick> = other.block(block).collect();
            let mut groups = UnionFind::new(us.len());
            for v in &vs {
                let hits: Vec<usize> = (0..us.len()).filter(|&i| us[i].intersects(v)).collect();
                for w in hits.windows(2) {
                    groups.union(w[0], w[1]);
                }
            }
            loop {
                let mut changed = false;
                for members in groups.classes() {
                    let bound = bounding_brick(members.iter().map(|&i| us[i]))?;
                    for (j, u) in us.iter().enumerate() {
                        if bound.intersects(u) && groups.union(members[0], j) {
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            for members in groups.classes() {
                out.push(bounding_brick(members.iter().map(|&i| us[i]))?);
            }
        }
        Ok(Covering::assemble(self.s, self.m, out))
    }

    pub fn classify(&self) -> Classification {
        let by_edges = self.bricks.iter().all(Brick::is_elementary);
        let by_refinement = Covering::maximal_elementary(self.s, self.m)
            .refines(self)
            .expect("same space");
        debug_assert_eq!(by_edges, by_refinement);
        Classification {
            elementary: by_refinement,
            very_elementary: self.bricks.iter().all(Brick::is_very_elementary),
            volumes: self.bricks.iter().map(Brick::volume).collect(),
        }
    }

    pub fn is_elementary(&self) -> bool {
        self.bricks.iter().all(Brick::is_elementary)
    }

    pub fn is_very_elementary(&self) -> bool {
        self.bricks.iter().all(Brick::is_very_elementary)
    }

    /// Total volume deficit per block, for diagnostics.
    pub fn block_volume(&self, block: u32) -> BigRational {
        self.block(block).map(Brick::volume).fold(BigRational::zero(), |a, b| a + b)
    }

    /// Replaces each brick of `self` that lies inside a brick `D` of
    /// `coarse` by its position relative to `D`. Used to read off the
    /// sub-coverings of a splitting.
    pub fn relative_to(&self, coarse: &Covering) -> Result<Vec<(Brick, Vec<Brick>)>, DyadicError> {
        if !self.refines(coarse)? {
            return Err(DyadicError::NotContained);
        }
        coarse
            .bricks
            .iter()
            .map(|d| {
                let inner = self
                    .block(d.block)
                    .filter(|b| d.contains(b))
                    .map(|b| {
                        let mut r = d.relative(b, 1)?;
                        r.label = b.label;
                        Ok(r)
                    })
                    .collect::<Result<Vec<_>, DyadicError>>()?;
                Ok((d.clone(), inner))
            })
            .collect()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    pub(crate) fn classes(&mut self) -> Vec<Vec<usize>> {
        let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.parent.len() {
            let r = self.find(i);
            map.entry(r).or_default().push(i);
        }
        map.into_values().collect()
    }
}
