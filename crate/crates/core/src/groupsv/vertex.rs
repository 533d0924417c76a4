use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{DyadicMap, MapError};
use crate::dyadic::{enumerate_coarsenings, Brick, Covering, DyadicInterval};

/// A vertex of `P₁`: a dyadic map `I^s(1) → I^s(n)` up to permuting the
/// codomain blocks.
///
/// The stored representative is reduced and has its codomain blocks sorted
/// by a canonical per-block key, so structural equality implies equality
/// of vertices. The converse needs [`PVertex::same_vertex`], since a map may
/// have several reduced presentations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PVertex {
    map: DyadicMap,
}

impl<'de> Deserialize<'de> for PVertex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let map = DyadicMap::deserialize(deserializer)?;
        PVertex::canonicalize(&map).map_err(serde::de::Error::custom)
    }
}

/// Evidence for `x ≤ y`: the splitting `z` with `y = z ∘ x` (up to block
/// order) and the covering of `x`'s codomain it splits along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub splitting: DyadicMap,
    pub covering: Covering,
}

impl Comparison {
    pub fn is_strict(&self) -> bool {
        !self.covering.is_trivial()
    }

    pub fn is_elementary(&self) -> bool {
        self.covering.is_elementary()
    }

    pub fn is_very_elementary(&self) -> bool {
        self.covering.is_very_elementary()
    }
}

type BlockKey = Vec<(Vec<DyadicInterval>, Brick)>;

impl PVertex {
    /// Quotient by the symmetric group on codomain blocks.
    pub fn canonicalize(f: &DyadicMap) -> Result<PVertex, MapError> {
        if f.m() != 1 {
            return Err(MapError::NotLevelOne(f.m()));
        }
        let reduced = f.reduced();
        let keys: Vec<BlockKey> = (1..=reduced.n())
            .map(|block| {
                let mut key: BlockKey = reduced
                    .pieces()
                    .iter()
                    .filter(|(_, c)| c.block == block)
                    .map(|(d, c)| (c.edges.clone(), d.clone()))
                    .collect();
                key.sort();
                key
            })
            .collect();
        let order: Vec<usize> = (0..keys.len()).sorted_by(|&a, &b| keys[a].cmp(&keys[b])).collect();
        let mut perm = vec![0u32; order.len()];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new as u32 + 1;
        }
        Ok(PVertex { map: reduced.permute_codomain(&perm)? })
    }

    /// The vertex of the identity of `sV`.
    pub fn root(s: u32) -> PVertex {
        PVertex { map: DyadicMap::identity(s, 1) }
    }

    pub fn map(&self) -> &DyadicMap {
        &self.map
    }

    pub fn s(&self) -> u32 {
        self.map.s()
    }

    /// Number of codomain blocks.
    pub fn t(&self) -> u32 {
        self.map.n()
    }

    /// Decides `self ≤ other`. Splittings stay splittings after permuting
    /// their target blocks, so no search over block orders is needed.
    pub fn le(&self, other: &PVertex) -> Option<Comparison> {
        if self.s() != other.s() || self.t() > other.t() {
            return None;
        }
        let g = DyadicMap::compose(&other.map, &self.map.inverse()).ok()?;
        let covering = g.splitting_covering()?;
        Some(Comparison { splitting: g, covering })
    }

    pub fn lt(&self, other: &PVertex) -> bool {
        self.t() < other.t() && self.le(other).is_some()
    }

    /// `self ⪯ other`: reachable by an elementary splitting.
    pub fn elem_le(&self, other: &PVertex) -> bool {
        self.le(other).is_some_and(|c| c.is_elementary())
    }

    /// `self ⊑ other`: reachable by a very elementary splitting.
    pub fn velem_le(&self, other: &PVertex) -> bool {
        self.le(other).is_some_and(|c| c.is_very_elementary())
    }

    pub fn same_vertex(&self, other: &PVertex) -> bool {
        self.t() == other.t() && self.le(other).is_some()
    }

    /// `self` split along a covering of its codomain.
    pub fn split(&self, along: &Covering) -> Result<PVertex, MapError> {
        if along.s() != self.s() || along.m() != self.t() {
            return Err(MapError::SpaceMismatch { left: (along.s(), along.m()), right: (self.s(), self.t()) });
        }
        let z = DyadicMap::splitting(&along.unlabeled());
        PVertex::canonicalize(&DyadicMap::compose(&z, &self.map)?)
    }

    /// Right action of `g ∈ sV` by precomposition.
    pub fn act(&self, g: &DyadicMap) -> Result<PVertex, MapError> {
        PVertex::canonicalize(&DyadicMap::compose(&self.map, g)?)
    }

    /// The elementary core of `y` relative to `self`: split along the
    /// finest common coarsening of the witness covering and `ℰ`.
    pub fn elementary_core(&self, y: &PVertex) -> Result<PVertex, MapError> {
        let cmp = self.le(y).ok_or(MapError::NotComparable)?;
        self.split(&core_covering(&cmp.covering)?)
    }

    /// The closed interval `[self, y]`, one vertex per coarsening of the
    /// witness covering, listed with that coarsening.
    pub fn interval(&self, y: &PVertex, max_bricks: usize) -> Result<Vec<(Covering, PVertex)>, MapError> {
        let cmp = self.le(y).ok_or(MapError::NotComparable)?;
        enumerate_coarsenings(&cmp.covering, max_bricks)?
            .into_iter()
            .map(|w| {
                let v = self.split(&w)?;
                Ok((w, v))
            })
            .collect()
    }

    /// `{ f⁻¹ ∘ σ ∘ f : σ ∈ S_n }` for the representative `f`.
    pub fn stabilizer(&self, max_t: u32) -> Result<Vec<DyadicMap>, MapError> {
        if self.t() > max_t {
            return Err(MapError::BoundExceeded { what: "t(x)", value: self.t() as usize, bound: max_t as usize });
        }
        let f = &self.map;
        let finv = f.inverse();
        (1..=self.t())
            .permutations(self.t() as usize)
            .map(|perm| {
                let sigma_f = f.permute_codomain(&perm)?;
                DyadicMap::compose(&finv, &sigma_f)
            })
            .collect()
    }

    /// `g ∈ sV` with `self · g = y`, for vertices of level one.
    pub fn transporter(&self, y: &PVertex) -> Result<DyadicMap, MapError> {
        if self.t() != 1 || y.t() != 1 {
            return Err(MapError::NotLevelOne(self.t().max(y.t())));
        }
        DyadicMap::compose(&self.map.inverse(), &y.map)
    }

    /// A common upper bound: both vertices refine to the splitting of the
    /// identity along the join of their domain coverings.
    pub fn common_upper_bound(&self, y: &PVertex, max_bricks: usize) -> Result<PVertex, MapError> {
        let joint = self.map.domain().join(&y.map.domain())?;
        if joint.len() > max_bricks {
            return Err(MapError::BoundExceeded { what: "upper bound blocks", value: joint.len(), bound: max_bricks });
        }
        PVertex::canonicalize(&DyadicMap::splitting(&joint))
    }
}

/// `ℰ ∧ U`.
pub fn core_covering(u: &Covering) -> Result<Covering, MapError> {
    let u = u.unlabeled();
    Ok(Covering::maximal_elementary(u.s(), u.m()).meet(&u)?)
}
