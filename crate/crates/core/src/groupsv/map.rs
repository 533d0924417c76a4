use std::collections::HashMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::MapError;
use crate::dyadic::{Brick, Covering, DyadicInterval};

/// A dyadic map `I^s(m) → I^s(n)` presented by a compatible pair of
/// coverings: each domain brick is carried onto its paired codomain brick
/// by a product of increasing affine maps.
///
/// The presentation is not unique; use [`DyadicMap::equals`] to compare
/// maps. Pieces are stored without labels, sorted by domain brick.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicMap {
    s: u32,
    m: u32,
    n: u32,
    pieces: Vec<(Brick, Brick)>,
}

/// JSON form: two labeled coverings and the label pairing.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapRecord {
    pub domain: Covering,
    pub codomain: Covering,
    pub pairs: Vec<(u32, u32)>,
}

/// How a map sits relative to splittings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowKind {
    /// Present iff the map is a splitting; bricks labeled by target block.
    pub splitting: Option<Covering>,
    /// Present iff the map is a merging; the covering of the codomain it
    /// merges along, bricks labeled by source block.
    pub merging: Option<Covering>,
    pub elementary: bool,
    pub very_elementary: bool,
}

impl ArrowKind {
    pub fn is_splitting(&self) -> bool {
        self.splitting.is_some()
    }

    pub fn is_merging(&self) -> bool {
        self.merging.is_some()
    }
}

impl DyadicMap {
    /// Builds a map from pieces, checking that both sides are coverings.
    pub fn from_pieces(s: u32, m: u32, n: u32, pieces: Vec<(Brick, Brick)>) -> Result<Self, MapError> {
        let dom: Vec<Brick> = pieces.iter().map(|(d, _)| d.unlabeled()).collect();
        let cod: Vec<Brick> = pieces.iter().map(|(_, c)| c.unlabeled()).collect();
        Covering::new(s, m, dom)?;
        Covering::new(s, n, cod)?;
        Ok(Self::assemble(s, m, n, pieces))
    }

    pub(crate) fn assemble(s: u32, m: u32, n: u32, pieces: Vec<(Brick, Brick)>) -> Self {
        let mut pieces: Vec<(Brick, Brick)> =
            pieces.into_iter().map(|(d, c)| (d.unlabeled(), c.unlabeled())).collect();
        pieces.sort();
        DyadicMap { s, m, n, pieces }
    }

    /// The map induced by a bijection of labeled coverings; `pairs` lists
    /// `(domain label, codomain label)`.
    pub fn from_labels(domain: &Covering, codomain: &Covering, pairs: &[(u32, u32)]) -> Result<Self, MapError> {
        if domain.s() != codomain.s() {
            return Err(MapError::DimensionMismatch);
        }
        if domain.len() != codomain.len() || pairs.len() != domain.len() {
            return Err(MapError::NotBijection);
        }
        let mut used_d = vec![false; domain.len() + 1];
        let mut used_c = vec![false; codomain.len() + 1];
        let mut pieces = Vec::with_capacity(pairs.len());
        for &(dl, cl) in pairs {
            let d = domain.by_label(dl).ok_or(MapError::UnknownLabel(dl))?;
            let c = codomain.by_label(cl).ok_or(MapError::UnknownLabel(cl))?;
            if std::mem::replace(&mut used_d[dl as usize], true) || std::mem::replace(&mut used_c[cl as usize], true) {
                return Err(MapError::NotBijection);
            }
            pieces.push((d.clone(), c.clone()));
        }
        Ok(Self::assemble(domain.s(), domain.m(), codomain.m(), pieces))
    }

    pub fn identity(s: u32, m: u32) -> Self {
        let pieces = (1..=m).map(|b| (Brick::unit(s, b), Brick::unit(s, b))).collect();
        Self::assemble(s, m, m, pieces)
    }

    /// The splitting along `u`: each brick of `u` is stretched onto its own
    /// block. Bricks labeled `j` go to block `j`; unlabeled coverings use
    /// canonical brick order.
    pub fn splitting(u: &Covering) -> Self {
        let pieces = u
            .bricks()
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let target = b.label.unwrap_or(i as u32 + 1);
                (b.unlabeled(), Brick::unit(u.s(), target))
            })
            .collect();
        Self::assemble(u.s(), u.m(), u.len() as u32, pieces)
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Number of blocks in the domain.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of blocks in the codomain.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn pieces(&self) -> &[(Brick, Brick)] {
        &self.pieces
    }

    pub fn domain(&self) -> Covering {
        Covering::assemble(self.s, self.m, self.pieces.iter().map(|(d, _)| d.clone()).collect())
    }

    pub fn codomain(&self) -> Covering {
        Covering::assemble(self.s, self.n, self.pieces.iter().map(|(_, c)| c.clone()).collect())
    }

    pub fn to_record(&self) -> MapRecord {
        let domain = self.domain().labeled_in_order();
        let codomain = self.codomain().labeled_in_order();
        let label_of = |cov: &Covering, b: &Brick| {
            cov.bricks().iter().find(|x| x.same_region(b)).and_then(|x| x.label).expect("brick present")
        };
        let pairs = self.pieces.iter().map(|(d, c)| (label_of(&domain, d), label_of(&codomain, c))).collect();
        MapRecord { domain, codomain, pairs }
    }

    pub fn from_record(rec: &MapRecord) -> Result<Self, MapError> {
        Self::from_labels(&rec.domain, &rec.codomain, &rec.pairs)
    }

    /// Image of a point `(block, coords)` with coordinates in `[0,1)`.
    pub fn evaluate(&self, block: u32, coords: &[BigRational]) -> Result<(u32, Vec<BigRational>), MapError> {
        let (d, c) = self
            .pieces
            .iter()
            .find(|(d, _)| d.contains_point(block, coords))
            .ok_or(MapError::PointOutside)?;
        let image = d
            .edges
            .iter()
            .zip(&c.edges)
            .zip(coords)
            .map(|((from, to), x)| DyadicInterval::transport_point(from, to, x))
            .collect();
        Ok((c.block, image))
    }

    pub fn inverse(&self) -> Self {
        let pieces = self.pieces.iter().map(|(d, c)| (c.clone(), d.clone())).collect();
        Self::assemble(self.s, self.n, self.m, pieces)
    }

    /// `g ∘ f`: pieces of `f` are cut along the domain bricks of `g`.
    pub fn compose(g: &DyadicMap, f: &DyadicMap) -> Result<DyadicMap, MapError> {
        if g.s != f.s || g.m != f.n {
            return Err(MapError::SpaceMismatch { left: (g.s, g.m), right: (f.s, f.n) });
        }
        let mut by_block: HashMap<u32, Vec<&(Brick, Brick)>> = HashMap::new();
        for p in &g.pieces {
            by_block.entry(p.0.block).or_default().push(p);
        }
        let mut pieces = Vec::new();
        for (fd, fc) in &f.pieces {
            for (gd, gc) in by_block.get(&fc.block).into_iter().flatten() {
                if let Some(common) = fc.intersection(gd) {
                    let pre = fc.transport(fd, &common)?;
                    let img = gd.transport(gc, &common)?;
                    pieces.push((pre, img));
                }
            }
        }
        Ok(Self::assemble(f.s, f.m, g.n, pieces).reduced())
    }

    /// Whether two presentations induce the same map, decided on the
    /// common refinement of their domain coverings.
    pub fn equals(&self, other: &DyadicMap) -> Result<bool, MapError> {
        if self.s != other.s || self.m != other.m || self.n != other.n {
            return Err(MapError::SpaceMismatch { left: (self.s, self.m), right: (other.s, other.m) });
        }
        for (d1, c1) in &self.pieces {
            for (d2, c2) in other.pieces.iter().filter(|(d, _)| d.block == d1.block) {
                if let Some(common) = d1.intersection(d2) {
                    if d1.transport(c1, &common)? != d2.transport(c2, &common)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Relabels codomain blocks: old block `j` becomes `perm[j-1]`.
    pub fn permute_codomain(&self, perm: &[u32]) -> Result<DyadicMap, MapError> {
        let mut seen = vec![false; perm.len() + 1];
        if perm.len() != self.n as usize
            || perm.iter().any(|&p| p == 0 || p as usize > perm.len() || std::mem::replace(&mut seen[p as usize], true))
        {
            return Err(MapError::NotBijection);
        }
        let pieces = self
            .pieces
            .iter()
            .map(|(d, c)| {
                let mut c = c.clone();
                c.block = perm[c.block as usize - 1];
                (d.clone(), c)
            })
            .collect();
        Ok(Self::assemble(self.s, self.m, self.n, pieces))
    }

    /// Greedily fuses pairs of pieces whose domain bricks are the two
    /// halves of a brick and whose codomain bricks are the matching halves
    /// in the same direction. Produces a compact, not necessarily minimal,
    /// presentation of the same map.
    pub fn reduced(&self) -> DyadicMap {
        let mut pieces = self.pieces.clone();
        loop {
            let mut alive = vec![true; pieces.len()];
            let mut fused = Vec::new();
            let mut index: HashMap<(Brick, usize), usize> = HashMap::new();
            for i in 0..pieces.len() {
                for dim in 0..self.s as usize {
                    let Some(parent) = pieces[i].0.edges[dim].parent() else { continue };
                    let mut key = pieces[i].0.clone();
                    key.edges[dim] = parent;
                    match index.get(&(key.clone(), dim)) {
                        Some(&j) if alive[j] && alive[i] => {
                            if let Some(p) = fuse(&pieces[j], &pieces[i], dim) {
                                alive[i] = false;
                                alive[j] = false;
                                fused.push(p);
                            }
                        }
                        Some(_) => {}
                        None => {
                            index.insert((key, dim), i);
                        }
                    }
                }
            }
            if fused.is_empty() {
                break;
            }
            pieces = pieces.into_iter().zip(alive).filter_map(|(p, a)| a.then_some(p)).chain(fused).collect();
        }
        Self::assemble(self.s, self.m, self.n, pieces)
    }

    /// The covering of the domain along which this map splits, if it is a
    /// splitting: the preimage of every codomain block must be a single
    /// brick carried affinely onto the block.
    pub fn splitting_covering(&self) -> Option<Covering> {
        let mut bricks = Vec::with_capacity(self.n as usize);
        for block in 1..=self.n {
            let members: Vec<&(Brick, Brick)> = self.pieces.iter().filter(|(_, c)| c.block == block).collect();
            let first = members.first()?;
            let mut bound = first.0.clone();
            for (d, _) in &members[1..] {
                if d.block != bound.block {
                    return None;
                }
                for (a, e) in bound.edges.iter_mut().zip(&d.edges) {
                    *a = a.common_ancestor(e);
                }
            }
            let target = Brick::unit(self.s, block);
            for (d, c) in &members {
                if bound.transport(&target, d).ok()? != *c {
                    return None;
                }
            }
            bricks.push(bound.with_label(block));
        }
        Some(Covering::assemble(self.s, self.m, bricks))
    }

    pub fn classify_arrow(&self) -> ArrowKind {
        let splitting = self.splitting_covering();
        let merging = self.inverse().splitting_covering();
        let cover = splitting.as_ref().or(merging.as_ref());
        ArrowKind {
            elementary: cover.is_some_and(Covering::is_elementary),
            very_elementary: cover.is_some_and(Covering::is_very_elementary),
            splitting,
            merging,
        }
    }
}

fn fuse(a: &(Brick, Brick), b: &(Brick, Brick), dim: usize) -> Option<(Brick, Brick)> {
    let (da, ca) = a;
    let (db, cb) = b;
    if da.block != db.block || ca.block != cb.block {
        return None;
    }
    let (dlo, dhi) = halves_order(&da.edges[dim], &db.edges[dim])?;
    let (clo, chi) = halves_order(&ca.edges[dim], &cb.edges[dim])?;
    if dlo != clo || dhi != chi {
        return None;
    }
    let same_rest = (0..da.dim()).filter(|&k| k != dim).all(|k| ca.edges[k] == cb.edges[k] && da.edges[k] == db.edges[k]);
    if !same_rest {
        return None;
    }
    let mut d = da.clone();
    d.edges[dim] = da.edges[dim].parent()?;
    let mut c = ca.clone();
    c.edges[dim] = ca.edges[dim].parent()?;
    Some((d, c))
}

/// `(a is low, b is low)` when `a`, `b` are the two halves of one interval.
fn halves_order(a: &DyadicInterval, b: &DyadicInterval) -> Option<(bool, bool)> {
    if a.level() != b.level() || a == b || a.parent()? != b.parent()? {
        return None;
    }
    Some((a.index() % 2 == 0, b.index() % 2 == 0))
}

impl Serialize for DyadicMap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_record().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DyadicMap {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rec = MapRecord::deserialize(deserializer)?;
        DyadicMap::from_record(&rec).map_err(serde::de::Error::custom)
    }
}
