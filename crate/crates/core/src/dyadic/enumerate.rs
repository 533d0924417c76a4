use std::collections::BTreeSet;

use itertools::Itertools;
use rand::Rng;

use super::{Brick, Covering, DyadicError, DyadicInterval};

/// Default cap on the size of a covering whose coarsenings are enumerated.
pub const DEFAULT_MAX_COARSENING_BRICKS: usize = 12;

/// Default cap on the dimension for exhaustive elementary enumeration.
pub const DEFAULT_MAX_ENUM_DIM: u32 = 3;

/// Every covering `W` with `u` refining `W`, in canonical order.
///
/// Each brick of `W` is a union of `u`-bricks, so `W` is built block by
/// block: the first unassigned `u`-brick picks the dyadic brick that will
/// contain it, which must be exactly tiled by unassigned `u`-bricks.
pub fn enumerate_coarsenings(u: &Covering, max_bricks: usize) -> Result<Vec<Covering>, DyadicError> {
    if u.len() > max_bricks {
        return Err(DyadicError::BoundExceeded { what: "coarsening input bricks", value: u.len(), bound: max_bricks });
    }
    let u = u.unlabeled();
    let mut per_block: Vec<Vec<Vec<Brick>>> = Vec::new();
    for block in 1..=u.m() {
        let bricks: Vec<Brick> = u.block(block).cloned().collect();
        let mut out = Vec::new();
        let mut assigned = vec![false; bricks.len()];
        coarsen_block(&bricks, &mut assigned, &mut Vec::new(), &mut out);
        per_block.push(out);
    }
    let mut result: Vec<Covering> = per_block
        .into_iter()
        .multi_cartesian_product()
        .map(|choice| Covering::assemble(u.s(), u.m(), choice.into_iter().flatten().collect()))
        .collect();
    result.sort_by(|a, b| a.bricks().cmp(b.bricks()));
    Ok(result)
}

fn coarsen_block(bricks: &[Brick], assigned: &mut [bool], current: &mut Vec<Brick>, out: &mut Vec<Vec<Brick>>) {
    let Some(first) = assigned.iter().position(|a| !a) else {
        out.push(current.clone());
        return;
    };
    let seed = &bricks[first];
    let ancestors: Vec<Vec<DyadicInterval>> = seed
        .edges
        .iter()
        .map(|e| (0..=e.level()).map(|l| e.ancestor(l)).collect())
        .collect();
    for edges in ancestors.into_iter().multi_cartesian_product() {
        let candidate = Brick::new(seed.block, edges);
        let mut members = Vec::new();
        let mut ok = true;
        for (j, b) in bricks.iter().enumerate() {
            if candidate.intersects(b) {
                if assigned[j] || !candidate.contains(b) {
                    ok = false;
                    break;
                }
                members.push(j);
            }
        }
        if !ok {
            continue;
        }
        for &j in &members {
            assigned[j] = true;
        }
        current.push(candidate);
        coarsen_block(bricks, assigned, current, out);
        current.pop();
        for &j in &members {
            assigned[j] = false;
        }
    }
}

/// All elementary coverings of a single block of `I^s`, optionally
/// restricted to `n` bricks and decorated with every labeling by `1..=n`.
pub fn enumerate_elementary(s: u32, labeled: bool, n: Option<usize>) -> Result<Vec<Covering>, DyadicError> {
    enumerate_elementary_bounded(s, labeled, n, DEFAULT_MAX_ENUM_DIM)
}

pub fn enumerate_elementary_bounded(
    s: u32,
    labeled: bool,
    n: Option<usize>,
    max_dim: u32,
) -> Result<Vec<Covering>, DyadicError> {
    if s == 0 {
        return Err(DyadicError::EmptySpace { s, m: 1 });
    }
    if s > max_dim {
        return Err(DyadicError::BoundExceeded { what: "dimension", value: s as usize, bound: max_dim as usize });
    }
    let all = enumerate_coarsenings(&Covering::maximal_elementary(s, 1), usize::MAX)?;
    let shapes = all.into_iter().filter(|c| n.map_or(true, |n| c.len() == n));
    if !labeled {
        return Ok(shapes.collect());
    }
    let mut out = Vec::new();
    for shape in shapes {
        out.extend(labelings(&shape));
    }
    out.sort_by(|a, b| a.bricks().cmp(b.bricks()));
    Ok(out)
}

/// Every assignment of labels `1..=n` to the bricks of `c`.
pub fn labelings(c: &Covering) -> Vec<Covering> {
    let n = c.len();
    (1..=n as u32)
        .permutations(n)
        .map(|perm| {
            let bricks = c.bricks().iter().zip(perm).map(|(b, l)| b.unlabeled().with_label(l)).collect();
            Covering::assemble(c.s(), c.m(), bricks)
        })
        .collect()
}

/// Splits random bricks of `𝒯_m` in random directions until `n` bricks
/// exist. `max_level` caps the depth of any edge.
pub fn random_covering<R: Rng>(rng: &mut R, s: u32, m: u32, n: usize, max_level: u32) -> Covering {
    assert!(n >= m as usize, "need at least one brick per block");
    let mut bricks: Vec<Brick> = Covering::trivial(s, m).bricks().to_vec();
    while bricks.len() < n {
        let i = rng.gen_range(0..bricks.len());
        let d = rng.gen_range(0..s as usize);
        if bricks[i].edges[d].level() >= max_level {
            if bricks.iter().all(|b| b.edges.iter().all(|e| e.level() >= max_level)) {
                break;
            }
            continue;
        }
        let (lo, hi) = bricks[i].halves(d).expect("below max level");
        bricks[i] = lo;
        bricks.push(hi);
    }
    Covering::assemble(s, m, bricks)
}

/// Random coarsening of `u`, obtained by re-merging sibling bricks.
pub fn random_coarsening<R: Rng>(rng: &mut R, u: &Covering, merges: usize) -> Covering {
    let mut bricks: Vec<Brick> = u.unlabeled().bricks().to_vec();
    for _ in 0..merges {
        let mut pairs = Vec::new();
        for i in 0..bricks.len() {
            for j in i + 1..bricks.len() {
                if let Some(p) = sibling_parent(&bricks[i], &bricks[j]) {
                    pairs.push((i, j, p));
                }
            }
        }
        if pairs.is_empty() {
            break;
        }
        let (i, j, p) = pairs.swap_remove(rng.gen_range(0..pairs.len()));
        bricks.swap_remove(j);
        bricks[i] = p;
    }
    Covering::assemble(u.s(), u.m(), bricks)
}

/// The parent brick if `a` and `b` are the two halves of it.
pub fn sibling_parent(a: &Brick, b: &Brick) -> Option<Brick> {
    if a.block != b.block || a.dim() != b.dim() {
        return None;
    }
    let diff: Vec<usize> = (0..a.dim()).filter(|&d| a.edges[d] != b.edges[d]).collect();
    let [d] = diff[..] else { return None };
    let (pa, pb) = (a.edges[d].parent()?, b.edges[d].parent()?);
    if pa != pb || a.edges[d].level() != b.edges[d].level() {
        return None;
    }
    let mut parent = a.unlabeled();
    parent.edges[d] = pa;
    Some(parent)
}

/// Brick-count histogram helper used by listings.
pub fn count_by_size(coverings: &[Covering]) -> BTreeSet<(usize, usize)> {
    let mut counts = std::collections::BTreeMap::new();
    for c in coverings {
        *counts.entry(c.len()).or_insert(0usize) += 1;
    }
    counts.into_iter().collect()
}
