use std::collections::BTreeSet;

use serde::Serialize;

use super::merging::{split_part, Part};
use super::{Merging, MergingPoset, SteinError};
use crate::complexes::{
    contraction_certificate, homology, join_complex, order_complex, relative_homology, FinitePoset, HomologyGroup,
    SimplicialComplex, Step,
};
use crate::matching::{eta, nu};

/// Order complex of the subposet on `ids`, with vertices named by `ids`.
pub fn sub_order_complex(p: &FinitePoset, ids: &[u32], bound: usize) -> Result<SimplicialComplex, SteinError> {
    let (sub, names) = p.subposet(ids);
    let k = order_complex(&sub, None, bound)?;
    Ok(k.relabel(|v| names[v as usize]))
}

/// The descending link of `u` for the height `h = (c, b)`, split into the
/// part below `u` (same `c`) and the part above `u` (smaller `c`).
#[derive(Clone, Debug)]
pub struct DescendingLink {
    pub down: Vec<u32>,
    pub up: Vec<u32>,
    pub down_complex: SimplicialComplex,
    pub up_complex: SimplicialComplex,
    pub complex: SimplicialComplex,
    /// Every down vertex lies below every up vertex.
    pub cross_comparable: bool,
    /// `complex` equals the join of `down_complex` and `up_complex`.
    pub is_join: bool,
}

pub fn descending_link(e: &MergingPoset, u: u32, bound: usize) -> Result<DescendingLink, SteinError> {
    if u as usize >= e.len() {
        return Err(SteinError::NotInPoset);
    }
    let c = &e.heights[u as usize].c;
    let down: Vec<u32> = e.poset.below(u).iter().copied().filter(|&v| &e.heights[v as usize].c == c).collect();
    let up: Vec<u32> = e.poset.above(u).iter().copied().filter(|&v| &e.heights[v as usize].c < c).collect();
    let both: Vec<u32> = down.iter().chain(&up).copied().collect();
    let complex = sub_order_complex(&e.poset, &both, bound)?;
    let down_complex = sub_order_complex(&e.poset, &down, bound)?;
    let up_complex = sub_order_complex(&e.poset, &up, bound)?;
    let cross_comparable = down.iter().all(|&v| up.iter().all(|&w| e.poset.lt(v, w)));
    let is_join = join_complex(&down_complex, &up_complex)? == complex;
    Ok(DescendingLink { down, up, down_complex, up_complex, complex, cross_comparable, is_join })
}

/// A violation of the height rules along a strict relation `x < y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightRuleViolation {
    pub lower: u32,
    pub upper: u32,
    pub rule: &'static str,
}

/// Along every strict relation `x < y`: `c(x) ≥ c(y)`, `b(x) < b(y)`,
/// `h(x) < h(y) ⇔ c(x) = c(y)` and `h(x) > h(y) ⇔ c(x) > c(y)`.
pub fn height_rules(e: &MergingPoset) -> Result<usize, HeightRuleViolation> {
    let mut checked = 0;
    for x in 0..e.len() as u32 {
        let hx = &e.heights[x as usize];
        for &y in e.poset.above(x) {
            let hy = &e.heights[y as usize];
            let fail = |rule| Err(HeightRuleViolation { lower: x, upper: y, rule });
            if hx.c < hy.c {
                return fail("c(x) >= c(y)");
            }
            if hx.b >= hy.b {
                return fail("b(x) < b(y)");
            }
            if (hx < hy) != (hx.c == hy.c) {
                return fail("h(x) < h(y) iff c(x) = c(y)");
            }
            if (hx > hy) != (hx.c > hy.c) {
                return fail("h(x) > h(y) iff c(x) > c(y)");
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Data of the up-link contraction for a merging with a two-brick block.
#[derive(Clone, Debug, Serialize)]
pub struct TwoBricksCertificate {
    /// Index of the two-brick part `B` within `u`.
    pub block: usize,
    pub up_link: Vec<u32>,
    /// `V ↦ V₀` on the up-link, by element id.
    pub reduced: Vec<u32>,
    /// `Z_B`.
    pub apex: u32,
    pub steps: Vec<Step>,
}

/// `V₀`: `V` with the block `B` of `u` left whole. `B`'s labels either
/// form one part of `V` or two singletons.
fn unsplit(v: &Merging, b: &Part) -> Merging {
    let keep: Vec<Part> = v.parts().iter().filter(|p| !b.labels().contains(&p.labels()[0])).cloned().collect();
    let mut parts = keep;
    parts.push(b.clone());
    Merging::from_parts(v.s(), v.n(), parts)
}

/// Certifies that the up-link of `u` is contractible when `u` has a block
/// with exactly two bricks, via `V ≥ V₀ ≤ Z_B`.
pub fn two_bricks_certificate(e: &MergingPoset, u: u32) -> Result<TwoBricksCertificate, SteinError> {
    let um = e.get(u);
    let block = um.parts().iter().position(|p| p.len() == 2).ok_or(SteinError::NoTwoBrickBlock)?;
    let b = um.parts()[block].clone();
    let c = &e.heights[u as usize].c;
    let up_link: Vec<u32> = e.poset.above(u).iter().copied().filter(|&v| &e.heights[v as usize].c < c).collect();
    if up_link.is_empty() {
        return Err(SteinError::EmptyUpLink);
    }
    // Z_B: every other part split into singletons
    let mut z_parts: Vec<Part> = Vec::new();
    for (i, p) in um.parts().iter().enumerate() {
        if i == block {
            z_parts.push(p.clone());
        } else {
            z_parts.extend(split_part(p, &p.shape(um.s())));
        }
    }
    let z = Merging::from_parts(um.s(), um.n(), z_parts);
    let apex = e.id(&z).ok_or(SteinError::Internal("Z_B is not a merging"))?;
    let position = |id: u32| up_link.binary_search(&id).map_err(|_| SteinError::LeavesUpLink(id));
    let apex_local = position(apex)? as u32;
    let mut reduced = Vec::with_capacity(up_link.len());
    let mut map = Vec::with_capacity(up_link.len());
    for &v in &up_link {
        let v0 = unsplit(e.get(v), &b);
        let id = e.id(&v0).ok_or(SteinError::Internal("V0 is not a merging"))?;
        map.push(position(id)? as u32);
        reduced.push(id);
    }
    let (sub, _) = e.poset.subposet(&up_link);
    let steps = contraction_certificate(&sub, &[map, vec![apex_local; up_link.len()]], apex_local)?;
    Ok(TwoBricksCertificate { block, up_link, reduced, apex, steps })
}

/// Outcome of the connectivity bound for a merging without two-brick
/// blocks.
#[derive(Clone, Debug, Serialize)]
pub struct NoTwoBricksCheck {
    pub big: u32,
    pub small: u32,
    /// `k_b + ν(k_s) − 1`.
    pub bound: i64,
    pub brick_count_ok: bool,
    pub connected_through_bound: bool,
    /// `η(n) − 2`, the connectivity the lemma itself asserts.
    pub lemma_bound: i64,
    pub lemma_holds: bool,
    pub down_link_matches_ve: bool,
}

/// Checks `dlk_h(u)` is homologically `(η(n) − 2)`-connected. Also records
/// the join bound `k_b + ν(k_s) − 1` and the brick count `n ≤ 2^s k_b + k_s`;
/// the down-link size is compared against `VE_{k_s}`.
///
/// The middle step can fail while the conclusion holds: a single big block
/// whose only elementary splitting is into singletons has an empty up-link,
/// since the all-singleton merging is not in `Eₙ`. This first happens for
/// `s = 3` (a pinwheel of five bricks), where `η(n) − 2 ≤ −2` anyway.
pub fn no_two_bricks_check(
    e: &MergingPoset,
    u: u32,
    ve_sizes: &dyn Fn(u32) -> usize,
    bound: usize,
) -> Result<NoTwoBricksCheck, SteinError> {
    let um = e.get(u);
    if um.parts().iter().any(|p| p.len() == 2) {
        return Err(SteinError::HasTwoBrickBlock);
    }
    let big = um.parts().iter().filter(|p| p.len() > 2).count() as u32;
    let small = um.parts().iter().filter(|p| p.len() == 1).count() as u32;
    let k = big as i64 + nu(small as i64) - 1;
    let dl = descending_link(e, u, bound)?;
    let h = homology(&dl.complex, true)?;
    let connected = k < -1 || h.vanishes_through(k as isize)?;
    let lemma_bound = eta(um.n() as i64, um.s()) - 2;
    let lemma_holds = lemma_bound < -1 || h.vanishes_through(lemma_bound as isize)?;
    Ok(NoTwoBricksCheck {
        big,
        small,
        bound: k,
        brick_count_ok: um.n() as u64 <= ((big as u64) << um.s()) + small as u64,
        connected_through_bound: connected,
        lemma_bound,
        lemma_holds,
        down_link_matches_ve: dl.down.len() == ve_sizes(small),
    })
}

/// One height level of the Morse cross-check.
#[derive(Clone, Debug, Serialize)]
pub struct MorseLevel {
    pub level: usize,
    pub vertices: usize,
    /// Minimum over the level of the homological connectivity of the
    /// descending links; `None` when all are acyclic.
    pub link_connectivity: Option<isize>,
    /// The `k` tested: links `(k−1)`-connected must force relative
    /// homology to vanish through `k`.
    pub k: Option<isize>,
    pub relative: Vec<HomologyGroup>,
    pub implication_holds: bool,
    /// `H_j(X^≤, X^<) ≅ ⨁ H̃_{j−1}(dlk)` holds group by group.
    pub decomposition_holds: bool,
}

/// Cross-checks the Morse lemma on a finite poset with a height function:
/// at each level, if every descending link is `(k−1)`-connected then the
/// pair (sublevel, strict sublevel) has vanishing homology through `k`.
///
/// With `k = None`, `k` is taken as large as the links allow.
pub fn morse_pair_check<H: Ord + Clone>(
    p: &FinitePoset,
    heights: &[H],
    k: Option<isize>,
    bound: usize,
) -> Result<Vec<MorseLevel>, SteinError> {
    for a in 0..p.len() as u32 {
        for &b in p.above(a) {
            if heights[a as usize] == heights[b as usize] {
                return Err(SteinError::HeightTie(a, b));
            }
        }
    }
    let full = order_complex(p, None, bound)?;
    let levels: Vec<H> = heights.iter().cloned().collect::<BTreeSet<H>>().into_iter().collect();
    let mut out = Vec::with_capacity(levels.len());
    for (li, t) in levels.iter().enumerate() {
        let le: BTreeSet<u32> = (0..p.len() as u32).filter(|&v| &heights[v as usize] <= t).collect();
        let lt: BTreeSet<u32> = le.iter().copied().filter(|&v| &heights[v as usize] < t).collect();
        let at: Vec<u32> = le.iter().copied().filter(|&v| &heights[v as usize] == t).collect();
        let k_le = full.full_subcomplex(&le);
        let k_lt = full.full_subcomplex(&lt);
        let rel = relative_homology(&k_le, &k_lt)?;
        let mut link_conn: Option<isize> = None;
        let mut link_groups: Vec<HomologyGroup> = Vec::new();
        for &x in &at {
            let nbrs: Vec<u32> = p
                .below(x)
                .iter()
                .chain(p.above(x))
                .copied()
                .filter(|&v| heights[v as usize] < heights[x as usize])
                .collect();
            let dlk = sub_order_complex(p, &nbrs, bound)?;
            let h = homology(&dlk, true)?;
            if let Some(c) = h.connectivity() {
                link_conn = Some(link_conn.map_or(c, |m: isize| m.min(c)));
            }
            link_groups.extend(h.groups);
        }
        let k_tested = match k {
            Some(k) => link_conn.map_or(true, |c| c >= k - 1).then_some(k),
            None => link_conn.map(|c| c + 1).or(Some(rel.reliable_through)),
        };
        let implication_holds = match k_tested {
            Some(k) => rel.groups.iter().filter(|g| g.dim <= k).all(HomologyGroup::is_zero),
            None => true,
        };
        let decomposition_holds = rel.groups.iter().all(|g| {
            let shifted: Vec<&HomologyGroup> = link_groups.iter().filter(|h| h.dim == g.dim - 1).collect();
            let betti: usize = shifted.iter().map(|h| h.betti).sum();
            let mut torsion: Vec<_> = shifted.iter().flat_map(|h| h.torsion.iter().cloned()).collect();
            torsion.sort();
            let mut mine = g.torsion.clone();
            mine.sort();
            betti == g.betti && torsion == mine
        });
        out.push(MorseLevel {
            level: li,
            vertices: at.len(),
            link_connectivity: link_conn,
            k: k_tested,
            relative: rel.groups,
            implication_holds,
            decomposition_holds,
        });
    }
    Ok(out)
}
