use std::collections::HashMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{enumerate_posets, Merging, MergingPoset, SteinError};
use crate::complexes::{order_complex, FinitePoset};
use crate::groupsv::{DyadicMap, PVertex};
use crate::guard::Guards;
use crate::matching::{make_skn, matching_complex, Edge};

/// Outcome of comparing `VEₙ` with the face poset of `M°(sKₙ)`.
#[derive(Clone, Debug, Serialize)]
pub struct VeIsoReport {
    pub s: u32,
    pub n: u32,
    pub elements: usize,
    pub simplices: usize,
    /// Single-pair mergings, and the `s·n·(n−1)` oriented colored edges.
    pub single_pair: usize,
    pub oriented_edges: usize,
    pub bijective: bool,
    /// `a ≤ b ⇔ img(a) ⊇ img(b)` on all pairs.
    pub order_isomorphic: bool,
    /// The order complex of `VEₙ`, relabeled, is the barycentric
    /// subdivision of `M°(sKₙ)`.
    pub realization_matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl VeIsoReport {
    pub fn pass(&self) -> bool {
        self.bijective && self.order_isomorphic && self.realization_matches && self.single_pair == self.oriented_edges
    }
}

/// The image of a very elementary merging: its oriented colored edges,
/// as sorted edge ids of the oriented `sKₙ`.
pub fn ve_image(m: &Merging, ids: &HashMap<Edge, u32>) -> Result<Vec<u32>, SteinError> {
    let edges = m.ve_edges().ok_or(SteinError::NotVeryElementary)?;
    let mut out: Vec<u32> =
        edges.iter().map(|e| ids.get(e).copied().ok_or(SteinError::Internal("edge outside sKn"))).collect::<Result<_, _>>()?;
    out.sort_unstable();
    Ok(out)
}

pub fn ve_iso(s: u32, n: u32, guards: &Guards) -> Result<VeIsoReport, SteinError> {
    let ve = enumerate_posets(s, n, true, guards)?;
    let (g, m) = matching_complex(&make_skn(s, n)?, true, None, guards.max_simplices)?;
    let ids: HashMap<Edge, u32> = g.edges.iter().enumerate().map(|(i, e)| (*e, i as u32)).collect();
    let images: Vec<Vec<u32>> = ve.elements.iter().map(|a| ve_image(a, &ids)).collect::<Result<_, _>>()?;
    let simplices: Vec<Vec<u32>> = m.all_simplices().cloned().collect();
    let position: HashMap<&Vec<u32>, u32> = simplices.iter().enumerate().map(|(i, s)| (s, i as u32)).collect();

    let mut report = VeIsoReport {
        s,
        n,
        elements: ve.len(),
        simplices: simplices.len(),
        single_pair: images.iter().filter(|i| i.len() == 1).count(),
        oriented_edges: g.edges.len(),
        bijective: false,
        order_isomorphic: false,
        realization_matches: false,
        failure: None,
    };

    let mut hit = vec![false; simplices.len()];
    let mut relabel = Vec::with_capacity(images.len());
    for (a, img) in images.iter().enumerate() {
        match position.get(img) {
            Some(&p) if !hit[p as usize] => {
                hit[p as usize] = true;
                relabel.push(p);
            }
            Some(_) => {
                report.failure = Some(format!("element {a} shares its image"));
                return Ok(report);
            }
            None => {
                report.failure = Some(format!("element {a} maps outside the matching complex"));
                return Ok(report);
            }
        }
    }
    report.bijective = hit.iter().all(|&h| h);
    if !report.bijective {
        report.failure = Some("some matching has no preimage".into());
        return Ok(report);
    }

    report.order_isomorphic = true;
    'pairs: for a in 0..ve.len() {
        for b in 0..ve.len() {
            let contains = images[b].iter().all(|e| images[a].binary_search(e).is_ok());
            if ve.poset.le(a as u32, b as u32) != contains {
                report.order_isomorphic = false;
                report.failure = Some(format!("order differs on elements {a}, {b}"));
                break 'pairs;
            }
        }
    }

    let faces = face_poset(&simplices, &position);
    let subdivision = order_complex(&faces, None, guards.max_simplices)?;
    let ours = order_complex(&ve.poset, None, guards.max_simplices)?.relabel(|v| relabel[v as usize]);
    report.realization_matches = ours == subdivision;
    if !report.realization_matches && report.failure.is_none() {
        report.failure = Some("order complex is not the barycentric subdivision".into());
    }
    Ok(report)
}

/// Nonempty simplices ordered by inclusion.
fn face_poset(simplices: &[Vec<u32>], position: &HashMap<&Vec<u32>, u32>) -> FinitePoset {
    let mut up = vec![Vec::new(); simplices.len()];
    for (i, sigma) in simplices.iter().enumerate() {
        let k = sigma.len();
        for mask in 1..(1u32 << k) - 1 {
            let face: Vec<u32> = (0..k).filter(|&j| mask >> j & 1 == 1).map(|j| sigma[j]).collect();
            up[position[&face] as usize].push(i as u32);
        }
    }
    FinitePoset::from_closed_upsets(up)
}

/// Outcome of realizing `L(x)` inside `P₁` through mergings applied to `x`.
#[derive(Clone, Debug, Serialize)]
pub struct DescLinkReport {
    pub t: u32,
    pub elements: usize,
    /// Every `y_u` is an elementary strict merging of `x`.
    pub below_x: bool,
    pub injective: bool,
    /// `u ≤ v ⇔ y_u ≤ y_v` on the pairs checked.
    pub order_isomorphic: bool,
    pub pairs_checked: usize,
    /// Whether incomparable pairs were sampled rather than exhausted.
    pub sampled: bool,
    #[serde(skip)]
    pub vertices: Vec<PVertex>,
    #[serde(skip)]
    pub poset: FinitePoset,
}

impl DescLinkReport {
    pub fn pass(&self) -> bool {
        self.below_x && self.injective && self.order_isomorphic
    }
}

/// The map `I^s(n) → I^s(b)` merging the blocks of `x` as `u` prescribes.
pub fn merging_map(u: &Merging) -> Result<DyadicMap, SteinError> {
    let s = u.s();
    let mut pieces = Vec::with_capacity(u.n() as usize);
    for (j, part) in u.parts().iter().enumerate() {
        for brick in part.bricks() {
            let label = brick.label.ok_or(SteinError::Internal("unlabeled brick"))?;
            let mut target = brick.unlabeled();
            target.block = j as u32 + 1;
            pieces.push((crate::dyadic::Brick::unit(s, label), target));
        }
    }
    Ok(DyadicMap::from_pieces(s, u.n(), u.b(), pieces)?)
}

/// Incomparable pairs sampled per element once `t(x)` exceeds this.
const EXHAUSTIVE_T: u32 = 3;
const SAMPLES_PER_ELEMENT: usize = 8;

/// Builds `{ m_u ∘ x : u ∈ Eₙ }` for `n = t(x)` and checks it reproduces
/// `Eₙ` as a subposet of `P₁`. Comparable pairs are always all checked;
/// for `t(x) > 3` incomparable pairs are sampled with `seed`.
pub fn desc_link_of_vertex(x: &PVertex, guards: &Guards, seed: u64) -> Result<DescLinkReport, SteinError> {
    let t = x.t();
    let e: MergingPoset = enumerate_posets(x.s(), t, false, guards)?;
    let mut vertices = Vec::with_capacity(e.len());
    for u in &e.elements {
        vertices.push(PVertex::canonicalize(&DyadicMap::compose(&merging_map(u)?, x.map())?)?);
    }
    let below_x = vertices.iter().all(|y| y.le(x).is_some_and(|c| c.is_strict() && c.is_elementary()));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut injective = true;
    let mut order_isomorphic = true;
    let mut pairs_checked = 0usize;
    let sampled = t > EXHAUSTIVE_T;
    for a in 0..e.len() {
        let others: Vec<usize> = if sampled {
            let incomparable: Vec<usize> =
                (0..e.len()).filter(|&b| b != a && !e.poset.comparable(a as u32, b as u32)).collect();
            let k = SAMPLES_PER_ELEMENT.min(incomparable.len());
            let mut picks: Vec<usize> = sample(&mut rng, incomparable.len(), k).into_iter().map(|i| incomparable[i]).collect();
            picks.extend(e.poset.above(a as u32).iter().map(|&b| b as usize));
            picks
        } else {
            (0..e.len()).filter(|&b| b != a).collect()
        };
        for b in others {
            pairs_checked += 1;
            let le = vertices[a].le(&vertices[b]).is_some();
            if le != e.poset.lt(a as u32, b as u32) {
                order_isomorphic = false;
            }
            if le && vertices[b].le(&vertices[a]).is_some() {
                injective = false;
            }
        }
    }
    Ok(DescLinkReport {
        t,
        elements: e.len(),
        below_x,
        injective,
        order_isomorphic,
        pairs_checked,
        sampled,
        vertices,
        poset: e.poset,
    })
}
