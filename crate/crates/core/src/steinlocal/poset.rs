use std::collections::HashMap;

use itertools::Itertools;

use super::merging::{split_part, Part};
use super::{Height, Merging, SteinError};
use crate::complexes::FinitePoset;
use crate::dyadic::{enumerate_coarsenings, enumerate_elementary_bounded, Brick};
use crate::guard::Guards;

/// `Eₙ` (or `VEₙ`) with its elements in canonical order and the induced
/// partial order. Element ids index `elements`.
#[derive(Clone, Debug)]
pub struct MergingPoset {
    pub s: u32,
    pub n: u32,
    pub very: bool,
    pub elements: Vec<Merging>,
    pub heights: Vec<Height>,
    pub poset: FinitePoset,
    index: HashMap<Merging, u32>,
}

impl MergingPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn id(&self, m: &Merging) -> Option<u32> {
        self.index.get(m).copied()
    }

    pub fn get(&self, id: u32) -> &Merging {
        &self.elements[id as usize]
    }
}

/// All non-trivial (very) elementary mergings of `n` labeled bricks in
/// `I^s`, ordered by splitting.
pub fn enumerate_posets(s: u32, n: u32, very: bool, guards: &Guards) -> Result<MergingPoset, SteinError> {
    guards.check_mergings(s, n)?;
    let shapes = part_shapes(s, n as usize, very)?;
    let mut elements: Vec<Merging> = Vec::new();
    let labels: Vec<u32> = (1..=n).collect();
    for blocks in set_partitions(&labels) {
        if blocks.iter().all(|b| b.len() == 1) {
            continue;
        }
        let choices: Vec<Vec<Part>> = blocks.iter().map(|b| labeled_parts(&shapes[b.len()], b)).collect();
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        for combo in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
            elements.push(Merging::from_parts(s, n, combo.into_iter().cloned().collect()));
        }
    }
    elements.sort();
    let index: HashMap<Merging, u32> = elements.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
    let mut cache: HashMap<Part, Vec<Vec<Part>>> = HashMap::new();
    let mut up: Vec<Vec<u32>> = Vec::with_capacity(elements.len());
    for m in &elements {
        let per_part: Vec<Vec<Vec<Part>>> = m
            .parts()
            .iter()
            .map(|p| cache.entry(p.clone()).or_insert_with(|| part_splittings(s, p)).clone())
            .collect();
        let mut ups = Vec::new();
        for combo in per_part.iter().map(|c| c.iter()).multi_cartesian_product() {
            let parts: Vec<Part> = combo.into_iter().flatten().cloned().collect();
            if parts.len() == m.parts().len() {
                continue;
            }
            let finer = Merging::from_parts(s, n, parts);
            if finer.is_trivial() {
                continue;
            }
            let id = *index.get(&finer).ok_or(SteinError::Internal("splitting left the poset"))?;
            ups.push(id);
        }
        up.push(ups);
    }
    let heights = elements.iter().map(Merging::height).collect();
    Ok(MergingPoset { s, n, very, elements, heights, poset: FinitePoset::from_closed_upsets(up), index })
}

/// Every way of splitting a part, as the resulting list of parts; the
/// first entry leaves the part whole.
fn part_splittings(s: u32, p: &Part) -> Vec<Vec<Part>> {
    let shape = p.shape(s);
    let mut out: Vec<Vec<Part>> = enumerate_coarsenings(&shape, usize::MAX)
        .expect("part shapes are small")
        .iter()
        .map(|w| split_part(p, w))
        .collect();
    out.sort_by_key(|parts| parts.len());
    out
}

/// Unlabeled elementary tilings of one block indexed by brick count, up to
/// `n` bricks.
fn part_shapes(s: u32, n: usize, very: bool) -> Result<Vec<Vec<Vec<Brick>>>, SteinError> {
    let mut shapes = vec![Vec::new(); n + 1];
    for c in enumerate_elementary_bounded(s, false, None, s.max(1))? {
        if very && !c.is_very_elementary() {
            continue;
        }
        if c.len() <= n {
            shapes[c.len()].push(c.bricks().to_vec());
        }
    }
    Ok(shapes)
}

fn labeled_parts(shapes: &[Vec<Brick>], labels: &[u32]) -> Vec<Part> {
    let mut out = Vec::new();
    for shape in shapes {
        for perm in labels.iter().permutations(labels.len()) {
            let bricks = shape.iter().zip(perm).map(|(b, &l)| b.clone().with_label(l)).collect();
            out.push(Part::assemble(bricks));
        }
    }
    out
}

/// Set partitions of `items`, each block in increasing order.
pub(crate) fn set_partitions(items: &[u32]) -> Vec<Vec<Vec<u32>>> {
    let Some((&first, rest)) = items.split_first() else { return vec![Vec::new()] };
    let mut out = Vec::new();
    for p in set_partitions(rest) {
        let mut alone = vec![vec![first]];
        alone.extend(p.iter().cloned());
        out.push(alone);
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].insert(0, first);
            out.push(q);
        }
    }
    out
}
