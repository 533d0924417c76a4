use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::SteinError;
use crate::complexes::{contraction_certificate, homology, order_complex, FinitePoset, SimplicialComplex, Step};
use crate::dyadic::Covering;
use crate::groupsv::{core_covering, MapError, PVertex};
use crate::guard::Guards;

/// Which endpoints of `[x, z]` are kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntervalKind {
    Closed,
    Open,
    /// `[x, z)`
    ClosedOpen,
    /// `(x, z]`
    OpenClosed,
}

impl IntervalKind {
    fn keeps_bottom(self) -> bool {
        matches!(self, IntervalKind::Closed | IntervalKind::ClosedOpen)
    }

    fn keeps_top(self) -> bool {
        matches!(self, IntervalKind::Closed | IntervalKind::OpenClosed)
    }
}

/// The closed interval `[x, z]` of `P₁`, one element per coarsening of the
/// witness covering `U` of `x ≤ z`.
///
/// Elements are sorted by brick count, so element 0 is `x`, the last one is
/// `z`, and element ids form a linear extension of the order.
#[derive(Clone, Debug)]
pub struct IntervalComplex {
    pub coverings: Vec<Covering>,
    pub vertices: Vec<PVertex>,
    /// Order on all of `[x, z]`: `i < j` iff `coverings[j]` strictly
    /// refines `coverings[i]`.
    pub poset: FinitePoset,
    /// The kept elements, by id.
    pub kept: Vec<u32>,
    /// Order complex on `kept`, with vertex names the element ids.
    pub complex: SimplicialComplex,
}

impl IntervalComplex {
    pub fn bottom(&self) -> u32 {
        0
    }

    pub fn top(&self) -> u32 {
        self.coverings.len() as u32 - 1
    }
}

pub fn interval_complex(
    x: &PVertex,
    z: &PVertex,
    kind: IntervalKind,
    elementary_only: bool,
    guards: &Guards,
) -> Result<IntervalComplex, SteinError> {
    let mut listed = x.interval(z, guards.max_bricks)?;
    listed.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.bricks().cmp(b.0.bricks())));
    let (coverings, vertices): (Vec<Covering>, Vec<PVertex>) = listed.into_iter().unzip();
    let len = coverings.len();
    let mut up = vec![Vec::new(); len];
    for i in 0..len {
        for j in i + 1..len {
            if coverings[j].len() > coverings[i].len() && coverings[j].refines(&coverings[i])? {
                up[i].push(j as u32);
            }
        }
    }
    let poset = FinitePoset::from_closed_upsets(up);
    let top = len as u32 - 1;
    let kept: Vec<u32> = (0..len as u32)
        .filter(|&v| (v != 0 || kind.keeps_bottom()) && (v != top || kind.keeps_top()))
        .collect();
    let (sub, names) = poset.subposet(&kept);
    let mut complex = order_complex(&sub, None, guards.max_simplices)?.relabel(|v| names[v as usize]);
    if elementary_only {
        let mut keep = Vec::new();
        for sigma in complex.all_simplices() {
            let (lo, hi) = (sigma[0] as usize, sigma[sigma.len() - 1] as usize);
            if step_is_elementary(&coverings[lo], &coverings[hi])? {
                keep.push(sigma.clone());
            }
        }
        complex = SimplicialComplex::from_simplices(keep)?;
    }
    Ok(IntervalComplex { coverings, vertices, poset, kept, complex })
}

/// Whether `fine` splits each brick of `coarse` elementarily.
fn step_is_elementary(coarse: &Covering, fine: &Covering) -> Result<bool, SteinError> {
    Ok(fine.relative_to(coarse)?.iter().all(|(_, inner)| inner.iter().all(|b| b.is_elementary())))
}

/// Outcome of the cube lemma contraction on `(x, z)`.
#[derive(Clone, Debug, Serialize)]
pub struct CubeLemmaReport {
    pub interval_size: usize,
    pub open_size: usize,
    /// `core(w)` lies in `(x, z)` for every `w` there.
    pub cores_inside: bool,
    pub steps: Vec<Step>,
    pub acyclic: bool,
    /// `|[x,z)| ∪ |(x,z]|` equals the suspension of `|(x,z)|` on simplices.
    pub suspension_identity: bool,
    /// Covering order matches the order of `P₁` on all pairs, when the
    /// interval is small enough to compare exhaustively.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_order_agrees: Option<bool>,
}

impl CubeLemmaReport {
    pub fn pass(&self) -> bool {
        self.cores_inside && self.acyclic && self.suspension_identity && self.vertex_order_agrees != Some(false)
    }
}

/// Largest interval whose `P₁` order is cross-checked pair by pair.
const VERTEX_ORDER_LIMIT: usize = 48;

/// For `x < z` with a non-elementary witness: contracts `|(x, z)|` along
/// `w ≥ core(w) ≤ core(z)` and confirms it is acyclic.
pub fn cube_lemma_check(x: &PVertex, z: &PVertex, guards: &Guards) -> Result<CubeLemmaReport, SteinError> {
    let cmp = x.le(z).ok_or(MapError::NotComparable)?;
    if cmp.is_elementary() {
        return Err(SteinError::Precondition("x ≺ z: the witness covering is elementary".into()));
    }
    let closed = interval_complex(x, z, IntervalKind::Closed, false, guards)?;
    let index: HashMap<&Covering, u32> = closed.coverings.iter().enumerate().map(|(i, c)| (c, i as u32)).collect();
    let top = closed.top();
    let open: Vec<u32> = (1..top).collect();
    let (sub, _) = closed.poset.subposet(&open);
    let local = |id: u32| id - 1;

    let mut core_of = Vec::with_capacity(open.len());
    let mut cores_inside = true;
    for &w in &open {
        let c = core_covering(&closed.coverings[w as usize])?;
        let id = *index.get(&c).ok_or(SteinError::Internal("core is not a coarsening of the witness"))?;
        if id == 0 || id == top {
            cores_inside = false;
        }
        core_of.push(id);
    }
    let apex_cov = core_covering(&closed.coverings[top as usize])?;
    let apex = *index.get(&apex_cov).ok_or(SteinError::Internal("core(z) is not a coarsening of the witness"))?;
    if !cores_inside || apex == 0 || apex == top {
        return Ok(CubeLemmaReport {
            interval_size: closed.coverings.len(),
            open_size: open.len(),
            cores_inside: false,
            steps: Vec::new(),
            acyclic: false,
            suspension_identity: false,
            vertex_order_agrees: None,
        });
    }
    let core_map: Vec<u32> = core_of.iter().map(|&c| local(c)).collect();
    let steps = contraction_certificate(&sub, &[core_map, vec![local(apex); open.len()]], local(apex))?;

    let open_complex = interval_complex(x, z, IntervalKind::Open, false, guards)?.complex;
    let acyclic = homology(&open_complex, true)?.is_acyclic();
    let lower = interval_complex(x, z, IntervalKind::ClosedOpen, false, guards)?.complex;
    let upper = interval_complex(x, z, IntervalKind::OpenClosed, false, guards)?.complex;
    let suspension_identity = lower.union(&upper) == suspension(&open_complex, 0, top);

    let vertex_order_agrees = (closed.vertices.len() <= VERTEX_ORDER_LIMIT).then(|| {
        let v = &closed.vertices;
        (0..v.len()).all(|i| (0..v.len()).all(|j| closed.poset.le(i as u32, j as u32) == v[i].le(&v[j]).is_some()))
    });

    Ok(CubeLemmaReport {
        interval_size: closed.coverings.len(),
        open_size: open.len(),
        cores_inside,
        steps,
        acyclic,
        suspension_identity,
        vertex_order_agrees,
    })
}

/// `{a} ∪ {b} ∪ σ ∪ σ+a ∪ σ+b` over the simplices `σ` of `k`.
fn suspension(k: &SimplicialComplex, a: u32, b: u32) -> SimplicialComplex {
    let mut out: BTreeSet<Vec<u32>> = BTreeSet::new();
    out.insert(vec![a]);
    out.insert(vec![b]);
    for sigma in k.all_simplices() {
        out.insert(sigma.clone());
        for apex in [a, b] {
            let mut t = sigma.clone();
            t.push(apex);
            t.sort_unstable();
            out.insert(t);
        }
    }
    SimplicialComplex::generated_by(out)
}
