use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::{ComplexError, FinitePoset};

/// Default cap on the number of simplices a constructed complex may hold.
pub const DEFAULT_MAX_SIMPLICES: usize = 5_000_000;

/// A finite abstract simplicial complex on vertex ids `u32`.
///
/// All simplices are stored explicitly as sorted vertex arrays, grouped by
/// dimension. A complex may be a `skeleton`: built only up to some
/// dimension, in which case homology is only meaningful strictly below it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Vec<u32>>>,
    skeleton: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawComplex {
    vertices: Vec<u32>,
    simplices: Vec<Vec<u32>>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawComplex { vertices: self.vertices(), simplices: self.all_simplices().cloned().collect() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawComplex::deserialize(deserializer)?;
        let mut simplices = raw.simplices;
        simplices.extend(raw.vertices.iter().map(|&v| vec![v]));
        SimplicialComplex::from_simplices(simplices).map_err(serde::de::Error::custom)
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex { by_dim: Vec::new(), skeleton: None }
    }

    /// From a face-closed family of simplices; rejects families that are
    /// not closed under taking faces.
    pub fn from_simplices<I>(simplices: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let mut set: HashSet<Vec<u32>> = HashSet::new();
        for mut s in simplices {
            s.sort_unstable();
            let len = s.len();
            s.dedup();
            if s.len() != len {
                return Err(ComplexError::RepeatedVertex(s));
            }
            if !s.is_empty() {
                set.insert(s);
            }
        }
        for s in &set {
            if s.len() > 1 {
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    if !set.contains(&face) {
                        return Err(ComplexError::NotFaceClosed { simplex: s.clone(), missing: face });
                    }
                }
            }
        }
        Ok(Self::from_set(set, None))
    }

    /// The smallest complex containing the given simplices.
    pub fn generated_by<I>(facets: I) -> Self
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let mut set: HashSet<Vec<u32>> = HashSet::new();
        let mut stack: Vec<Vec<u32>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        while let Some(s) = stack.pop() {
            if s.is_empty() || set.contains(&s) {
                continue;
            }
            if s.len() > 1 {
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    stack.push(face);
                }
            }
            set.insert(s);
        }
        Self::from_set(set, None)
    }

    /// From simplices grouped by size, already sorted, face-closed and
    /// deduplicated.
    pub(crate) fn from_sorted_levels(mut by_dim: Vec<Vec<Vec<u32>>>, skeleton: Option<usize>) -> Self {
        for level in &mut by_dim {
            level.sort_unstable();
        }
        while by_dim.last().is_some_and(Vec::is_empty) {
            by_dim.pop();
        }
        SimplicialComplex { by_dim, skeleton }
    }

    fn from_set(set: HashSet<Vec<u32>>, skeleton: Option<usize>) -> Self {
        let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
        for s in set {
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(s);
        }
        Self::from_sorted_levels(by_dim, skeleton)
    }

    /// `Some(d)` when only simplices of dimension `≤ d` were built.
    pub fn skeleton(&self) -> Option<usize> {
        self.skeleton
    }

    /// Highest dimension in which homology is fully determined.
    pub fn reliable_dim(&self) -> Option<isize> {
        self.skeleton.map(|d| d as isize - 1)
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    /// Dimension, `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.by_dim.len() as isize - 1
    }

    pub fn simplices(&self, dim: usize) -> &[Vec<u32>] {
        self.by_dim.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices(dim).len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Vec<u32>> + '_ {
        self.by_dim.iter().flatten()
    }

    pub fn vertices(&self) -> Vec<u32> {
        self.simplices(0).iter().map(|v| v[0]).collect()
    }

    pub fn contains(&self, simplex: &[u32]) -> bool {
        match simplex.len() {
            0 => true,
            n => self.simplices(n - 1).binary_search_by(|s| s.as_slice().cmp(simplex)).is_ok(),
        }
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.all_simplices().all(|s| other.contains(s))
    }

    /// Euler characteristic of the stored simplices.
    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim.iter().enumerate().map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    /// Full subcomplex on the given vertex set.
    pub fn full_subcomplex(&self, vertices: &BTreeSet<u32>) -> SimplicialComplex {
        let by_dim = self
            .by_dim
            .iter()
            .map(|l| l.iter().filter(|s| s.iter().all(|v| vertices.contains(v))).cloned().collect())
            .collect();
        Self::from_sorted_levels(by_dim, self.skeleton)
    }

    /// `lk(v) = { σ : v ∉ σ, σ ∪ {v} ∈ K }`.
    pub fn link(&self, v: u32) -> SimplicialComplex {
        let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
        for (d, level) in self.by_dim.iter().enumerate().skip(1) {
            let faces: Vec<Vec<u32>> = level
                .iter()
                .filter(|s| s.binary_search(&v).is_ok())
                .map(|s| s.iter().copied().filter(|&x| x != v).collect())
                .collect();
            if by_dim.len() < d {
                by_dim.resize(d, Vec::new());
            }
            by_dim[d - 1] = faces;
        }
        Self::from_sorted_levels(by_dim, self.skeleton.map(|d| d.saturating_sub(1)))
    }

    /// Renames vertices through `f`, which must be injective on vertices.
    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> SimplicialComplex {
        let by_dim = self
            .by_dim
            .iter()
            .map(|l| {
                l.iter()
                    .map(|s| {
                        let mut t: Vec<u32> = s.iter().map(|&v| f(v)).collect();
                        t.sort_unstable();
                        t
                    })
                    .collect()
            })
            .collect();
        Self::from_sorted_levels(by_dim, self.skeleton)
    }

    /// Keeps only simplices of dimension `≤ dim`.
    pub fn truncate(&self, dim: usize) -> SimplicialComplex {
        if self.dim() <= dim as isize {
            return self.clone();
        }
        let by_dim = self.by_dim[..=dim].to_vec();
        let skel = Some(self.skeleton.map_or(dim, |d| d.min(dim)));
        Self::from_sorted_levels(by_dim, skel)
    }

    /// Simplices of `self` missing from `other`.
    pub fn difference(&self, other: &SimplicialComplex) -> Vec<Vec<u32>> {
        self.all_simplices().filter(|s| !other.contains(s)).cloned().collect()
    }

    /// Set-theoretic union of two complexes.
    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut set: HashSet<Vec<u32>> = self.all_simplices().cloned().collect();
        set.extend(other.all_simplices().cloned());
        let skeleton = match (self.skeleton, other.skeleton) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Self::from_set(set, skeleton)
    }
}

/// Chains of `p` as simplices; ids are poset elements. With `max_dim`,
/// only chains of at most `max_dim + 1` elements are built.
pub fn order_complex(p: &FinitePoset, max_dim: Option<usize>, max_simplices: usize) -> Result<SimplicialComplex, ComplexError> {
    let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut total = 0usize;
    let mut chain: Vec<u32> = Vec::new();
    for a in 0..p.len() as u32 {
        chain.push(a);
        extend_chains(p, &mut chain, max_dim, &mut by_dim, &mut total, max_simplices)?;
        chain.pop();
    }
    let skeleton = max_dim.filter(|&d| by_dim.len() > d || chains_continue(p, d));
    Ok(SimplicialComplex::from_sorted_levels(by_dim, skeleton))
}

fn chains_continue(p: &FinitePoset, d: usize) -> bool {
    // whether some chain has more than d + 1 elements (cheap: longest chain)
    let mut height = vec![0usize; p.len()];
    let mut order: Vec<u32> = (0..p.len() as u32).collect();
    order.sort_by_key(|&a| std::cmp::Reverse(p.above(a).len()));
    for &a in order.iter().rev() {
        height[a as usize] = p.above(a).iter().map(|&b| height[b as usize] + 1).max().unwrap_or(0);
    }
    height.into_iter().max().unwrap_or(0) > d
}

fn extend_chains(
    p: &FinitePoset,
    chain: &mut Vec<u32>,
    max_dim: Option<usize>,
    out: &mut Vec<Vec<Vec<u32>>>,
    total: &mut usize,
    bound: usize,
) -> Result<(), ComplexError> {
    let d = chain.len() - 1;
    if out.len() <= d {
        out.resize(d + 1, Vec::new());
    }
    let mut sorted = chain.clone();
    sorted.sort_unstable();
    out[d].push(sorted);
    *total += 1;
    if *total > bound {
        return Err(ComplexError::BoundExceeded { what: "simplices", value: *total, bound });
    }
    if max_dim.is_some_and(|m| d >= m) {
        return Ok(());
    }
    let last = *chain.last().expect("nonempty chain");
    for &b in p.above(last) {
        chain.push(b);
        extend_chains(p, chain, max_dim, out, total, bound)?;
        chain.pop();
    }
    Ok(())
}

/// `K * L`: all unions `σ ∪ τ`, including `σ` or `τ` empty. Vertex sets
/// must be disjoint.
pub fn join_complex(k: &SimplicialComplex, l: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
    let kv: BTreeSet<u32> = k.vertices().into_iter().collect();
    if let Some(v) = l.vertices().into_iter().find(|v| kv.contains(v)) {
        return Err(ComplexError::SharedVertex(v));
    }
    let empty = Vec::new();
    let ks: Vec<&Vec<u32>> = std::iter::once(&empty).chain(k.all_simplices()).collect();
    let ls: Vec<&Vec<u32>> = std::iter::once(&empty).chain(l.all_simplices()).collect();
    let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
    for a in &ks {
        for b in &ls {
            if a.is_empty() && b.is_empty() {
                continue;
            }
            let mut s: Vec<u32> = a.iter().chain(b.iter()).copied().collect();
            s.sort_unstable();
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(s);
        }
    }
    let skeleton = match (k.skeleton(), l.skeleton()) {
        (None, None) => None,
        // a skeleton factor only determines the join up to the factor's cutoff
        (a, b) => Some(a.unwrap_or(usize::MAX).min(b.unwrap_or(usize::MAX))),
    };
    Ok(SimplicialComplex::from_sorted_levels(by_dim, skeleton))
}
