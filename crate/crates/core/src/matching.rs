//! Colored multigraphs `sKₙ`, their matching complexes and the connectivity
//! bounds `ν`, `η`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexes::{homology, join_complex, ComplexError, HomologyReport, SimplicialComplex};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("s and n must be at least 1 (got s = {s}, n = {n})")]
    BadParameters { s: u32, n: u32 },
    #[error("edge {0:?} is not an edge of the graph")]
    UnknownEdge(Edge),
    #[error("edges of the simplex share a node")]
    NotMatching,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// An edge between nodes `tail` and `head` (1-based) of color `color`.
/// Unoriented edges are stored with `tail < head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub tail: u32,
    pub head: u32,
    pub color: u32,
}

impl Edge {
    pub fn nodes(&self) -> (u32, u32) {
        (self.tail.min(self.head), self.tail.max(self.head))
    }

    pub fn unoriented(&self) -> Edge {
        let (i, j) = self.nodes();
        Edge { tail: i, head: j, color: self.color }
    }

    pub fn reversed(&self) -> Edge {
        Edge { tail: self.head, head: self.tail, color: self.color }
    }

    fn disjoint(&self, other: &Edge) -> bool {
        let (a, b) = self.nodes();
        let (c, d) = other.nodes();
        a != c && a != d && b != c && b != d
    }
}

/// A multigraph on nodes `1..=n` with colored, possibly oriented edges.
/// Vertex ids of its matching complex are indices into `edges`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    pub n: u32,
    pub s: u32,
    pub oriented: bool,
    pub edges: Vec<Edge>,
}

/// `sKₙ`: `s` parallel edges, one of each color, between any two nodes.
pub fn make_skn(s: u32, n: u32) -> Result<Multigraph, MatchingError> {
    if s == 0 || n == 0 {
        return Err(MatchingError::BadParameters { s, n });
    }
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for color in 1..=s {
                edges.push(Edge { tail: i, head: j, color });
            }
        }
    }
    edges.sort();
    Ok(Multigraph { n, s, oriented: false, edges })
}

impl Multigraph {
    /// Both orientations of every edge.
    pub fn orient(&self) -> Multigraph {
        if self.oriented {
            return self.clone();
        }
        let mut edges: Vec<Edge> = self.edges.iter().flat_map(|e| [*e, e.reversed()]).collect();
        edges.sort();
        Multigraph { oriented: true, edges, ..self.clone() }
    }

    pub fn edge_id(&self, e: &Edge) -> Option<u32> {
        self.edges.binary_search(e).ok().map(|i| i as u32)
    }

    pub fn edge(&self, id: u32) -> Edge {
        self.edges[id as usize]
    }
}

/// The graph's matching complex, built through dimension `max_dim` if
/// given. With `oriented`, an unoriented graph is first oriented both ways.
pub fn matching_complex(
    g: &Multigraph,
    oriented: bool,
    max_dim: Option<usize>,
    max_simplices: usize,
) -> Result<(Multigraph, SimplicialComplex), MatchingError> {
    let g = if oriented { g.orient() } else { g.clone() };
    let ids: Vec<u32> = (0..g.edges.len() as u32).collect();
    let k = matchings_among(&g, &ids, max_dim, max_simplices)?;
    Ok((g, k))
}

/// Matchings formed from the given edge ids, as a complex.
fn matchings_among(
    g: &Multigraph,
    ids: &[u32],
    max_dim: Option<usize>,
    bound: usize,
) -> Result<SimplicialComplex, MatchingError> {
    let mut levels: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut total = 0usize;
    let mut stack: Vec<u32> = Vec::new();
    let mut truncated = false;
    fn grow(
        g: &Multigraph,
        ids: &[u32],
        from: usize,
        stack: &mut Vec<u32>,
        max_dim: Option<usize>,
        levels: &mut Vec<Vec<Vec<u32>>>,
        total: &mut usize,
        bound: usize,
        truncated: &mut bool,
    ) -> Result<(), MatchingError> {
        for (pos, &id) in ids.iter().enumerate().skip(from) {
            let e = g.edge(id);
            if stack.iter().any(|&o| !g.edge(o).disjoint(&e)) {
                continue;
            }
            if max_dim.is_some_and(|m| stack.len() > m) {
                *truncated = true;
                return Ok(());
            }
            stack.push(id);
            let d = stack.len() - 1;
            if levels.len() <= d {
                levels.resize(d + 1, Vec::new());
            }
            levels[d].push(stack.clone());
            *total += 1;
            if *total > bound {
                return Err(ComplexError::BoundExceeded { what: "simplices", value: *total, bound }.into());
            }
            grow(g, ids, pos + 1, stack, max_dim, levels, total, bound, truncated)?;
            stack.pop();
        }
        Ok(())
    }
    grow(g, ids, 0, &mut stack, max_dim, &mut levels, &mut total, bound, &mut truncated)?;
    let skeleton = if truncated { max_dim } else { None };
    Ok(SimplicialComplex::from_sorted_levels(levels, skeleton))
}

/// Full preimage of a matching `sigma` of `Kₙ` (edges by node pair) under
/// the color-forgetting map `M(sKₙ) → M(Kₙ)`.
pub fn projection_fiber(s: u32, n: u32, sigma: &[(u32, u32)]) -> Result<(Multigraph, SimplicialComplex), MatchingError> {
    let g = make_skn(s, n)?;
    let base: Vec<Edge> = sigma.iter().map(|&(i, j)| Edge { tail: i.min(j), head: i.max(j), color: 1 }).collect();
    check_matching(&make_skn(1, n)?, &base)?;
    let ids: Vec<u32> = (0..g.edges.len() as u32)
        .filter(|&id| base.iter().any(|b| b.nodes() == g.edge(id).nodes()))
        .collect();
    let k = matchings_among(&g, &ids, None, usize::MAX)?;
    Ok((g, k))
}

/// Full preimage of a matching `sigma` of `sKₙ` under the
/// orientation-forgetting map `M°(sKₙ) → M(sKₙ)`.
pub fn orientation_fiber(s: u32, n: u32, sigma: &[Edge]) -> Result<(Multigraph, SimplicialComplex), MatchingError> {
    let g = make_skn(s, n)?;
    let base: Vec<Edge> = sigma.iter().map(Edge::unoriented).collect();
    check_matching(&g, &base)?;
    let og = g.orient();
    let ids: Vec<u32> =
        (0..og.edges.len() as u32).filter(|&id| base.contains(&og.edge(id).unoriented())).collect();
    let k = matchings_among(&og, &ids, None, usize::MAX)?;
    Ok((og, k))
}

/// The join of the fibers over the vertices of `sigma`, each fiber being
/// the discrete set of lifts of one edge. Must coincide with the full
/// preimage.
pub fn fiber_as_join(groups: &[Vec<u32>]) -> Result<SimplicialComplex, ComplexError> {
    groups.iter().try_fold(SimplicialComplex::empty(), |acc, group| {
        join_complex(&acc, &SimplicialComplex::generated_by(group.iter().map(|&v| vec![v])))
    })
}

fn check_matching(g: &Multigraph, edges: &[Edge]) -> Result<(), MatchingError> {
    for e in edges {
        if g.edge_id(e).is_none() {
            return Err(MatchingError::UnknownEdge(*e));
        }
    }
    for (i, a) in edges.iter().enumerate() {
        if edges[i + 1..].iter().any(|b| !a.disjoint(b)) {
            return Err(MatchingError::NotMatching);
        }
    }
    Ok(())
}

/// `ν(ℓ) = ⌊(ℓ−2)/3⌋`.
pub fn nu(l: i64) -> i64 {
    (l - 2).div_euclid(3)
}

/// `η(ℓ) = ⌊(ℓ−2)/2^s⌋`.
pub fn eta(l: i64, s: u32) -> i64 {
    (l - 2).div_euclid(1i64 << s)
}

/// Number of `k`-edge matchings of `Kₙ`: `n! / ((n−2k)! k! 2^k)`.
pub fn matching_count(n: u64, k: u64) -> u64 {
    if 2 * k > n {
        return 0;
    }
    let mut num: u128 = 1;
    for i in 0..2 * k {
        num *= (n - i) as u128;
    }
    let mut den: u128 = 1;
    for i in 1..=k {
        den *= i as u128 * 2;
    }
    (num / den) as u64
}

/// Whether reduced homology is that of a wedge of `k`-spheres: free and
/// concentrated in degree `k`.
pub fn is_wedge_of_spheres(report: &HomologyReport, k: isize) -> bool {
    report.groups.iter().all(|g| g.torsion.is_empty() && (g.dim == k || g.betti == 0))
}

/// Reduced homology of a matching complex (convenience wrapper).
pub fn matching_homology(k: &SimplicialComplex) -> Result<HomologyReport, MatchingError> {
    Ok(homology(k, true)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::connectivity_report;

    fn full(s: u32, n: u32, oriented: bool) -> SimplicialComplex {
        matching_complex(&make_skn(s, n).unwrap(), oriented, None, usize::MAX).unwrap().1
    }

    #[test]
    fn graphs() {
        assert_eq!(make_skn(1, 5).unwrap().edges.len(), 10);
        assert_eq!(make_skn(2, 3).unwrap().edges.len(), 6);
        let g = make_skn(3, 2).unwrap();
        assert_eq!(g.edges.len(), 3);
        assert!(g.edges.iter().all(|e| e.nodes() == (1, 2)));
        assert!(make_skn(0, 2).is_err());
    }

    #[test]
    fn small_complexes() {
        let k4 = full(1, 4, false);
        assert_eq!(k4.counts(), vec![6, 3]);
        assert_eq!(matching_homology(&k4).unwrap().betti(0), 2);
        assert_eq!(full(2, 2, true).counts(), vec![4]);
        assert_eq!(full(2, 3, false).counts(), vec![6]);
    }

    #[test]
    fn counts_follow_product_formula() {
        for n in 2..=6u32 {
            for s in 1..=2u32 {
                for oriented in [false, true] {
                    let k = full(s, n, oriented);
                    for (d, &c) in k.counts().iter().enumerate() {
                        let size = d as u64 + 1;
                        let per = if oriented { 2 * s as u64 } else { s as u64 };
                        assert_eq!(c as u64, matching_count(n as u64, size) * per.pow(size as u32));
                    }
                }
            }
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(nu(5), 1);
        assert_eq!(nu(8), 2);
        assert_eq!(nu(0), -1);
        assert_eq!(eta(10, 2), 2);
        assert_eq!(eta(6, 2), 1);
        assert_eq!(eta(1, 2), -1);
        for n in 0..40 {
            for s in 2..5 {
                assert!(eta(n, s) <= nu(n));
            }
        }
    }

    #[test]
    fn k5_connected_k4_not() {
        assert!(connectivity_report(&full(1, 5, false), (nu(5) - 1) as isize).unwrap().pass);
        assert!(!connectivity_report(&full(1, 4, false), 0).unwrap().pass);
    }

    #[test]
    fn fibers() {
        let (_, f) = projection_fiber(2, 4, &[(1, 2)]).unwrap();
        assert_eq!(f.counts(), vec![2]);
        let (_, f) = projection_fiber(2, 4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(f.counts(), vec![4, 4]);
        assert_eq!(matching_homology(&f).unwrap().betti(1), 1);
        let (_, f) = projection_fiber(1, 5, &[(1, 2), (3, 4)]).unwrap();
        assert!(matching_homology(&f).unwrap().is_acyclic());
        assert!(projection_fiber(2, 4, &[(1, 2), (2, 3)]).is_err());

        let e = |t, h, c| Edge { tail: t, head: h, color: c };
        let (_, f) = orientation_fiber(2, 5, &[e(1, 2, 1)]).unwrap();
        assert_eq!(f.counts(), vec![2]);
        for k in 0..=1 {
            let sigma: Vec<Edge> = [e(1, 2, 2), e(3, 4, 1)][..=k].to_vec();
            let (_, f) = orientation_fiber(2, 5, &sigma).unwrap();
            let h = matching_homology(&f).unwrap();
            assert!(is_wedge_of_spheres(&h, k as isize));
            assert_eq!(h.betti(k as isize), 1);
        }
        let (_, f) = orientation_fiber(2, 5, &[]).unwrap();
        assert!(f.is_empty());
    }

    #[test]
    fn fiber_is_join_of_vertex_fibers() {
        let (g, f) = projection_fiber(3, 5, &[(1, 2), (3, 5)]).unwrap();
        let groups: Vec<Vec<u32>> = [(1, 2), (3, 5)]
            .iter()
            .map(|&p| (0..g.edges.len() as u32).filter(|&id| g.edge(id).nodes() == p).collect())
            .collect();
        assert_eq!(fiber_as_join(&groups).unwrap(), f);
    }

    #[test]
    fn vertex_links_are_smaller_matching_complexes() {
        for n in 3..=7u32 {
            let g = make_skn(1, n).unwrap();
            let (_, k) = matching_complex(&g, false, None, usize::MAX).unwrap();
            let v = g.edge_id(&Edge { tail: 1, head: 2, color: 1 }).unwrap();
            let lk = k.link(v);
            let small = full(1, n - 2, false);
            // relabel the link onto K_{n-2} on nodes 3..=n
            let h = make_skn(1, n - 2).unwrap();
            let relabeled = lk.relabel(|id| {
                let e = g.edge(id);
                h.edge_id(&Edge { tail: e.tail - 2, head: e.head - 2, color: 1 }).unwrap()
            });
            assert_eq!(relabeled, small, "n = {n}");
        }
    }
}
