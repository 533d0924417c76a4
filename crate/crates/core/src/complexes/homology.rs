use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::snf::elimination_invariants;
use super::{ChainComplex, ComplexError, SimplicialComplex};
use crate::dyadic::UnionFind;

/// Largest cycle space searched for an explicit witness cycle.
const WITNESS_LIMIT: usize = 400;

fn ser_bigs<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(i) => seq.serialize_element(&i)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

/// `H_dim ≅ Z^betti ⊕ ⨁ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub dim: isize,
    pub betti: usize,
    #[serde(serialize_with = "ser_bigs")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub reduced: bool,
    pub relative: bool,
    /// Degrees `low..=reliable_through`, in order.
    pub groups: Vec<HomologyGroup>,
    pub reliable_through: isize,
    /// `true` if the complex was cut off, so higher degrees are unknown.
    pub truncated: bool,
}

impl HomologyReport {
    pub fn group(&self, dim: isize) -> Option<&HomologyGroup> {
        self.groups.iter().find(|g| g.dim == dim)
    }

    pub fn betti(&self, dim: isize) -> usize {
        self.group(dim).map_or(0, |g| g.betti)
    }

    /// Whether every computed group vanishes through degree `k`. Fails if
    /// degree `k` lies beyond the computed range of a truncated complex.
    pub fn vanishes_through(&self, k: isize) -> Result<bool, ComplexError> {
        if self.truncated && k > self.reliable_through {
            return Err(ComplexError::InsufficientSkeleton { needed: k, available: self.reliable_through + 1 });
        }
        Ok(self.groups.iter().filter(|g| g.dim <= k).all(HomologyGroup::is_zero))
    }

    pub fn first_nonzero(&self) -> Option<&HomologyGroup> {
        self.groups.iter().find(|g| !g.is_zero())
    }

    /// Largest `k` with all groups vanishing through `k`; `None` if every
    /// group vanishes and nothing was cut off.
    pub fn connectivity(&self) -> Option<isize> {
        match self.first_nonzero() {
            Some(g) => Some(g.dim - 1),
            None if self.truncated => Some(self.reliable_through),
            None => None,
        }
    }

    pub fn is_acyclic(&self) -> bool {
        !self.truncated && self.first_nonzero().is_none()
    }
}

/// Homology of a chain complex through its reliable degree.
pub fn chain_homology(cc: &ChainComplex) -> Vec<HomologyGroup> {
    let mut invariants: Vec<Vec<BigInt>> = Vec::new();
    let top = cc.reliable_through();
    for d in cc.low()..=top + 1 {
        invariants.push(cc.boundary(d).map(elimination_invariants).unwrap_or_default());
    }
    (cc.low()..=top)
        .map(|d| {
            let i = (d - cc.low()) as usize;
            let out_rank = invariants[i].len();
            let incoming = &invariants[i + 1];
            HomologyGroup {
                dim: d,
                betti: cc.rank(d) - out_rank - incoming.len(),
                torsion: incoming.iter().filter(|x| !x.is_one()).cloned().collect(),
            }
        })
        .collect()
}

/// Integral homology of `k`, reduced when asked. `π₀` is computed
/// independently and must agree with `H̃₀`.
pub fn homology(k: &SimplicialComplex, reduced: bool) -> Result<HomologyReport, ComplexError> {
    let cc = ChainComplex::of_complex(k, reduced);
    let groups = chain_homology(&cc);
    let report = HomologyReport {
        reduced,
        relative: false,
        groups,
        reliable_through: cc.reliable_through(),
        truncated: k.skeleton().is_some(),
    };
    if cc.reliable_through() >= 0 {
        let comps = components(k).len();
        let h0 = report.betti(0);
        let expected = if reduced { comps.saturating_sub(1) } else { comps };
        if h0 != expected {
            return Err(ComplexError::Inconsistent(format!("H0 rank {h0} but {comps} components")));
        }
    }
    Ok(report)
}

/// Homology of the pair `(k, l)`; `l` must be a subcomplex.
pub fn relative_homology(k: &SimplicialComplex, l: &SimplicialComplex) -> Result<HomologyReport, ComplexError> {
    let cc = ChainComplex::of_pair(k, l, false)?;
    Ok(HomologyReport {
        reduced: false,
        relative: true,
        groups: chain_homology(&cc),
        reliable_through: cc.reliable_through(),
        truncated: k.skeleton().is_some() || l.skeleton().is_some(),
    })
}

/// Vertex classes of the 1-skeleton, each sorted, ordered by least vertex.
pub fn components(k: &SimplicialComplex) -> Vec<Vec<u32>> {
    let verts = k.vertices();
    let mut uf = UnionFind::new(verts.len());
    for e in k.simplices(1) {
        let a = verts.binary_search(&e[0]).expect("vertex");
        let b = verts.binary_search(&e[1]).expect("vertex");
        uf.union(a, b);
    }
    let mut classes: Vec<Vec<u32>> =
        uf.classes().into_iter().map(|c| c.into_iter().map(|i| verts[i]).collect::<Vec<_>>()).collect();
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort();
    classes
}

/// Evidence that a connectivity claim fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Empty,
    Disconnected { a: u32, b: u32 },
    /// An integral cycle that is not a rational boundary.
    Cycle { dim: isize, chain: Vec<(Vec<u32>, i64)> },
    /// A nonzero group without an explicit representative.
    Group { group: HomologyGroup },
}

/// Outcome of testing "homologically `k`-connected": nonempty, path
/// connected, and `H̃_i = 0` for `i ≤ k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityVerdict {
    pub k: isize,
    pub pass: bool,
    pub nonempty: bool,
    pub components: usize,
    pub failing_dim: Option<isize>,
    pub witness: Option<Witness>,
    pub notion: &'static str,
}

pub fn connectivity_report(k: &SimplicialComplex, conn: isize) -> Result<ConnectivityVerdict, ComplexError> {
    let comps = components(k);
    let mut verdict = ConnectivityVerdict {
        k: conn,
        pass: true,
        nonempty: !k.is_empty(),
        components: comps.len(),
        failing_dim: None,
        witness: None,
        notion: "homological",
    };
    if conn <= -2 {
        return Ok(verdict);
    }
    if k.is_empty() {
        verdict.pass = false;
        verdict.failing_dim = Some(-1);
        verdict.witness = Some(Witness::Empty);
        return Ok(verdict);
    }
    if conn >= 0 && comps.len() > 1 {
        verdict.pass = false;
        verdict.failing_dim = Some(0);
        verdict.witness = Some(Witness::Disconnected { a: comps[0][0], b: comps[1][0] });
        return Ok(verdict);
    }
    if conn <= 0 {
        return Ok(verdict);
    }
    if let Some(skel) = k.skeleton() {
        if conn > skel as isize - 1 {
            return Err(ComplexError::InsufficientSkeleton { needed: conn, available: skel as isize });
        }
    }
    let truncated = k.truncate((conn + 1) as usize);
    let report = homology(&truncated, true)?;
    if let Some(g) = report.groups.iter().find(|g| g.dim <= conn && !g.is_zero()) {
        verdict.pass = false;
        verdict.failing_dim = Some(g.dim);
        verdict.witness = Some(
            cycle_witness(&truncated, g.dim).map_or(Witness::Group { group: g.clone() }, |chain| Witness::Cycle {
                dim: g.dim,
                chain,
            }),
        );
    }
    Ok(verdict)
}

/// A rational cycle in degree `d` outside the rational boundaries, scaled
/// to integers. Only attempted on small chain groups.
fn cycle_witness(k: &SimplicialComplex, d: isize) -> Option<Vec<(Vec<u32>, i64)>> {
    let cc = ChainComplex::of_complex(k, true);
    let n = cc.rank(d);
    if n == 0 || n > WITNESS_LIMIT || cc.rank(d + 1) > 4 * WITNESS_LIMIT {
        return None;
    }
    let to_q = |m: Option<&super::SparseMatrix>, rows: usize, cols: usize| -> Vec<Vec<BigRational>> {
        let mut out = vec![vec![BigRational::zero(); cols]; rows];
        if let Some(m) = m {
            for (j, c) in m.columns().iter().enumerate() {
                for &(i, x) in c {
                    out[i as usize][j] = BigRational::from_integer(x.into());
                }
            }
        }
        out
    };
    let dd = to_q(cc.boundary(d), cc.rank(d - 1), n);
    let kernel = null_space(&dd, n);
    let up = to_q(cc.boundary(d + 1), n, cc.rank(d + 1));
    // boundaries are the column span of `up`
    let base_rank = rank(columns(&up));
    for z in kernel {
        let mut cols = columns(&up);
        cols.push(z.clone());
        if rank(cols) > base_rank {
            let denom = z.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
            let ints: Vec<BigInt> = z.iter().map(|x| (x * BigRational::from_integer(denom.clone())).to_integer()).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, x| num_integer::gcd(acc, x.clone()));
            let chain = cc
                .basis(d)
                .iter()
                .zip(ints)
                .filter(|(_, c)| !c.is_zero())
                .map(|(s, c)| Some((s.clone(), (c / &g).to_i64()?)))
                .collect::<Option<Vec<_>>>()?;
            return Some(chain);
        }
    }
    None
}

fn columns(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

fn rank(vectors: Vec<Vec<BigRational>>) -> usize {
    let mut rows = vectors;
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                let src = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&src) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Basis of `{ z : m z = 0 }`.
fn null_space(m: &[Vec<BigRational>], n: usize) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let src = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&src) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut z = vec![BigRational::zero(); n];
            z[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                z[pc] = -a[row][free].clone();
            }
            z
        })
        .collect()
}
