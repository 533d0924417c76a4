use super::{ComplexError, SimplicialComplex};

/// Column-sparse integer matrix; each column is sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, mut columns: Vec<Vec<(u32, i64)>>) -> Self {
        for c in &mut columns {
            c.sort_unstable_by_key(|e| e.0);
            c.retain(|e| e.1 != 0);
        }
        SparseMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<(u32, i64)>] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// `self · other`, entries in `i128` to keep small products exact.
    pub fn mul_is_zero(&self, other: &SparseMatrix) -> bool {
        other.columns.iter().all(|col| {
            let mut acc: std::collections::BTreeMap<u32, i128> = Default::default();
            for &(k, b) in col {
                for &(i, a) in &self.columns[k as usize] {
                    *acc.entry(i).or_default() += a as i128 * b as i128;
                }
            }
            acc.values().all(|&v| v == 0)
        })
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols()]; self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for &(i, x) in c {
                d[i as usize][j] = x;
            }
        }
        d
    }
}

/// A bounded integer chain complex `C_top → … → C_low`.
///
/// Degree `low` may be `-1` for augmented (reduced) complexes. Homology is
/// only claimed in degrees `≤ reliable_through`; above that the complex was
/// cut off.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    low: isize,
    bases: Vec<Vec<Vec<u32>>>,
    boundaries: Vec<SparseMatrix>,
    reliable_through: isize,
}

impl ChainComplex {
    /// Simplicial chains, augmented by `ε(v) = 1` when `reduced`.
    pub fn of_complex(k: &SimplicialComplex, reduced: bool) -> ChainComplex {
        Self::of_pair(k, &SimplicialComplex::empty(), reduced).expect("the empty complex is a subcomplex")
    }

    /// Relative chains `C(K)/C(L)`; with an empty `L` and `reduced` this is
    /// the augmented complex of `K`.
    pub fn of_pair(k: &SimplicialComplex, l: &SimplicialComplex, reduced: bool) -> Result<ChainComplex, ComplexError> {
        if let Some(s) = l.all_simplices().find(|s| !k.contains(s)) {
            return Err(ComplexError::NotSubcomplex(s.clone()));
        }
        let augmented = reduced && l.is_empty();
        let top = k.dim().max(-1);
        let mut bases: Vec<Vec<Vec<u32>>> = Vec::new();
        if augmented {
            bases.push(vec![Vec::new()]);
        }
        for d in 0..=top {
            let level = k.simplices(d as usize);
            let basis: Vec<Vec<u32>> = if l.is_empty() {
                level.to_vec()
            } else {
                level.iter().filter(|s| !l.contains(s)).cloned().collect()
            };
            bases.push(basis);
        }
        let low = if augmented { -1 } else { 0 };
        let boundaries = (1..bases.len()).map(|i| boundary_matrix(&bases[i - 1], &bases[i])).collect();
        let mut reliable = top;
        for skel in [k.skeleton(), l.skeleton()].into_iter().flatten() {
            reliable = reliable.min(skel as isize - 1);
        }
        Ok(ChainComplex { low, bases, boundaries, reliable_through: reliable.max(low - 1) })
    }

    pub fn low(&self) -> isize {
        self.low
    }

    pub fn top(&self) -> isize {
        self.low + self.bases.len() as isize - 1
    }

    pub fn reliable_through(&self) -> isize {
        self.reliable_through
    }

    pub fn rank(&self, degree: isize) -> usize {
        self.basis(degree).len()
    }

    pub fn basis(&self, degree: isize) -> &[Vec<u32>] {
        if degree < self.low {
            return &[];
        }
        self.bases.get((degree - self.low) as usize).map_or(&[], Vec::as_slice)
    }

    /// `∂_degree : C_degree → C_{degree-1}`, if both sides exist.
    pub fn boundary(&self, degree: isize) -> Option<&SparseMatrix> {
        if degree <= self.low {
            return None;
        }
        self.boundaries.get((degree - self.low - 1) as usize)
    }

    /// Checks `∂ ∘ ∂ = 0` in every degree.
    pub fn is_valid(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].mul_is_zero(&w[1]))
    }
}

fn boundary_matrix(lower: &[Vec<u32>], upper: &[Vec<u32>]) -> SparseMatrix {
    let columns = upper
        .iter()
        .map(|s| {
            if s.len() == 1 && lower.len() == 1 && lower[0].is_empty() {
                return vec![(0, 1)];
            }
            (0..s.len())
                .filter_map(|i| {
                    let mut face = s.clone();
                    face.remove(i);
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    lower.binary_search(&face).ok().map(|r| (r as u32, sign))
                })
                .collect()
        })
        .collect();
    SparseMatrix::new(lower.len(), columns)
}
