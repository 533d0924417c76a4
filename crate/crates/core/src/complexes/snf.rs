use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::SparseMatrix;

/// Dense integer matrix, row major.
pub type IntMatrix = Vec<Vec<BigInt>>;

/// `u · m · v = d` with `d` diagonal, `d₁ | d₂ | …`, and `u`, `v`
/// unimodular (their inverses are carried along as proof).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariants: Vec<BigInt>,
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn mul(a: &IntMatrix, b: &IntMatrix, inner: usize, cols: usize) -> IntMatrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

impl SmithForm {
    /// Multiplies the certificate out and checks every claimed identity.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let umv = mul(&mul(&self.u, m, rows, cols), &self.v, cols, cols);
        let diagonal = self.d.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()));
        let divides = self.invariants.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        let positive = self.invariants.iter().all(|x| x.is_positive());
        let listed = self.invariants.iter().enumerate().all(|(i, x)| &self.d[i][i] == x)
            && (self.invariants.len()..rows.min(cols)).all(|i| self.d[i][i].is_zero());
        umv == self.d
            && diagonal
            && divides
            && positive
            && listed
            && mul(&self.u, &self.u_inv, rows, rows) == identity(rows)
            && mul(&self.v, &self.v_inv, cols, cols) == identity(cols)
    }
}

/// Smith normal form with unimodular transformation certificates.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut u_inv = identity(rows);
    let mut v = identity(cols);
    let mut v_inv = identity(cols);
    let mut invariants = Vec::new();

    // row i += q · row t  (and the matching inverse update)
    let add_row = |a: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize, t: usize, q: &BigInt| {
        for mat in [&mut *a, &mut *u] {
            let src = mat[t].clone();
            for (x, y) in mat[i].iter_mut().zip(&src) {
                *x += q * y;
            }
        }
        for row in u_inv.iter_mut() {
            let x = row[i].clone();
            row[t] -= q * x;
        }
    };
    let add_col = |a: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, j: usize, t: usize, q: &BigInt| {
        for mat in [&mut *a, &mut *v] {
            for row in mat.iter_mut() {
                let x = row[t].clone();
                row[j] += q * x;
            }
        }
        let src = v_inv[j].clone();
        for (x, y) in v_inv[t].iter_mut().zip(&src) {
            *x -= q * y;
        }
    };
    let swap_rows = |a: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize, t: usize| {
        a.swap(i, t);
        u.swap(i, t);
        for row in u_inv.iter_mut() {
            row.swap(i, t);
        }
    };
    let swap_cols = |a: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, j: usize, t: usize| {
        for row in a.iter_mut().chain(v.iter_mut()) {
            row.swap(j, t);
        }
        v_inv.swap(j, t);
    };

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_entry(&a, t) else { break };
        swap_rows(&mut a, &mut u, &mut u_inv, pi, t);
        swap_cols(&mut a, &mut v, &mut v_inv, pj, t);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = -a[i][t].div_floor(&a[t][t]);
                    add_row(&mut a, &mut u, &mut u_inv, i, t, &q);
                    if !a[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = -a[t][j].div_floor(&a[t][t]);
                    add_col(&mut a, &mut v, &mut v_inv, j, t, &q);
                    if !a[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                let (pi, pj) = min_in_cross(&a, t);
                swap_rows(&mut a, &mut u, &mut u_inv, pi, t);
                swap_cols(&mut a, &mut v, &mut v_inv, pj, t);
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match offender {
                Some(i) => add_row(&mut a, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for mat in [&mut a, &mut u] {
                for x in mat[t].iter_mut() {
                    *x = -&*x;
                }
            }
            for row in u_inv.iter_mut() {
                row[t] = -&row[t];
            }
        }
        invariants.push(a[t][t].clone());
    }
    SmithForm { invariants, d: a, u, u_inv, v, v_inv }
}

fn min_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let cand = (t..a.len()).map(|i| (i, t)).chain((t..a[t].len()).map(|j| (t, j)));
    for (i, j) in cand {
        let x = &a[i][j];
        if !x.is_zero() && (a[best.0][best.1].is_zero() || x.abs() < a[best.0][best.1].abs()) {
            best = (i, j);
        }
    }
    best
}

/// Invariant factors only, without certificates.
fn dense_invariants(mut a: IntMatrix) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_entry(&a, t) else { break };
        a.swap(pi, t);
        for row in a.iter_mut() {
            row.swap(pj, t);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    let src = a[t].clone();
                    for (x, y) in a[i].iter_mut().zip(&src).skip(t) {
                        *x -= &q * y;
                    }
                    dirty |= !a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let y = row[t].clone();
                        row[j] -= &q * y;
                    }
                    dirty |= !a[t][j].is_zero();
                }
            }
            if dirty {
                let (pi, pj) = min_in_cross(&a, t);
                a.swap(pi, t);
                for row in a.iter_mut() {
                    row.swap(pj, t);
                }
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match offender {
                Some(i) => {
                    let src = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&src) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

trait Entry: Clone + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn vanishes(&self) -> bool;
    fn unit_sign(&self) -> Option<bool>;
    /// `self - f · x`, `None` on overflow.
    fn sub_mul(&self, f: &Self, x: &Self) -> Option<Self>;
    fn negated(&self) -> Self;
    fn big(&self) -> BigInt;
}

impl Entry for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn unit_sign(&self) -> Option<bool> {
        match *self {
            1 => Some(true),
            -1 => Some(false),
            _ => None,
        }
    }
    fn sub_mul(&self, f: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(f.checked_mul(*x)?)
    }
    fn negated(&self) -> Self {
        -*self
    }
    fn big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn unit_sign(&self) -> Option<bool> {
        match self.to_i64() {
            Some(1) => Some(true),
            Some(-1) => Some(false),
            _ => None,
        }
    }
    fn sub_mul(&self, f: &Self, x: &Self) -> Option<Self> {
        Some(self - f * x)
    }
    fn negated(&self) -> Self {
        -self
    }
    fn big(&self) -> BigInt {
        self.clone()
    }
}

/// Nonzero invariant factors of a sparse integer matrix, ascending.
///
/// Unit pivots are eliminated sparsely first; whatever is left is handed to
/// a dense Smith form. Arithmetic runs in `i64` and is redone with big
/// integers if any entry would overflow.
pub fn elimination_invariants(m: &SparseMatrix) -> Vec<BigInt> {
    let (units, residual) = match eliminate::<i64>(m) {
        Some(r) => r,
        None => eliminate::<BigInt>(m).expect("big integers do not overflow"),
    };
    let mut out = vec![BigInt::one(); units];
    out.extend(dense_invariants(residual).into_iter().filter(|x| !x.is_zero()));
    out.sort();
    out
}

fn eliminate<T: Entry>(m: &SparseMatrix) -> Option<(usize, IntMatrix)> {
    let mut cols: Vec<Vec<(u32, T)>> =
        m.columns().iter().map(|c| c.iter().map(|&(r, x)| (r, T::from_i64(x))).collect()).collect();
    let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); m.rows()];
    for (j, c) in cols.iter().enumerate() {
        for &(r, _) in c {
            row_cols[r as usize].push(j as u32);
        }
    }
    let mut alive = vec![true; cols.len()];
    let mut stamp = vec![0u32; cols.len()];
    let mut epoch = 0u32;
    let mut order: Vec<usize> = (0..cols.len()).collect();
    order.sort_by_key(|&j| cols[j].len());
    let mut units = 0usize;
    loop {
        let mut progress = false;
        for &c in &order {
            if !alive[c] {
                continue;
            }
            if cols[c].is_empty() {
                alive[c] = false;
                continue;
            }
            let pivot = cols[c]
                .iter()
                .filter_map(|(r, x)| x.unit_sign().map(|pos| (*r, pos)))
                .min_by_key(|(r, _)| row_cols[*r as usize].len());
            let Some((r, positive)) = pivot else { continue };
            epoch += 1;
            let pivot_col = std::mem::take(&mut cols[c]);
            let touching = std::mem::take(&mut row_cols[r as usize]);
            for j in touching {
                let j = j as usize;
                if j == c || !alive[j] || stamp[j] == epoch {
                    continue;
                }
                stamp[j] = epoch;
                let Ok(pos) = cols[j].binary_search_by_key(&r, |e| e.0) else { continue };
                let a = cols[j][pos].1.clone();
                let factor = if positive { a } else { a.negated() };
                let merged = sub_scaled(&cols[j], &factor, &pivot_col)?;
                for (row, _) in &merged {
                    if cols[j].binary_search_by_key(row, |e| e.0).is_err() {
                        row_cols[*row as usize].push(j as u32);
                    }
                }
                cols[j] = merged;
            }
            alive[c] = false;
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live: Vec<usize> = (0..cols.len()).filter(|&j| alive[j] && !cols[j].is_empty()).collect();
    let mut rows: Vec<u32> = live.iter().flat_map(|&j| cols[j].iter().map(|e| e.0)).collect();
    rows.sort_unstable();
    rows.dedup();
    let mut dense = vec![vec![BigInt::zero(); live.len()]; rows.len()];
    for (jj, &j) in live.iter().enumerate() {
        for (r, x) in &cols[j] {
            let i = rows.binary_search(r).expect("row listed");
            dense[i][jj] = x.big();
        }
    }
    Some((units, dense))
}

fn sub_scaled<T: Entry>(a: &[(u32, T)], f: &T, b: &[(u32, T)]) -> Option<Vec<(u32, T)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let zero = T::from_i64(0);
    while i < a.len() || j < b.len() {
        let ra = a.get(i).map(|e| e.0);
        let rb = b.get(j).map(|e| e.0);
        match (ra, rb) {
            (Some(x), Some(y)) if x == y => {
                let v = a[i].1.sub_mul(f, &b[j].1)?;
                if !v.vanishes() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), y) if y.map_or(true, |y| x < y) => {
                out.push(a[i].clone());
                i += 1;
            }
            _ => {
                let v = zero.sub_mul(f, &b[j].1)?;
                if !v.vanishes() {
                    out.push((b[j].0, v));
                }
                j += 1;
            }
        }
    }
    Some(out)
}
