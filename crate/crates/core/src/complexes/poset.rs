use std::collections::BTreeSet;

use super::ComplexError;

/// A finite poset on `0..len()` with the strict order stored transitively
/// closed, as sorted up-sets and down-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    up: Vec<Vec<u32>>,
    down: Vec<Vec<u32>>,
}

impl FinitePoset {
    /// From arbitrary strict relations `a < b`, taking the transitive
    /// closure. Fails on cycles.
    pub fn from_relations(len: usize, relations: &[(u32, u32)]) -> Result<Self, ComplexError> {
        let mut succ = vec![Vec::new(); len];
        for &(a, b) in relations {
            if a as usize >= len || b as usize >= len {
                return Err(ComplexError::UnknownElement(a.max(b)));
            }
            if a == b {
                return Err(ComplexError::NotAntisymmetric(a, b));
            }
            succ[a as usize].push(b);
        }
        let mut up = Vec::with_capacity(len);
        for a in 0..len {
            let mut seen = BTreeSet::new();
            let mut stack: Vec<u32> = succ[a].clone();
            while let Some(x) = stack.pop() {
                if seen.insert(x) {
                    stack.extend(&succ[x as usize]);
                }
            }
            if seen.contains(&(a as u32)) {
                return Err(ComplexError::NotAntisymmetric(a as u32, a as u32));
            }
            up.push(seen.into_iter().collect());
        }
        Ok(Self::from_closed_upsets(up))
    }

    /// From already transitively closed strict up-sets.
    pub fn from_upsets(up: Vec<Vec<u32>>) -> Result<Self, ComplexError> {
        let p = Self::from_closed_upsets(up);
        for a in 0..p.len() as u32 {
            for &b in p.above(a) {
                if b == a || p.lt(b, a) {
                    return Err(ComplexError::NotAntisymmetric(a, b));
                }
                for &c in p.above(b) {
                    if !p.lt(a, c) {
                        return Err(ComplexError::NotTransitive(a, b, c));
                    }
                }
            }
        }
        Ok(p)
    }

    pub(crate) fn from_closed_upsets(mut up: Vec<Vec<u32>>) -> Self {
        let mut down = vec![Vec::new(); up.len()];
        for (a, ups) in up.iter_mut().enumerate() {
            ups.sort_unstable();
            ups.dedup();
            for &b in ups.iter() {
                down[b as usize].push(a as u32);
            }
        }
        FinitePoset { up, down }
    }

    pub fn antichain(len: usize) -> Self {
        Self::from_closed_upsets(vec![Vec::new(); len])
    }

    pub fn chain(len: usize) -> Self {
        Self::from_closed_upsets((0..len as u32).map(|a| (a + 1..len as u32).collect()).collect())
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    /// Elements strictly above `a`.
    pub fn above(&self, a: u32) -> &[u32] {
        &self.up[a as usize]
    }

    /// Elements strictly below `a`.
    pub fn below(&self, a: u32) -> &[u32] {
        &self.down[a as usize]
    }

    pub fn lt(&self, a: u32, b: u32) -> bool {
        self.up[a as usize].binary_search(&b).is_ok()
    }

    pub fn le(&self, a: u32, b: u32) -> bool {
        a == b || self.lt(a, b)
    }

    pub fn comparable(&self, a: u32, b: u32) -> bool {
        self.le(a, b) || self.lt(b, a)
    }

    pub fn relation_count(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    /// The induced subposet on `elements` (in the given order), together
    /// with the list of original ids.
    pub fn subposet(&self, elements: &[u32]) -> (FinitePoset, Vec<u32>) {
        let mut pos = vec![u32::MAX; self.len()];
        for (i, &e) in elements.iter().enumerate() {
            pos[e as usize] = i as u32;
        }
        let up = elements
            .iter()
            .map(|&e| self.above(e).iter().filter_map(|&b| (pos[b as usize] != u32::MAX).then(|| pos[b as usize])).collect())
            .collect();
        (Self::from_closed_upsets(up), elements.to_vec())
    }

    /// Elements `w` with `a < w < b`.
    pub fn open_interval(&self, a: u32, b: u32) -> Vec<u32> {
        self.above(a).iter().copied().filter(|&w| self.lt(w, b)).collect()
    }

    pub fn minimal_elements(&self) -> Vec<u32> {
        (0..self.len() as u32).filter(|&a| self.down[a as usize].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<u32> {
        (0..self.len() as u32).filter(|&a| self.up[a as usize].is_empty()).collect()
    }

    /// The opposite order.
    pub fn opposite(&self) -> FinitePoset {
        FinitePoset { up: self.down.clone(), down: self.up.clone() }
    }
}
