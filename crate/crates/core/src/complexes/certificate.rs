use serde::Serialize;

use super::{ComplexError, FinitePoset};

/// How consecutive maps of a contraction compare pointwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Step {
    Equal,
    Below,
    Above,
}

/// Checks a conical contraction of `|p|`: starting from the identity, each
/// map in `maps` must be monotone and pointwise `≤` or pointwise `≥` its
/// predecessor, and the last map must be constant at `target`.
///
/// Returns the comparison direction of each step. Consecutive comparable
/// monotone maps are homotopic on the order complex, so a valid sequence
/// contracts `|p|` onto the point `target`.
pub fn contraction_certificate(p: &FinitePoset, maps: &[Vec<u32>], target: u32) -> Result<Vec<Step>, ComplexError> {
    if p.is_empty() {
        return Err(ComplexError::EmptyPoset);
    }
    if target as usize >= p.len() {
        return Err(ComplexError::UnknownElement(target));
    }
    let identity: Vec<u32> = (0..p.len() as u32).collect();
    let mut prev = &identity;
    let mut steps = Vec::with_capacity(maps.len());
    for (step, g) in maps.iter().enumerate() {
        if g.len() != p.len() {
            return Err(ComplexError::MapLength { step, found: g.len(), expected: p.len() });
        }
        if let Some(&bad) = g.iter().find(|&&v| v as usize >= p.len()) {
            return Err(ComplexError::UnknownElement(bad));
        }
        for a in 0..p.len() as u32 {
            for &b in p.above(a) {
                if !p.le(g[a as usize], g[b as usize]) {
                    return Err(ComplexError::NotMonotone { step, a, b });
                }
            }
        }
        let below = (0..p.len()).all(|w| p.le(g[w], prev[w]));
        let above = (0..p.len()).all(|w| p.le(prev[w], g[w]));
        let dir = match (below, above) {
            (true, true) => Step::Equal,
            (true, false) => Step::Below,
            (false, true) => Step::Above,
            (false, false) => {
                let at = (0..p.len()).find(|&w| !p.comparable(g[w], prev[w])).unwrap_or(0) as u32;
                return Err(ComplexError::NotComparable { step, at });
            }
        };
        steps.push(dir);
        prev = g;
    }
    if prev.iter().any(|&v| v != target) {
        return Err(ComplexError::NotConstant { target });
    }
    Ok(steps)
}
