use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::DyadicError;

/// Deepest subdivision level representable by [`DyadicInterval`].
pub const MAX_LEVEL: u32 = 62;

/// A dyadic rational `k / 2^l` in `[0, 1]`, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: u64,
    exponent: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { numerator: 0, exponent: 0 };
    pub const ONE: Dyadic = Dyadic { numerator: 1, exponent: 0 };

    pub fn new(numerator: u64, exponent: u32) -> Result<Self, DyadicError> {
        if exponent > MAX_LEVEL || numerator > (1u64 << exponent) {
            return Err(DyadicError::OutOfUnitRange { numerator, exponent });
        }
        let (mut k, mut l) = (numerator, exponent);
        if k == 0 {
            l = 0;
        }
        while l > 0 && k % 2 == 0 {
            k /= 2;
            l -= 1;
        }
        Ok(Dyadic { numerator: k, exponent: l })
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.numerator),
            BigInt::one() << self.exponent as usize,
        )
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let l = self.exponent.max(other.exponent);
        let a = (self.numerator as u128) << (l - self.exponent);
        let b = (other.numerator as u128) << (l - other.exponent);
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, 1u64 << self.exponent)
        }
    }
}

/// The half-open dyadic interval `[k/2^l, (k+1)/2^l)`.
///
/// Ordering is lexicographic on the binary address of the interval (the `l`
/// low bits of `k`, most significant first), with a proper prefix sorting
/// before its extensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInterval", into = "RawInterval")]
pub struct DyadicInterval {
    level: u32,
    index: u64,
}

#[derive(Serialize, Deserialize)]
struct RawInterval {
    l: u32,
    k: u64,
}

impl TryFrom<RawInterval> for DyadicInterval {
    type Error = DyadicError;

    fn try_from(raw: RawInterval) -> Result<Self, Self::Error> {
        DyadicInterval::new(raw.l, raw.k)
    }
}

impl From<DyadicInterval> for RawInterval {
    fn from(i: DyadicInterval) -> Self {
        RawInterval { l: i.level, k: i.index }
    }
}

impl DyadicInterval {
    pub const UNIT: DyadicInterval = DyadicInterval { level: 0, index: 0 };

    pub fn new(level: u32, index: u64) -> Result<Self, DyadicError> {
        if level > MAX_LEVEL {
            return Err(DyadicError::LevelTooDeep { level, max: MAX_LEVEL });
        }
        if index >= 1u64 << level {
            return Err(DyadicError::IndexOutOfRange { level, index });
        }
        Ok(DyadicInterval { level, index })
    }

    /// Exponent `l`; the interval has length `2^-l`.
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn lower(&self) -> Dyadic {
        Dyadic::new(self.index, self.level).expect("lower endpoint in range")
    }

    pub fn upper(&self) -> Dyadic {
        Dyadic::new(self.index + 1, self.level).expect("upper endpoint in range")
    }

    pub fn contains(&self, other: &DyadicInterval) -> bool {
        other.level >= self.level && other.index >> (other.level - self.level) == self.index
    }

    /// Dyadic intervals are nested or disjoint, so the intersection is the
    /// deeper of the two or nothing.
    pub fn intersect(&self, other: &DyadicInterval) -> Option<DyadicInterval> {
        if self.contains(other) {
            Some(*other)
        } else if other.contains(self) {
            Some(*self)
        } else {
            None
        }
    }

    pub fn halves(&self) -> Result<(DyadicInterval, DyadicInterval), DyadicError> {
        if self.level >= MAX_LEVEL {
            return Err(DyadicError::LevelTooDeep { level: self.level + 1, max: MAX_LEVEL });
        }
        let l = self.level + 1;
        Ok((
            DyadicInterval { level: l, index: self.index << 1 },
            DyadicInterval { level: l, index: (self.index << 1) | 1 },
        ))
    }

    pub fn parent(&self) -> Option<DyadicInterval> {
        (self.level > 0).then(|| DyadicInterval { level: self.level - 1, index: self.index >> 1 })
    }

    /// The ancestor at `level`, which must not exceed `self.level()`.
    pub fn ancestor(&self, level: u32) -> DyadicInterval {
        assert!(level <= self.level);
        DyadicInterval { level, index: self.index >> (self.level - level) }
    }

    /// Smallest dyadic interval containing both: the longest common prefix of
    /// the two binary addresses.
    pub fn common_ancestor(&self, other: &DyadicInterval) -> DyadicInterval {
        let mut a = self.ancestor(self.level.min(other.level));
        let mut b = other.ancestor(self.level.min(other.level));
        while a != b {
            a = a.parent().expect("unit interval is a common ancestor");
            b = b.parent().expect("unit interval is a common ancestor");
        }
        a
    }

    /// Position of `sub` relative to `self` after rescaling `self` to `[0,1)`.
    pub fn relative(&self, sub: &DyadicInterval) -> Option<DyadicInterval> {
        if !self.contains(sub) {
            return None;
        }
        let r = sub.level - self.level;
        Some(DyadicInterval { level: r, index: sub.index - (self.index << r) })
    }

    /// Image of `rel` (a position relative to `[0,1)`) placed inside `self`.
    pub fn place(&self, rel: &DyadicInterval) -> Result<DyadicInterval, DyadicError> {
        DyadicInterval::new(self.level + rel.level, (self.index << rel.level) + rel.index)
    }

    /// Image of `sub ⊆ from` under the increasing affine bijection `from → to`.
    pub fn transport(
        from: &DyadicInterval,
        to: &DyadicInterval,
        sub: &DyadicInterval,
    ) -> Result<DyadicInterval, DyadicError> {
        let rel = from.relative(sub).ok_or(DyadicError::NotContained)?;
        to.place(&rel)
    }

    pub fn contains_point(&self, x: &BigRational) -> bool {
        if x < &BigRational::zero() || x >= &BigRational::one() {
            return false;
        }
        let scaled = x * BigRational::from_integer(BigInt::one() << self.level as usize);
        scaled.floor().to_integer() == BigInt::from(self.index)
    }

    /// Affine image of the point `x ∈ from` in `to`.
    pub fn transport_point(from: &DyadicInterval, to: &DyadicInterval, x: &BigRational) -> BigRational {
        let offset = x - from.lower().to_rational();
        let scale = BigRational::new(BigInt::one() << to.level as usize, BigInt::one() << from.level as usize);
        to.lower().to_rational() + offset / scale
    }

    fn address_bit(&self, i: u32) -> u64 {
        (self.index >> (self.level - 1 - i)) & 1
    }
}

impl PartialOrd for DyadicInterval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicInterval {
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.level.min(other.level);
        for i in 0..common {
            match self.address_bit(i).cmp(&other.address_bit(i)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.level.cmp(&other.level)
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lower(), self.upper())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(l: u32, k: u64) -> DyadicInterval {
        DyadicInterval::new(l, k).unwrap()
    }

    #[test]
    fn dyadic_is_kept_in_lowest_terms() {
        let d = Dyadic::new(4, 3).unwrap();
        assert_eq!((d.numerator(), d.exponent()), (1, 1));
        assert_eq!(Dyadic::new(0, 5).unwrap(), Dyadic::ZERO);
        assert_eq!(Dyadic::new(8, 3).unwrap(), Dyadic::ONE);
        assert!(Dyadic::new(9, 3).is_err());
        assert!(Dyadic::new(1, 2).unwrap() < Dyadic::new(3, 3).unwrap());
    }

    #[test]
    fn rejects_index_past_end() {
        assert!(DyadicInterval::new(2, 4).is_err());
        assert!(DyadicInterval::new(MAX_LEVEL + 1, 0).is_err());
    }

    #[test]
    fn containment_and_intersection() {
        let half = iv(1, 0);
        let q = iv(2, 1);
        assert!(half.contains(&q));
        assert!(!q.contains(&half));
        assert_eq!(half.intersect(&q), Some(q));
        assert_eq!(iv(1, 1).intersect(&q), None);
    }

    #[test]
    fn common_ancestor_is_longest_prefix() {
        assert_eq!(iv(2, 0).common_ancestor(&iv(2, 1)), iv(1, 0));
        assert_eq!(iv(2, 1).common_ancestor(&iv(2, 2)), DyadicInterval::UNIT);
        assert_eq!(iv(3, 5).common_ancestor(&iv(1, 1)), iv(1, 1));
    }

    #[test]
    fn transport_between_intervals() {
        // [1/4,1/2) inside [0,1/2) goes to the top half of [3/4,1).
        let img = DyadicInterval::transport(&iv(1, 0), &iv(2, 3), &iv(2, 1)).unwrap();
        assert_eq!(img, iv(3, 7));
    }

    #[test]
    fn address_order() {
        assert!(iv(1, 0) < iv(2, 0));
        assert!(iv(2, 0) < iv(2, 1));
        assert!(iv(2, 1) < iv(1, 1));
        assert!(DyadicInterval::UNIT < iv(1, 0));
    }

    #[test]
    fn point_membership_is_half_open() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert!(iv(1, 0).contains_point(&r(0, 1)));
        assert!(!iv(1, 0).contains_point(&r(1, 2)));
        assert!(iv(1, 1).contains_point(&r(1, 2)));
        assert!(!DyadicInterval::UNIT.contains_point(&r(1, 1)));
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&iv(2, 3)).unwrap();
        assert_eq!(s, r#"{"l":2,"k":3}"#);
        assert!(serde_json::from_str::<DyadicInterval>(r#"{"l":1,"k":2}"#).is_err());
    }
}
