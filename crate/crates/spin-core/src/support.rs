use crate::error::{CoreError, Result};

/// A closed integer interval `[s, r]` of signed sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Support {
    pub s: i64,
    pub r: i64,
}

impl Support {
    pub fn new(s: i64, r: i64) -> Result<Self> {
        if s > r {
            return Err(CoreError::EmptySupport { s, r });
        }
        Ok(Self { s, r })
    }

    pub fn site(i: i64) -> Self {
        Self { s: i, r: i }
    }

    pub fn chain(l: usize) -> Self {
        Self { s: -(l as i64), r: l as i64 }
    }

    pub fn len(&self) -> usize {
        (self.r - self.s + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: i64) -> bool {
        self.s <= i && i <= self.r
    }

    pub fn contains_support(&self, other: &Support) -> bool {
        self.s <= other.s && other.r <= self.r
    }

    pub fn sites(&self) -> impl Iterator<Item = i64> {
        self.s..=self.r
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Support) -> Support {
        Support { s: self.s.min(other.s), r: self.r.max(other.r) }
    }

    /// Intersection, if nonempty.
    pub fn intersect(&self, other: &Support) -> Option<Support> {
        let s = self.s.max(other.s);
        let r = self.r.min(other.r);
        (s <= r).then_some(Support { s, r })
    }

    /// Lattice distance between two intervals (0 when they overlap).
    pub fn dist(&self, other: &Support) -> i64 {
        if self.r < other.s {
            other.s - self.r
        } else if other.r < self.s {
            self.s - other.r
        } else {
            0
        }
    }

    /// `[s - ell, r + ell]` clipped to the chain.
    pub fn widen(&self, ell: f64, l: usize) -> Support {
        let lo = (self.s as f64 - ell).ceil() as i64;
        let hi = (self.r as f64 + ell).floor() as i64;
        Support { s: lo.max(-(l as i64)), r: hi.min(l as i64) }
    }

    /// Bit mask of the interval in the configuration encoding of a chain of half-length `l`.
    pub fn mask(&self, l: usize) -> u64 {
        let lo = (self.s + l as i64) as u32;
        let n = self.len() as u32;
        let ones = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
        ones << lo
    }

    pub fn check_in_chain(&self, l: usize) -> Result<()> {
        let l_i = l as i64;
        if self.s < -l_i {
            return Err(CoreError::SiteOutOfRange { site: self.s, l });
        }
        if self.r > l_i {
            return Err(CoreError::SiteOutOfRange { site: self.r, l });
        }
        Ok(())
    }
}

impl std::fmt::Display for Support {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.s, self.r)
    }
}
