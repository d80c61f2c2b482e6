//! Subsets of a domain of at most 64 points, stored as bitmasks.
//!
//! Bit `i` set means point `i` (0-indexed) is a member. The derived ordering
//! compares masks as integers, which is the order used to pick canonical orbit
//! representatives.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest domain supported by subset-valued operations.
pub const MAX_SUBSET_DOMAIN: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// The whole domain `{0..n-1}`.
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= MAX_SUBSET_DOMAIN);
        if n == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Subset {
        Subset(points.into_iter().fold(0u64, |m, p| m | (1u64 << p)))
    }

    /// Builds a subset after checking every point lies in `{0..n-1}`.
    pub fn try_from_points(n: usize, points: &[usize]) -> Result<Subset> {
        check_domain(n)?;
        let mut mask = 0u64;
        for &p in points {
            if p >= n {
                return Err(Error::InvalidArgument(alloc::format!(
                    "point {} outside domain of size {}",
                    p + 1,
                    n
                )));
            }
            mask |= 1u64 << p;
        }
        Ok(Subset(mask))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, point: usize) -> bool {
        point < 64 && self.0 >> point & 1 == 1
    }

    #[inline]
    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    pub fn to_points(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Points as 1-indexed labels, the convention used by every text format.
    pub fn to_labels(self) -> Vec<usize> {
        self.iter().map(|p| p + 1).collect()
    }
}

/// Rejects domains too large for bitmask subsets.
pub fn check_domain(n: usize) -> Result<()> {
    if n > MAX_SUBSET_DOMAIN {
        Err(Error::DomainTooLarge(n))
    } else {
        Ok(())
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|p| p + 1)).finish()
    }
}

pub struct SubsetIter(u64);

impl Iterator for SubsetIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for SubsetIter {}

/// Iterates all `k`-subsets of `{0..n-1}` in increasing mask order
/// (Gosper's hack).
pub struct KSubsets {
    current: u64,
    limit: u64,
    done: bool,
}

impl KSubsets {
    pub fn new(n: usize, k: usize) -> KSubsets {
        assert!(n < 64, "k-subset iteration supports n < 64");
        if k > n {
            return KSubsets {
                current: 0,
                limit: 0,
                done: true,
            };
        }
        let current = if k == 0 { 0 } else { (1u64 << k) - 1 };
        KSubsets {
            current,
            limit: 1u64 << n,
            done: false,
        }
    }
}

impl Iterator for KSubsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        if self.done {
            return None;
        }
        let out = self.current;
        if out == 0 {
            self.done = true;
            return Some(Subset(0));
        }
        let c = out & out.wrapping_neg();
        let r = out + c;
        let next = (((r ^ out) >> 2) / c) | r;
        if next >= self.limit || r == 0 {
            self.done = true;
        } else {
            self.current = next;
        }
        Some(Subset(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_subsets_count_and_order() {
        let all: Vec<Subset> = KSubsets::new(6, 3).collect();
        assert_eq!(all.len(), 20);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|s| s.len() == 3));
        assert_eq!(KSubsets::new(4, 0).count(), 1);
        assert_eq!(KSubsets::new(4, 4).count(), 1);
        assert_eq!(KSubsets::new(4, 5).count(), 0);
    }

    #[test]
    fn complement_and_points() {
        let s = Subset::from_points([0, 2, 5]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.complement(6), Subset::from_points([1, 3, 4]));
        assert_eq!(s.to_labels(), [1, 3, 6]);
        assert!(Subset::try_from_points(4, &[4]).is_err());
        assert_eq!(Subset::full(64).len(), 64);
    }
}
