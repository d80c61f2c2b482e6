//! Subgroups of prime order, grouped by prime and cycle statistics.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::PermutationGroup;
use crate::error::Result;
use crate::perm::Permutation;

/// Largest group order enumerated element by element.
pub const DEFAULT_ELEMENT_LIMIT: u64 = 10_000_000;

/// Prime-order subgroups of one `(prime, fix, orbit count)` type. All
/// non-identity elements of such a subgroup share the cycle statistics of its
/// generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeOrderClass {
    pub prime: u64,
    pub representative: Permutation,
    pub subgroup_count: BigUint,
    pub fix_count: usize,
    pub orbit_count: usize,
}

impl PrimeOrderClass {
    /// `subgroup_count * 2^orbit_count`: invariant subsets summed over the
    /// subgroups of this class.
    pub fn invariant_subset_sum(&self) -> BigUint {
        &self.subgroup_count << self.orbit_count
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeOrderClassTable {
    /// Sorted by `(prime, fix_count, orbit_count)`.
    pub entries: Vec<PrimeOrderClass>,
    pub total_subgroups: BigUint,
}

impl PrimeOrderClassTable {
    /// Upper bound on the number of subsets fixed by some non-identity
    /// element: every such subset is invariant under a subgroup of prime
    /// order.
    pub fn fixed_subset_bound(&self) -> BigUint {
        self.entries.iter().map(PrimeOrderClass::invariant_subset_sum).sum()
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.entries.iter().map(|e| e.prime).collect();
        ps.dedup();
        ps
    }
}

impl PermutationGroup {
    /// Exhaustive census of prime-order subgroups by element enumeration.
    pub fn prime_order_classes(&self, element_limit: u64) -> Result<PrimeOrderClassTable> {
        let mut census: BTreeMap<(u64, usize, usize), (u64, Permutation)> = BTreeMap::new();
        for g in self.elements(element_limit)? {
            let Some(p) = g.prime_order() else { continue };
            let key = (p, g.fix_count(), g.orbit_count());
            census.entry(key).or_insert_with(|| (0, g.clone())).0 += 1;
        }
        let mut total = BigUint::zero();
        let entries = census
            .into_iter()
            .map(|((p, fix, orb), (elements, rep))| {
                debug_assert!(elements % (p - 1) == 0);
                let count = BigUint::from(elements / (p - 1));
                total += &count;
                PrimeOrderClass {
                    prime: p,
                    representative: rep,
                    subgroup_count: count,
                    fix_count: fix,
                    orbit_count: orb,
                }
            })
            .collect();
        Ok(PrimeOrderClassTable {
            entries,
            total_subgroups: total,
        })
    }

    /// Number of elements of prime order.
    pub fn prime_order_element_count(&self, element_limit: u64) -> Result<BigUint> {
        let mut n = BigUint::zero();
        for g in self.elements(element_limit)? {
            if g.prime_order().is_some() {
                n += BigUint::one();
            }
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_five() {
        let c5 = PermutationGroup::cyclic(5).unwrap();
        let t = c5.prime_order_classes(DEFAULT_ELEMENT_LIMIT).unwrap();
        assert_eq!(t.entries.len(), 1);
        let e = &t.entries[0];
        assert_eq!((e.prime, e.fix_count, e.orbit_count), (5, 0, 1));
        assert_eq!(e.subgroup_count, BigUint::from(1u32));
        assert_eq!(t.total_subgroups, BigUint::from(1u32));
    }

    #[test]
    fn sym4_census() {
        let s4 = PermutationGroup::symmetric(4).unwrap();
        let t = s4.prime_order_classes(DEFAULT_ELEMENT_LIMIT).unwrap();
        // 6 transpositions, 3 double transpositions, 4 subgroups of order 3.
        let counts: Vec<(u64, usize, u64)> = t
            .entries
            .iter()
            .map(|e| (e.prime, e.fix_count, e.subgroup_count.clone().try_into().unwrap()))
            .collect();
        assert_eq!(counts, [(2, 0, 3), (2, 2, 6), (3, 1, 4)]);
        assert_eq!(t.total_subgroups, BigUint::from(13u32));
        assert_eq!(t.primes(), [2, 3]);
        // Elements: 9 of order 2, 8 of order 3 → 9 + 8/2 subgroups.
        assert_eq!(s4.prime_order_element_count(100).unwrap(), BigUint::from(17u32));
    }

    #[test]
    fn representatives_match_keys() {
        let g = PermutationGroup::symmetric(6).unwrap();
        let t = g.prime_order_classes(DEFAULT_ELEMENT_LIMIT).unwrap();
        for e in &t.entries {
            assert_eq!(e.representative.prime_order(), Some(e.prime));
            assert_eq!(e.representative.fix_count(), e.fix_count);
            assert_eq!(e.representative.orbit_count(), e.orbit_count);
        }
    }
}
