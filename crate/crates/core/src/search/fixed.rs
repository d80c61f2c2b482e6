//! Exact census of subsets fixed set-wise by some non-identity element.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use hashbrown::HashSet;
use num_bigint::BigUint;

use super::{Bitmap, SearchConfig};
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;
use crate::subset::{check_domain, Subset};

/// Orders up to which `Auto` marks invariant subsets element by element.
const ELEMENT_MODE_ORDER: u64 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixedFamilyMode {
    /// Elements for small groups, orbit lengths otherwise.
    Auto,
    /// Marks the unions of cycles of every prime-order element.
    Elements,
    /// Marks every subset lying in an orbit shorter than `|M|`.
    OrbitLengths,
}

/// Prime-order subgroups of one `(prime, fix, orbit count)` type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassContribution {
    pub prime: u64,
    pub fix_count: usize,
    pub orbit_count: usize,
    pub subgroup_count: BigUint,
    /// `subgroup_count * 2^orbit_count`.
    pub bound: BigUint,
    /// Subsets first marked by this class when classes are processed in
    /// table order. Only known in element mode.
    pub newly_fixed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedFamilyReport {
    pub degree: usize,
    pub total_fixed: BigUint,
    /// Per-class data for single groups; empty for unions over overgroups.
    pub by_class: Vec<ClassContribution>,
    pub has_regular_orbit: bool,
    /// Smallest subset with trivial stabilizer in every group considered.
    pub regular_subset_witness: Option<Subset>,
}

/// Marks every union of the given disjoint cycle masks (Gray code order).
fn mark_unions(bitmap: &mut Bitmap, cycles: &[u64]) -> u64 {
    let mut mask = 0u64;
    let mut newly = bitmap.set(0) as u64;
    for i in 1u64..(1u64 << cycles.len()) {
        mask ^= cycles[i.trailing_zeros() as usize];
        newly += bitmap.set(mask) as u64;
    }
    newly
}

fn cycle_masks(g: &Permutation) -> Vec<u64> {
    let mut masks: Vec<u64> = g
        .cycle_data()
        .cycles
        .iter()
        .map(|c| Subset::from_points(c.iter().copied()).0)
        .collect();
    masks.sort_unstable();
    masks
}

fn check_bitmap(n: usize, config: &SearchConfig) -> Result<()> {
    check_domain(n)?;
    if n > config.exhaustive_limit {
        return Err(Error::LimitExceeded {
            what: "fixed-family bitmap degree",
            value: n,
            limit: config.exhaustive_limit,
        });
    }
    Ok(())
}

type ClassKey = (u64, usize, usize);

/// Distinct orbit partitions of prime-order elements, grouped by class.
fn partitions_by_class(
    group: &PermutationGroup,
    config: &SearchConfig,
) -> Result<BTreeMap<ClassKey, (u64, HashSet<Vec<u64>>)>> {
    let mut classes: BTreeMap<ClassKey, (u64, HashSet<Vec<u64>>)> = BTreeMap::new();
    for g in group.elements(config.element_limit)? {
        let Some(p) = g.prime_order() else { continue };
        let entry = classes
            .entry((p, g.fix_count(), g.orbit_count()))
            .or_insert_with(|| (0, HashSet::new()));
        entry.0 += 1;
        entry.1.insert(cycle_masks(&g));
    }
    Ok(classes)
}

fn element_bitmap(group: &PermutationGroup, config: &SearchConfig) -> Result<(Bitmap, Vec<ClassContribution>)> {
    let mut bitmap = Bitmap::new(group.degree());
    let mut by_class = Vec::new();
    for ((p, fix, orb), (elements, partitions)) in partitions_by_class(group, config)? {
        let mut partitions: Vec<Vec<u64>> = partitions.into_iter().collect();
        partitions.sort_unstable();
        let newly: u64 = partitions.iter().map(|c| mark_unions(&mut bitmap, c)).sum();
        let subgroup_count = BigUint::from(elements / (p - 1));
        by_class.push(ClassContribution {
            prime: p,
            fix_count: fix,
            orbit_count: orb,
            bound: &subgroup_count << orb,
            subgroup_count,
            newly_fixed: Some(newly),
        });
    }
    Ok((bitmap, by_class))
}

/// Marks the members of every subset orbit of length below `|M|`.
fn orbit_bitmap(group: &PermutationGroup) -> Bitmap {
    let n = group.degree();
    let order = group.order_u64();
    let mut seen = Bitmap::new(n);
    let mut fixed = Bitmap::new(n);
    let mut orbit: Vec<u64> = Vec::new();
    for start in 0u64..(1u64 << n) {
        if seen.get(start) {
            continue;
        }
        seen.set(start);
        orbit.clear();
        orbit.push(start);
        let mut head = 0;
        while head < orbit.len() {
            let s = orbit[head];
            head += 1;
            for g in group.generators() {
                let t = g.apply_subset(Subset(s)).0;
                if seen.set(t) {
                    orbit.push(t);
                }
            }
        }
        if order.map_or(true, |o| (orbit.len() as u64) < o) {
            for &s in &orbit {
                fixed.set(s);
            }
        }
    }
    fixed
}

fn bitmap_for(
    group: &PermutationGroup,
    config: &SearchConfig,
    mode: FixedFamilyMode,
) -> Result<(Bitmap, Vec<ClassContribution>)> {
    let use_elements = match mode {
        FixedFamilyMode::Elements => true,
        FixedFamilyMode::OrbitLengths => false,
        FixedFamilyMode::Auto => group
            .order_u64()
            .is_some_and(|o| o <= ELEMENT_MODE_ORDER.min(config.element_limit)),
    };
    if use_elements {
        element_bitmap(group, config)
    } else {
        Ok((orbit_bitmap(group), Vec::new()))
    }
}

fn report(n: usize, bitmap: &Bitmap, by_class: Vec<ClassContribution>) -> FixedFamilyReport {
    let total = bitmap.count_ones();
    let witness = bitmap.first_clear(1u64 << n).map(Subset);
    FixedFamilyReport {
        degree: n,
        total_fixed: BigUint::from(total),
        by_class,
        has_regular_orbit: witness.is_some(),
        regular_subset_witness: witness,
    }
}

/// The family of subsets fixed by some non-identity element of `group`.
pub fn fixed_family(
    group: &PermutationGroup,
    config: &SearchConfig,
    mode: FixedFamilyMode,
) -> Result<FixedFamilyReport> {
    if group.is_trivial() {
        return Err(Error::TrivialGroup);
    }
    let n = group.degree();
    check_bitmap(n, config)?;
    let (bitmap, by_class) = bitmap_for(group, config, mode)?;
    Ok(report(n, &bitmap, by_class))
}

/// Union of the fixed families of `overgroups`, each of which must contain
/// `group`.
pub fn s_family(
    group: &PermutationGroup,
    overgroups: &[PermutationGroup],
    config: &SearchConfig,
    mode: FixedFamilyMode,
) -> Result<FixedFamilyReport> {
    let n = group.degree();
    check_bitmap(n, config)?;
    for (i, m) in overgroups.iter().enumerate() {
        if !m.contains_group(group) {
            return Err(Error::NotAnOvergroup(i));
        }
        if m.is_trivial() {
            return Err(Error::TrivialGroup);
        }
    }
    let mut union = Bitmap::new(n);
    for m in overgroups {
        let (b, _) = bitmap_for(m, config, mode)?;
        union.or_assign(&b);
    }
    let by_class = match overgroups {
        [single] => bitmap_for(single, config, mode)?.1,
        _ => Vec::new(),
    };
    Ok(report(n, &union, by_class))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn group(n: usize, gens: &[&str]) -> PermutationGroup {
        PermutationGroup::from_generators(
            n,
            gens.iter().map(|s| Permutation::parse(n, s).unwrap()).collect(),
        )
        .unwrap()
    }

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    /// Direct oracle: a subset is fixed iff some non-identity element
    /// stabilizes it.
    fn brute_fixed(g: &PermutationGroup) -> u64 {
        let elems: Vec<Permutation> = g.elements(1 << 20).unwrap().filter(|e| !e.is_identity()).collect();
        (0u64..(1 << g.degree()))
            .filter(|&m| elems.iter().any(|e| e.apply_subset(Subset(m)) == Subset(m)))
            .count() as u64
    }

    #[test]
    fn cyclic_five() {
        let c5 = PermutationGroup::cyclic(5).unwrap();
        let r = fixed_family(&c5, &cfg(), FixedFamilyMode::Auto).unwrap();
        assert_eq!(r.total_fixed, BigUint::from(2u32));
        assert!(r.has_regular_orbit);
        assert!(r.regular_subset_witness.is_some());
    }

    #[test]
    fn agl15_and_sym4_have_no_regular_orbit() {
        let agl = group(5, &["(1,2,3,4,5)", "(2,3,5,4)"]);
        assert_eq!(agl.order_u64(), Some(20));
        for mode in [FixedFamilyMode::Elements, FixedFamilyMode::OrbitLengths] {
            let r = fixed_family(&agl, &cfg(), mode).unwrap();
            assert!(!r.has_regular_orbit);
            assert_eq!(r.total_fixed, BigUint::from(32u32));
        }
        let s4 = PermutationGroup::symmetric(4).unwrap();
        assert!(!fixed_family(&s4, &cfg(), FixedFamilyMode::Auto).unwrap().has_regular_orbit);
    }

    #[test]
    fn modes_agree_with_brute_force() {
        let samples = [
            group(7, &["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"]),
            group(8, &["(1,2,3,4,5,6,7,8)"]),
            group(9, &["(1,2,3)(4,5,6)(7,8,9)", "(1,4,7)(2,5,8)(3,6,9)", "(2,4)(3,7)(6,8)"]),
            group(6, &["(1,2)(3,4)", "(1,3)(2,4)"]),
        ];
        for g in &samples {
            let a = fixed_family(g, &cfg(), FixedFamilyMode::Elements).unwrap();
            let b = fixed_family(g, &cfg(), FixedFamilyMode::OrbitLengths).unwrap();
            assert_eq!(a.total_fixed, b.total_fixed);
            assert_eq!(a.regular_subset_witness, b.regular_subset_witness);
            assert_eq!(a.total_fixed.to_u64().unwrap(), brute_fixed(g));
            let bound: BigUint = a.by_class.iter().map(|c| &c.bound).sum();
            assert!(a.total_fixed <= bound);
            let newly: u64 = a.by_class.iter().map(|c| c.newly_fixed.unwrap()).sum();
            assert_eq!(BigUint::from(newly), a.total_fixed);
        }
    }

    #[test]
    fn s_family_unions() {
        let c5 = PermutationGroup::cyclic(5).unwrap();
        let single = s_family(&c5, &[c5.clone()], &cfg(), FixedFamilyMode::Auto).unwrap();
        assert_eq!(single, fixed_family(&c5, &cfg(), FixedFamilyMode::Auto).unwrap());
        let s5 = PermutationGroup::symmetric(5).unwrap();
        let all = s_family(&c5, &[s5], &cfg(), FixedFamilyMode::Auto).unwrap();
        assert_eq!(all.total_fixed, BigUint::from(32u32));
        let d5 = group(5, &["(1,2,3,4,5)", "(2,5)(3,4)"]);
        let c2 = group(5, &["(1,2)"]);
        assert_eq!(
            s_family(&c5, &[d5, c2], &cfg(), FixedFamilyMode::Auto),
            Err(Error::NotAnOvergroup(1))
        );
    }

    #[test]
    fn trivial_group_is_rejected() {
        let t = PermutationGroup::trivial(4).unwrap();
        assert_eq!(
            fixed_family(&t, &cfg(), FixedFamilyMode::Auto),
            Err(Error::TrivialGroup)
        );
    }
}
