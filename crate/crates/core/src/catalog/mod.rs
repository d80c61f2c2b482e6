//! A self-verifying catalog of small transitive permutation groups.
//!
//! Entries carry explicit generators together with the order and primitivity
//! they are expected to have. [`Catalog::new`] recomputes both for every entry
//! and refuses to load on the first disagreement.

mod field;
mod recipes;
mod standard;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;

pub use field::{Gf, MAX_FIELD_ORDER};
pub use recipes::{ProjectiveKind, Recipe};
pub use standard::{standard_definitions, synthesize_standard, Definition};

/// Version of the serialized catalog layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Largest order for which fingerprints include a full cycle-type census.
pub const FINGERPRINT_ELEMENT_LIMIT: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: usize,
    /// 1-indexed cycle strings.
    pub generators: Vec<String>,
    pub expected_order: BigUint,
    pub expected_primitive: bool,
    /// Informational structure label such as `HA` or `AS`.
    pub onan_scott_tag: String,
    pub table1_member: bool,
    /// Textual [`Recipe`] the generators were synthesized from.
    pub recipe: Option<String>,
    pub note: Option<String>,
}

impl CatalogEntry {
    /// Runs `recipe` and packages its generators as an unverified entry.
    pub fn from_recipe(
        name: &str,
        recipe: &Recipe,
        expected_order: BigUint,
        expected_primitive: bool,
        onan_scott_tag: &str,
        table1_member: bool,
    ) -> Result<CatalogEntry> {
        let degree = recipe.degree()?;
        let generators = recipe
            .synthesize()
            .map_err(|e| Error::CatalogVerification {
                name: name.to_string(),
                degree,
                reason: e.to_string(),
            })?
            .iter()
            .map(ToString::to_string)
            .collect();
        Ok(CatalogEntry {
            name: name.to_string(),
            degree,
            generators,
            expected_order,
            expected_primitive,
            onan_scott_tag: onan_scott_tag.to_string(),
            table1_member,
            recipe: Some(recipe.to_string()),
            note: None,
        })
    }

    /// `name@degree`.
    pub fn label(&self) -> String {
        format!("{}@{}", self.name, self.degree)
    }

    /// True iff the name claims the full alternating or symmetric group.
    pub fn is_named_giant(&self) -> bool {
        self.name == format!("Alt({})", self.degree) || self.name == format!("Sym({})", self.degree)
    }

    fn fail(&self, reason: impl Into<String>) -> Error {
        Error::CatalogVerification {
            name: self.name.clone(),
            degree: self.degree,
            reason: reason.into(),
        }
    }

    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        self.generators
            .iter()
            .map(|g| Permutation::parse(self.degree, g).map_err(|e| self.fail(e.to_string())))
            .collect()
    }

    /// Builds the group and checks order, transitivity, primitivity and
    /// the naming of groups containing the alternating group.
    pub fn verify(&self) -> Result<PermutationGroup> {
        if self.degree == 0 {
            return Err(self.fail("degree must be positive"));
        }
        let group = PermutationGroup::from_generators(self.degree, self.permutations()?)
            .map_err(|e| self.fail(e.to_string()))?;
        if *group.order() != self.expected_order {
            return Err(self.fail(format!(
                "order {} differs from expected {}",
                group.order(),
                self.expected_order
            )));
        }
        if !group.is_transitive() {
            return Err(self.fail("group is not transitive"));
        }
        if group.is_primitive() != self.expected_primitive {
            return Err(self.fail(format!(
                "primitivity is {}, expected {}",
                group.is_primitive(),
                self.expected_primitive
            )));
        }
        // C2 = Sym(2) and C3 = Alt(3), so names are only checked from degree 4.
        let giant = group.contains_alternating() && self.degree >= 4;
        if self.degree >= 4 && giant != self.is_named_giant() {
            return Err(self.fail(if giant {
                "contains the alternating group but is not named Alt/Sym"
            } else {
                "named Alt/Sym but is smaller"
            }));
        }
        if self.name.starts_with("Alt(") && giant {
            let perms = self.permutations()?;
            if !perms.iter().all(Permutation::is_even) {
                return Err(self.fail("odd generator in an alternating group"));
            }
        }
        if self.name.starts_with("Sym(") && giant && self.degree >= 2 {
            let perms = self.permutations()?;
            if perms.iter().all(Permutation::is_even) {
                return Err(self.fail("all generators even in a symmetric group"));
            }
        }
        Ok(group)
    }
}

/// Verified entries and their groups, immutable after construction.
#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    groups: Vec<PermutationGroup>,
    index: BTreeMap<(String, usize), usize>,
}

impl Catalog {
    /// Verifies every entry; fails on the first bad or duplicated entry.
    pub fn new(entries: Vec<CatalogEntry>) -> Result<Catalog> {
        let mut index = BTreeMap::new();
        let mut groups = Vec::with_capacity(entries.len());
        for (i, e) in entries.iter().enumerate() {
            if index.insert((e.name.clone(), e.degree), i).is_some() {
                return Err(e.fail("duplicate name and degree"));
            }
            groups.push(e.verify()?);
        }
        Ok(Catalog {
            entries,
            groups,
            index,
        })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries paired with their verified groups.
    pub fn iter(&self) -> impl Iterator<Item = (&CatalogEntry, &PermutationGroup)> {
        self.entries.iter().zip(&self.groups)
    }

    pub fn find(&self, name: &str, degree: usize) -> Result<(&CatalogEntry, &PermutationGroup)> {
        self.index
            .get(&(name.to_string(), degree))
            .map(|&i| (&self.entries[i], &self.groups[i]))
            .ok_or_else(|| Error::NotFound(name.to_string(), degree))
    }

    /// Looks up `name@degree`, or a bare `name` carried by exactly one entry.
    pub fn find_label(&self, label: &str) -> Result<(&CatalogEntry, &PermutationGroup)> {
        if let Some((name, deg)) = label.rsplit_once('@') {
            if let Ok(d) = deg.parse() {
                return self.find(name, d);
            }
        }
        let mut hits = self.iter().filter(|(e, _)| e.name == label);
        match (hits.next(), hits.next()) {
            (Some(hit), None) => Ok(hit),
            (Some(_), Some(_)) => Err(Error::InvalidArgument(format!(
                "{label:?} names several entries; add @degree"
            ))),
            _ => Err(Error::NotFound(label.to_string(), 0)),
        }
    }

    /// Primitive entries of the given degree not containing the
    /// alternating group.
    pub fn proper_primitive(&self, degree: usize) -> impl Iterator<Item = (&CatalogEntry, &PermutationGroup)> {
        self.iter()
            .filter(move |(e, _)| e.degree == degree && e.expected_primitive && !e.is_named_giant())
    }
}

/// Invariants used to tell catalog groups apart without isomorphism tests.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint {
    pub degree: usize,
    pub order: BigUint,
    pub abelian: bool,
    pub transitivity: usize,
    /// `(prime, fixed points, element count)` over elements of prime order.
    pub prime_order_stats: Option<Vec<(u64, usize, u64)>>,
    /// `(sorted cycle lengths, element count)` over all elements.
    pub cycle_types: Option<Vec<(Vec<usize>, u64)>>,
}

impl Fingerprint {
    /// Element statistics are filled in when the order is at most
    /// [`FINGERPRINT_ELEMENT_LIMIT`].
    pub fn of(group: &PermutationGroup) -> Result<Fingerprint> {
        let gens = group.generators();
        let abelian = gens
            .iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.then(b) == b.then(a)));
        let small = group.order_u64().is_some_and(|o| o <= FINGERPRINT_ELEMENT_LIMIT);
        let (mut prime_order_stats, mut cycle_types) = (None, None);
        if small {
            let mut types: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
            let mut primes: BTreeMap<(u64, usize), u64> = BTreeMap::new();
            for g in group.elements(FINGERPRINT_ELEMENT_LIMIT)? {
                let mut lens = g.cycle_lengths();
                lens.sort_unstable();
                if let Some(p) = g.prime_order() {
                    *primes.entry((p, g.fix_count())).or_default() += 1;
                }
                *types.entry(lens).or_default() += 1;
            }
            prime_order_stats = Some(primes.into_iter().map(|((p, f), c)| (p, f, c)).collect());
            cycle_types = Some(types.into_iter().collect());
        }
        Ok(Fingerprint {
            degree: group.degree(),
            order: group.order().clone(),
            abelian,
            transitivity: group.transitivity_degree()?,
            prime_order_stats,
            cycle_types,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn catalog() -> Catalog {
        Catalog::new(synthesize_standard().unwrap()).unwrap()
    }

    #[test]
    fn standard_catalog_verifies() {
        let c = catalog();
        let degree5: Vec<&str> = c
            .iter()
            .filter(|(e, _)| e.degree == 5)
            .map(|(e, _)| e.name.as_str())
            .collect();
        assert_eq!(degree5, ["C5", "D5", "AGL(1,5)", "Alt(5)", "Sym(5)"]);
        let (e, g) = c.find("PSL(3,4)", 21).unwrap();
        assert!(e.expected_primitive);
        assert_eq!(g.order_u64(), Some(20160));
    }

    #[test]
    fn primitive_counts_per_degree() {
        // Classical counts of primitive groups of degrees 5 to 12.
        let c = catalog();
        let counts: Vec<usize> = (5..=12)
            .map(|d| c.iter().filter(|(e, _)| e.degree == d && e.expected_primitive).count())
            .collect();
        assert_eq!(counts, [5, 4, 7, 7, 11, 9, 8, 6]);
    }

    #[test]
    fn sixteen_flagged_exceptions() {
        let c = catalog();
        let flagged: Vec<String> = c.iter().filter(|(e, _)| e.table1_member).map(|(e, _)| e.label()).collect();
        assert_eq!(flagged.len(), 16);
        let degree9: BTreeSet<&str> = c
            .iter()
            .filter(|(e, _)| e.table1_member && e.degree == 9)
            .map(|(e, _)| e.name.as_str())
            .collect();
        let expected: BTreeSet<&str> =
            ["(C3xC3):C4", "AGL(1,9)", "(C3xC3):Q8", "ASL(2,3)", "PSL(2,8)", "PGammaL(2,8)"].into();
        assert_eq!(degree9, expected);
        assert!(c.find("PSL(2,7)", 8).unwrap().0.table1_member);
        assert!(!c.find("PSL(2,7)", 7).unwrap().0.table1_member);
    }

    #[test]
    fn fingerprints_separate_small_degrees() {
        let c = catalog();
        for d in 5..=12 {
            let prints: Vec<Fingerprint> = c
                .iter()
                .filter(|(e, g)| e.degree == d && g.order_u64().is_some_and(|o| o <= FINGERPRINT_ELEMENT_LIMIT))
                .map(|(_, g)| Fingerprint::of(g).unwrap())
                .collect();
            let distinct: BTreeSet<&Fingerprint> = prints.iter().collect();
            assert_eq!(distinct.len(), prints.len(), "degree {d}");
        }
    }

    #[test]
    fn lookup_by_label() {
        let c = catalog();
        assert_eq!(c.find_label("PSL(2,7)@8").unwrap().0.degree, 8);
        assert_eq!(c.find_label("PSL(3,4)").unwrap().0.degree, 21);
        assert!(c.find_label("PSL(2,7)").is_err());
        assert!(c.find_label("M11").is_err());
        assert_eq!(c.find("C5", 6).unwrap_err(), Error::NotFound("C5".into(), 6));
    }

    #[test]
    fn verification_rejects_bad_entries() {
        let good = catalog().find("AGL(1,5)", 5).unwrap().0.clone();
        let mut e = good.clone();
        e.expected_order = BigUint::from(10u32);
        assert!(matches!(e.verify(), Err(Error::CatalogVerification { .. })));
        let mut e = good.clone();
        e.expected_primitive = false;
        assert!(e.verify().is_err());
        let mut e = good.clone();
        e.generators.push("(1,2)".into());
        e.expected_order = BigUint::from(120u32);
        assert!(e.verify().is_err(), "Sym(5) under another name");
        let mut e = good;
        e.generators = alloc::vec!["(1,2)".into()];
        e.expected_order = BigUint::from(2u32);
        assert!(e.verify().is_err(), "intransitive");
        let mut entries = synthesize_standard().unwrap();
        entries.push(entries[0].clone());
        assert!(Catalog::new(entries).is_err());
    }
}
