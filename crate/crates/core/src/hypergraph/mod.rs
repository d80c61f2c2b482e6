//! Hypergraphs on at most 64 vertices and their automorphism groups.

mod aut;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;
use crate::subset::{check_domain, Subset};

pub use aut::AutOptions;

/// Largest vertex count accepted by the automorphism search.
pub const MAX_AUT_VERTICES: usize = 40;

/// A vertex count and a set of distinct non-empty edges, sorted by mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Subset>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Subset>) -> Result<Hypergraph> {
        if n == 0 {
            return Err(Error::EmptyDomain);
        }
        check_domain(n)?;
        let full = Subset::full(n);
        for e in &edges {
            if e.is_empty() {
                return Err(Error::EmptySubset);
            }
            if !e.is_subset_of(full) {
                return Err(Error::InvalidArgument(alloc::format!(
                    "edge {:?} outside domain of size {}",
                    e,
                    n
                )));
            }
        }
        let mut edges = edges;
        edges.sort_unstable();
        edges.dedup();
        Ok(Hypergraph { n, edges })
    }

    /// The hypergraph whose edges are the orbit `Δ^G`.
    pub fn orbit_hypergraph(group: &PermutationGroup, delta: Subset) -> Result<Hypergraph> {
        if delta.is_empty() {
            return Err(Error::EmptySubset);
        }
        let edges = group.subset_orbit(delta)?;
        Hypergraph::new(group.degree(), edges)
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Subset] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Common edge size, if all edges have one.
    pub fn rank(&self) -> Option<usize> {
        let r = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == r).then_some(r)
    }

    pub fn contains_edge(&self, e: Subset) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Replaces every edge by its complement, dropping a complemented full edge.
    pub fn complement(&self) -> Hypergraph {
        let edges = self
            .edges
            .iter()
            .map(|e| e.complement(self.n))
            .filter(|e| !e.is_empty())
            .collect();
        Hypergraph::new(self.n, edges).expect("complements stay in the domain")
    }

    /// Image under a vertex relabelling.
    pub fn relabel(&self, g: &Permutation) -> Result<Hypergraph> {
        if g.degree() != self.n {
            return Err(Error::DomainMismatch {
                expected: self.n,
                found: g.degree(),
            });
        }
        Hypergraph::new(self.n, self.edges.iter().map(|&e| g.apply_subset(e)).collect())
    }

    pub fn is_automorphism(&self, g: &Permutation) -> bool {
        g.degree() == self.n && self.edges.iter().all(|&e| self.contains_edge(g.apply_subset(e)))
    }

    /// True iff the edges form a single orbit of `group`.
    pub fn is_edge_transitive(&self, group: &PermutationGroup) -> Result<bool> {
        if group.degree() != self.n {
            return Err(Error::DomainMismatch {
                expected: self.n,
                found: group.degree(),
            });
        }
        if self.rank().is_none() && !self.edges.is_empty() {
            return Err(Error::NotUniform);
        }
        let Some(&first) = self.edges.first() else {
            return Ok(true);
        };
        Ok(group.subset_orbit(first)? == self.edges)
    }

    /// The full automorphism group inside `Sym(n)`.
    pub fn automorphism_group(&self) -> Result<PermutationGroup> {
        self.automorphism_group_with(&AutOptions::default())
    }

    pub fn automorphism_group_with(&self, options: &AutOptions<'_>) -> Result<PermutationGroup> {
        aut::automorphism_group(self, options)
    }
}

/// True iff `G` is the full automorphism group of the orbit hypergraph
/// `(Ω, Δ^G)`.
pub fn realizes(group: &PermutationGroup, delta: Subset) -> Result<bool> {
    let h = Hypergraph::orbit_hypergraph(group, delta)?;
    aut::has_automorphism_outside(&h, group).map(|extra| !extra)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::KSubsets;
    use proptest::prelude::*;

    fn brute_aut_order(h: &Hypergraph) -> u64 {
        let sym = PermutationGroup::symmetric(h.vertex_count()).unwrap();
        sym.elements(1 << 20).unwrap().filter(|g| h.is_automorphism(g)).count() as u64
    }

    #[test]
    fn complete_uniform_has_full_symmetry() {
        let h = Hypergraph::new(6, KSubsets::new(6, 3).collect()).unwrap();
        assert_eq!(h.automorphism_group().unwrap().order_u64(), Some(720));
        assert!(h.is_edge_transitive(&PermutationGroup::symmetric(6).unwrap()).unwrap());
    }

    #[test]
    fn single_edge() {
        let h = Hypergraph::new(4, alloc::vec![Subset::from_points([0, 1])]).unwrap();
        assert_eq!(h.automorphism_group().unwrap().order_u64(), Some(4));
        assert_eq!(h.rank(), Some(2));
    }

    #[test]
    fn empty_hypergraph() {
        let h = Hypergraph::new(5, Vec::new()).unwrap();
        assert_eq!(h.automorphism_group().unwrap().order_u64(), Some(120));
    }

    #[test]
    fn non_uniform_is_rejected() {
        let h = Hypergraph::new(
            4,
            alloc::vec![Subset::from_points([0]), Subset::from_points([1, 2])],
        )
        .unwrap();
        let s4 = PermutationGroup::symmetric(4).unwrap();
        assert_eq!(h.is_edge_transitive(&s4), Err(Error::NotUniform));
        assert_eq!(brute_aut_order(&h), h.automorphism_group().unwrap().order_u64().unwrap());
    }

    #[test]
    fn two_orbits_are_not_edge_transitive() {
        let c5 = PermutationGroup::cyclic(5).unwrap();
        let h = Hypergraph::new(
            5,
            alloc::vec![Subset::from_points([0, 1]), Subset::from_points([0, 2])],
        )
        .unwrap();
        assert!(!h.is_edge_transitive(&c5).unwrap());
        let orbit = Hypergraph::orbit_hypergraph(&c5, Subset::from_points([0, 1])).unwrap();
        assert!(orbit.is_edge_transitive(&c5).unwrap());
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Hypergraph::new(3, alloc::vec![Subset::EMPTY]),
            Err(Error::EmptySubset)
        );
        assert!(Hypergraph::new(3, alloc::vec![Subset::from_points([3])]).is_err());
    }

    #[test]
    fn cyclic_five_never_realizes() {
        let c5 = PermutationGroup::cyclic(5).unwrap();
        for mask in 1u64..32 {
            assert!(!realizes(&c5, Subset(mask)).unwrap());
        }
        let s5 = PermutationGroup::symmetric(5).unwrap();
        assert!(realizes(&s5, Subset::from_points([0, 3])).unwrap());
    }

    fn arb_hypergraph() -> impl Strategy<Value = Hypergraph> {
        (1usize..7).prop_flat_map(|n| {
            proptest::collection::vec(1u64..(1u64 << n), 0..10)
                .prop_map(move |masks| Hypergraph::new(n, masks.into_iter().map(Subset).collect()).unwrap())
        })
    }

    fn arb_relabel(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn aut_matches_brute_force(h in arb_hypergraph()) {
            let a = h.automorphism_group().unwrap();
            prop_assert_eq!(a.order_u64().unwrap(), brute_aut_order(&h));
            for g in a.generators() {
                prop_assert!(h.is_automorphism(g));
            }
        }

        #[test]
        fn aut_order_is_relabelling_invariant(
            (h, g) in arb_hypergraph().prop_flat_map(|h| { let n = h.vertex_count(); (Just(h), arb_relabel(n)) })
        ) {
            let a = h.automorphism_group().unwrap();
            let b = h.relabel(&g).unwrap().automorphism_group().unwrap();
            prop_assert_eq!(a.order(), b.order());
        }

        #[test]
        fn complement_has_same_aut(h in arb_hypergraph()) {
            // A full edge is fixed by everything, so dropping its empty
            // complement leaves the group unchanged.
            let a = h.automorphism_group().unwrap();
            let b = h.complement().automorphism_group().unwrap();
            prop_assert_eq!(a.order(), b.order());
        }
    }
}
