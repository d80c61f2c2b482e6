//! Backtrack search for subgroups defined by a property, over the
//! stabilizer-chain tree of coset representatives.

use alloc::vec::Vec;

use super::chain::StabChain;
use super::PermutationGroup;
use crate::error::Result;
use crate::perm::Permutation;
use crate::subset::{check_domain, Subset};

/// A subgroup-closed property with a necessary condition on base images.
pub(crate) trait SubgroupProperty {
    /// Whether some element with the property may map base point `beta` to
    /// `image`, given the images of earlier base points agree.
    fn allows(&self, beta: usize, image: usize) -> bool;
    fn holds(&self, g: &Permutation) -> bool;
}

struct SetStabilizer(Subset);

impl SubgroupProperty for SetStabilizer {
    #[inline]
    fn allows(&self, beta: usize, image: usize) -> bool {
        self.0.contains(beta) == self.0.contains(image)
    }

    fn holds(&self, g: &Permutation) -> bool {
        g.apply_subset(self.0) == self.0
    }
}

/// Generators of `{g in G : P(g)}`.
///
/// Levels are handled bottom-up. At level `i` the generators found so far
/// generate the property subgroup of `G^(i+1)`; a branch `gamma` of the basic
/// orbit is searched only if it is outside the orbit of `beta_i` under the
/// generators found so far, and the first element found in its subtree is
/// added.
pub(crate) fn subgroup_generators<P: SubgroupProperty>(chain: &StabChain, prop: &P) -> Vec<Permutation> {
    let k = chain.levels.len();
    let n = chain.degree;
    let mut found: Vec<Permutation> = Vec::new();
    for i in (0..k).rev() {
        let level = &chain.levels[i];
        let beta = level.base_point;
        let mut in_orbit = alloc::vec![false; n];
        let mut orbit = alloc::vec![beta];
        in_orbit[beta] = true;
        extend_orbit(&found, &mut orbit, &mut in_orbit);
        for &gamma in &level.orbit {
            if in_orbit[gamma] || !prop.allows(beta, gamma) {
                continue;
            }
            let q = level.rep(gamma).clone();
            if let Some(g) = descend(chain, prop, i + 1, &q) {
                found.push(g);
                extend_orbit(&found, &mut orbit, &mut in_orbit);
            }
        }
    }
    found
}

fn extend_orbit(gens: &[Permutation], orbit: &mut Vec<usize>, in_orbit: &mut [bool]) {
    let mut head = 0;
    while head < orbit.len() {
        let x = orbit[head];
        head += 1;
        for g in gens {
            let y = g.apply(x);
            if !in_orbit[y] {
                in_orbit[y] = true;
                orbit.push(y);
            }
        }
    }
}

/// Depth-first search below a node whose partial product is `q`. Candidate
/// elements have the form `u_{k-1} ... u_j q`.
fn descend<P: SubgroupProperty>(
    chain: &StabChain,
    prop: &P,
    j: usize,
    q: &Permutation,
) -> Option<Permutation> {
    if j == chain.levels.len() {
        return prop.holds(q).then(|| q.clone());
    }
    let level = &chain.levels[j];
    for &gamma in &level.orbit {
        // Image of beta_j under u_j(gamma) q.
        let image = q.apply(gamma);
        if !prop.allows(level.base_point, image) {
            continue;
        }
        let next = level.rep(gamma).then(q);
        if let Some(g) = descend(chain, prop, j + 1, &next) {
            return Some(g);
        }
    }
    None
}

impl PermutationGroup {
    /// The set-wise stabilizer `G_Δ`.
    pub fn set_stabilizer(&self, delta: Subset) -> Result<PermutationGroup> {
        check_domain(self.degree)?;
        if delta.is_empty() || delta == Subset::full(self.degree) {
            return Ok(self.clone());
        }
        let gens = subgroup_generators(&self.chain, &SetStabilizer(delta));
        PermutationGroup::from_generators(self.degree, gens)
    }

    /// The point-wise stabilizer of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermutationGroup> {
        // With `points` as a base prefix, the strong generators fixing them
        // generate their point-wise stabilizer.
        let rebased = self.rebased(points)?;
        let gens: Vec<Permutation> = rebased
            .chain
            .strong
            .iter()
            .filter(|g| points.iter().all(|&p| g.apply(p) == p))
            .cloned()
            .collect();
        PermutationGroup::from_generators(self.degree, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_stabilizer_order(g: &PermutationGroup, delta: Subset) -> u64 {
        g.elements(1 << 20)
            .unwrap()
            .filter(|h| h.apply_subset(delta) == delta)
            .count() as u64
    }

    #[test]
    fn sym4_pair_stabilizer() {
        let s4 = PermutationGroup::symmetric(4).unwrap();
        let st = s4.set_stabilizer(Subset::from_points([0, 1])).unwrap();
        assert_eq!(st.order_u64(), Some(4));
        assert_eq!(s4.set_stabilizer(Subset::EMPTY).unwrap().order_u64(), Some(24));
        assert_eq!(s4.set_stabilizer(Subset::full(4)).unwrap().order_u64(), Some(24));
    }

    #[test]
    fn pointwise_stabilizer_of_sym5() {
        let s5 = PermutationGroup::symmetric(5).unwrap();
        assert_eq!(s5.pointwise_stabilizer(&[0, 3]).unwrap().order_u64(), Some(6));
    }

    fn arb_group() -> impl Strategy<Value = PermutationGroup> {
        (3usize..9).prop_flat_map(|n| {
            let one = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
            proptest::collection::vec(one, 1..3).prop_map(move |imgs| {
                let gens = imgs
                    .into_iter()
                    .map(|v| Permutation::from_images(v).unwrap())
                    .collect();
                PermutationGroup::from_generators(n, gens).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn stabilizer_matches_element_filter(g in arb_group(), mask in any::<u64>()) {
            let delta = Subset(mask & Subset::full(g.degree()).0);
            let st = g.set_stabilizer(delta).unwrap();
            prop_assert_eq!(st.order_u64(), Some(brute_stabilizer_order(&g, delta)));
            for h in st.generators() {
                prop_assert!(g.contains(h));
            }
        }
    }
}
