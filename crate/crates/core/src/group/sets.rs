//! Actions on subsets and on tuples of points.

use alloc::vec::Vec;

use hashbrown::HashSet;
use num_bigint::BigUint;

use super::PermutationGroup;
use crate::error::{Error, Result};
use crate::subset::{check_domain, Subset};

pub(crate) fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

impl PermutationGroup {
    /// The orbit `Δ^G`, sorted by mask.
    pub fn subset_orbit(&self, delta: Subset) -> Result<Vec<Subset>> {
        check_domain(self.degree)?;
        let mut seen: HashSet<Subset> = HashSet::new();
        seen.insert(delta);
        let mut orbit = alloc::vec![delta];
        let mut head = 0;
        while head < orbit.len() {
            let s = orbit[head];
            head += 1;
            for g in &self.generators {
                let t = g.apply_subset(s);
                if seen.insert(t) {
                    orbit.push(t);
                }
            }
        }
        orbit.sort_unstable();
        Ok(orbit)
    }

    /// Length of `Δ^G`, computed as `|G : G_Δ|`.
    pub fn subset_orbit_len(&self, delta: Subset) -> Result<BigUint> {
        let st = self.set_stabilizer(delta)?;
        Ok(self.order() / st.order())
    }

    /// True iff `G` is transitive on the `k`-subsets of the domain.
    pub fn is_k_set_transitive(&self, k: usize) -> Result<bool> {
        if k == 0 || k > self.degree {
            return Err(Error::InvalidArgument(alloc::format!(
                "k must lie in 1..={}, got {}",
                self.degree,
                k
            )));
        }
        check_domain(self.degree)?;
        let delta = Subset::from_points(0..k);
        Ok(self.subset_orbit_len(delta)? == binomial(self.degree, k))
    }

    /// True iff `G` is `k`-set-transitive for every `k`. Sizes above `n/2`
    /// follow from their complements.
    pub fn is_set_transitive(&self) -> Result<bool> {
        for k in 1..=self.degree / 2 {
            if !self.is_k_set_transitive(k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff `G` is transitive on ordered `k`-tuples of distinct points.
    pub fn is_k_transitive(&self, k: usize) -> Result<bool> {
        if k > self.degree {
            return Ok(false);
        }
        let prefix: Vec<usize> = (0..k).collect();
        let rebased = self.rebased(&prefix)?;
        Ok(rebased
            .chain
            .levels
            .iter()
            .take(k)
            .enumerate()
            .all(|(i, l)| l.orbit.len() == self.degree - i))
    }

    /// Largest `k` such that `G` is `k`-transitive.
    pub fn transitivity_degree(&self) -> Result<usize> {
        let mut k = 0;
        while k < self.degree && self.is_k_transitive(k + 1)? {
            k += 1;
        }
        Ok(k)
    }
}
