//! Permutation groups backed by a base and strong generating set.

mod blocks;
mod chain;
mod classes;
mod search;
mod sets;

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub use blocks::BlockSystem;
pub use classes::{PrimeOrderClass, PrimeOrderClassTable, DEFAULT_ELEMENT_LIMIT};

use chain::StabChain;

/// Seed of the random Schreier-Sims phase. The chain is verified
/// deterministically, so the seed affects speed and strong generators only.
pub const DEFAULT_SEED: u64 = 0x5157_1e55_6a9d_0b17;

#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: BigUint,
}

impl PermutationGroup {
    pub fn from_generators(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_base_prefix(degree, generators, &[])
    }

    /// Builds the group with a base whose first points are `prefix`.
    pub fn with_base_prefix(
        degree: usize,
        generators: Vec<Permutation>,
        prefix: &[usize],
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::EmptyDomain);
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DomainMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        if let Some(&p) = prefix.iter().find(|&&p| p >= degree) {
            return Err(Error::InvalidArgument(alloc::format!(
                "base point {} outside domain of size {}",
                p + 1,
                degree
            )));
        }
        let mut prefix_dedup: Vec<usize> = Vec::with_capacity(prefix.len());
        for &p in prefix {
            if !prefix_dedup.contains(&p) {
                prefix_dedup.push(p);
            }
        }
        let chain = StabChain::build(degree, &generators, &prefix_dedup, DEFAULT_SEED);
        let order = chain.order();
        Ok(PermutationGroup {
            degree,
            generators,
            chain,
            order,
        })
    }

    /// The same group rebuilt with a base starting with `prefix`.
    pub fn rebased(&self, prefix: &[usize]) -> Result<Self> {
        let mut g = Self::with_base_prefix(self.degree, self.chain.strong.clone(), prefix)?;
        g.generators = self.generators.clone();
        Ok(g)
    }

    pub fn trivial(degree: usize) -> Result<Self> {
        Self::from_generators(degree, Vec::new())
    }

    pub fn symmetric(degree: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::from_cycles(degree, &[&[0, 1]])?);
        }
        if degree >= 3 {
            let cycle: Vec<usize> = (0..degree).collect();
            gens.push(Permutation::from_cycles(degree, &[&cycle])?);
        }
        Self::from_generators(degree, gens)
    }

    pub fn alternating(degree: usize) -> Result<Self> {
        let gens = (2..degree)
            .map(|k| Permutation::from_cycles(degree, &[&[0, 1, k]]))
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(degree, gens)
    }

    pub fn cyclic(degree: usize) -> Result<Self> {
        let cycle: Vec<usize> = (0..degree).collect();
        let gens = if degree >= 2 {
            vec![Permutation::from_cycles(degree, &[&cycle])?]
        } else {
            Vec::new()
        };
        Self::from_generators(degree, gens)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.chain.strong
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    /// True iff every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermutationGroup) -> bool {
        other.degree == self.degree && other.generators.iter().all(|g| self.contains(g))
    }

    pub fn random_element<R: RngCore>(&self, rng: &mut R) -> Permutation {
        self.chain.random_element(rng)
    }

    /// Iterates every element exactly once. Fails when the order exceeds
    /// `limit`.
    pub fn elements(&self, limit: u64) -> Result<Elements<'_>> {
        match self.order_u64() {
            Some(o) if o <= limit => Ok(Elements::new(&self.chain)),
            _ => Err(Error::LimitExceeded {
                what: "group order",
                value: self.order_u64().map_or(usize::MAX, |o| o as usize),
                limit: limit as usize,
            }),
        }
    }

    /// Points of the orbit of `point`, in discovery order.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point] = true;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit
    }

    /// Orbits on points, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let mut orb = self.orbit(p);
            for &x in &orb {
                seen[x] = true;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// True iff the group contains `Alt(n)` (index at most 2 in `Sym(n)`).
    pub fn contains_alternating(&self) -> bool {
        let factorial: BigUint = (1..=self.degree as u64).map(BigUint::from).product();
        &self.order * 2u32 >= factorial
    }

    /// Conjugate group `x^{-1} G x`.
    pub fn conjugate(&self, x: &Permutation) -> Result<PermutationGroup> {
        if x.degree() != self.degree {
            return Err(Error::DomainMismatch {
                expected: self.degree,
                found: x.degree(),
            });
        }
        let gens = self.generators.iter().map(|g| g.conjugate_by(x)).collect();
        Self::from_generators(self.degree, gens)
    }
}

/// Odometer enumeration of `u_{k-1} ... u_1 u_0` over all transversal choices.
pub struct Elements<'a> {
    chain: &'a StabChain,
    digits: Vec<usize>,
    /// `partial[i]` is the product of the chosen representatives of levels
    /// `k-1` down to `i`; `partial[k]` is the identity.
    partial: Vec<Permutation>,
    done: bool,
}

impl<'a> Elements<'a> {
    fn new(chain: &'a StabChain) -> Self {
        let k = chain.levels.len();
        let id = Permutation::identity(chain.degree);
        let partial = vec![id; k + 1];
        Elements {
            chain,
            digits: vec![0; k],
            partial,
            done: false,
        }
    }

    fn refresh_from(&mut self, top: usize) {
        for i in (0..top).rev() {
            let level = &self.chain.levels[i];
            let rep = level.rep(level.orbit[self.digits[i]]);
            self.partial[i] = self.partial[i + 1].then(rep);
        }
    }
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let k = self.digits.len();
        if k == 0 {
            self.done = true;
            return Some(Permutation::identity(self.chain.degree));
        }
        let out = self.partial[0].clone();
        let mut i = 0;
        loop {
            if i == k {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < self.chain.levels[i].orbit.len() {
                self.refresh_from(i + 1);
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use proptest::prelude::*;

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::parse(n, s).unwrap()
    }

    /// Closure by breadth-first multiplication, independent of the chain.
    fn closure(n: usize, gens: &[Permutation]) -> BTreeSet<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let id = Permutation::identity(n);
        seen.insert(id.images().to_vec());
        let mut queue = vec![id];
        while let Some(g) = queue.pop() {
            for s in gens {
                let h = g.then(s);
                if seen.insert(h.images().to_vec()) {
                    queue.push(h);
                }
            }
        }
        seen
    }

    #[test]
    fn small_orders() {
        let c5 = PermutationGroup::from_generators(5, vec![perm(5, "(1,2,3,4,5)")]).unwrap();
        assert_eq!(c5.order_u64(), Some(5));
        assert_eq!(PermutationGroup::trivial(4).unwrap().order_u64(), Some(1));
        assert_eq!(PermutationGroup::symmetric(5).unwrap().order_u64(), Some(120));
        assert_eq!(PermutationGroup::alternating(6).unwrap().order_u64(), Some(360));
        assert_eq!(PermutationGroup::symmetric(1).unwrap().order_u64(), Some(1));
        // PSL(2,7) on the projective line: x -> x+1 and x -> -1/x.
        let psl27 = PermutationGroup::from_generators(
            8,
            vec![perm(8, "(1,2,3,4,5,6,7)"), perm(8, "(1,8)(2,7)(3,4)(5,6)")],
        )
        .unwrap();
        // q(q^2-1)/gcd(2,q-1) with q = 7.
        assert_eq!(psl27.order_u64(), Some(7 * 48 / 2));
    }

    #[test]
    fn membership() {
        let c5 = PermutationGroup::from_generators(5, vec![perm(5, "(1,2,3,4,5)")]).unwrap();
        assert!(c5.contains(&perm(5, "(1,3,5,2,4)")));
        assert!(!c5.contains(&perm(5, "(1,2)")));
        let a5 = PermutationGroup::alternating(5).unwrap();
        assert!(!a5.contains(&perm(5, "(1,2)")));
        assert!(a5.contains(&perm(5, "(1,2)(3,4)")));
        assert!(!a5.contains(&Permutation::identity(4)));
    }

    #[test]
    fn rejects_mismatched_generators() {
        let err = PermutationGroup::from_generators(5, vec![Permutation::identity(4)]);
        assert!(matches!(err, Err(Error::DomainMismatch { .. })));
        assert!(matches!(
            PermutationGroup::from_generators(0, vec![]),
            Err(Error::EmptyDomain)
        ));
    }

    #[test]
    fn elements_are_distinct_and_complete() {
        let g = PermutationGroup::from_generators(
            6,
            vec![perm(6, "(1,2,3,4,5,6)"), perm(6, "(1,2)")],
        )
        .unwrap();
        let all: BTreeSet<Vec<usize>> = g
            .elements(1000)
            .unwrap()
            .map(|p| p.images().to_vec())
            .collect();
        assert_eq!(all.len(), 720);
        assert!(g.elements(100).is_err());
    }

    #[test]
    fn base_prefix_is_respected() {
        let s5 = PermutationGroup::symmetric(5).unwrap();
        let r = s5.rebased(&[3, 1]).unwrap();
        assert_eq!(&r.base()[..2], &[3, 1]);
        assert_eq!(r.order(), s5.order());
    }

    fn arb_gens() -> impl Strategy<Value = (usize, Vec<Permutation>)> {
        (2usize..8).prop_flat_map(|n| {
            let one = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
            (Just(n), proptest::collection::vec(one, 0..3))
        })
        .prop_map(|(n, imgs)| {
            (
                n,
                imgs.into_iter()
                    .map(|v| Permutation::from_images(v).unwrap())
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn order_matches_closure((n, gens) in arb_gens()) {
            let g = PermutationGroup::from_generators(n, gens.clone()).unwrap();
            let cl = closure(n, &gens);
            prop_assert_eq!(g.order_u64(), Some(cl.len() as u64));
            for e in g.elements(10_000).unwrap() {
                prop_assert!(cl.contains(e.images()));
            }
        }
    }
}
