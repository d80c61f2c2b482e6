//! Block systems of transitive groups.

use alloc::vec;
use alloc::vec::Vec;

use super::PermutationGroup;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A nontrivial proper invariant partition. Blocks are sorted internally and
/// ordered by their smallest point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockSystem {
    blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    fn from_labels(labels: &[usize]) -> BlockSystem {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; labels.len()];
        for (x, &l) in labels.iter().enumerate() {
            if index[l] == usize::MAX {
                index[l] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[index[l]].push(x);
        }
        BlockSystem { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn block_of(&self, point: usize) -> &[usize] {
        self.blocks
            .iter()
            .find(|b| b.binary_search(&point).is_ok())
            .expect("blocks partition the domain")
    }

    /// True iff every permutation maps blocks onto blocks.
    pub fn is_invariant_under(&self, g: &Permutation) -> bool {
        self.blocks.iter().all(|b| {
            let target = self.block_of(g.apply(b[0]));
            target.len() == b.len() && b.iter().all(|&x| target.binary_search(&g.apply(x)).is_ok())
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes, keeping the smaller root. Returns false if already
    /// merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }
}

impl PermutationGroup {
    /// Finest invariant partition in which the given pairs are merged.
    fn invariant_closure(&self, uf: &mut UnionFind, mut pending: Vec<(usize, usize)>) -> Vec<usize> {
        while let Some((a, b)) = pending.pop() {
            for g in &self.generators {
                let (x, y) = (g.apply(a), g.apply(b));
                if uf.union(x, y) {
                    pending.push((x, y));
                }
            }
        }
        uf.labels()
    }

    /// Finest block system in which `0` and `beta` share a block, as class
    /// labels (each label is the smallest point of its class).
    pub fn minimal_block_labels(&self, beta: usize) -> Vec<usize> {
        let mut uf = UnionFind::new(self.degree);
        uf.union(0, beta);
        self.invariant_closure(&mut uf, vec![(0, beta)])
    }

    /// All nontrivial proper block systems, each exactly once.
    pub fn block_systems(&self) -> Result<Vec<BlockSystem>> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let n = self.degree;
        // A system is determined by the block containing 0; that block is the
        // union of the minimal blocks of its pairs, so joins of minimal systems
        // produce every system.
        let mut found: Vec<Vec<usize>> = Vec::new();
        for beta in 1..n {
            let labels = self.minimal_block_labels(beta);
            if labels.iter().any(|&l| l != 0) && !found.contains(&labels) {
                found.push(labels);
            }
        }
        let mut i = 0;
        while i < found.len() {
            for j in 0..i {
                let mut uf = UnionFind::new(n);
                let mut pending = Vec::new();
                for x in 0..n {
                    for labels in [&found[i], &found[j]] {
                        if uf.union(x, labels[x]) {
                            pending.push((x, labels[x]));
                        }
                    }
                }
                let joined = self.invariant_closure(&mut uf, pending);
                if joined.iter().any(|&l| l != 0) && !found.contains(&joined) {
                    found.push(joined);
                }
            }
            i += 1;
        }
        let mut systems: Vec<BlockSystem> =
            found.iter().map(|l| BlockSystem::from_labels(l)).collect();
        systems.sort_by(|a, b| a.block_count().cmp(&b.block_count()).reverse().then(a.cmp(b)));
        Ok(systems)
    }

    pub fn is_primitive(&self) -> bool {
        self.is_transitive()
            && (1..self.degree).all(|beta| self.minimal_block_labels(beta).iter().all(|&l| l == 0))
    }
}
