//! Automorphism groups of hypergraphs by partition refinement and
//! backtracking.
//!
//! Vertices are refined by iterated incidence hashing: an edge is summarised
//! by the multiset of cells of its vertices, a vertex by the multiset of
//! summaries of its edges. Both are label-independent, so an automorphism
//! maps every search node to a node with the same trace.
//!
//! The search walks one root-to-leaf path, then handles its levels bottom-up.
//! At depth `d` every vertex of the target cell outside the orbit of the path
//! vertex under the automorphisms fixing the earlier path vertices gets its
//! subtree searched for an automorphism. Automorphisms found at depth `d` fix
//! the first `d` path vertices, so the generators collected this way generate
//! the full group.

use alloc::vec;
use alloc::vec::Vec;

use super::{Hypergraph, MAX_AUT_VERTICES};
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;

/// Options for the automorphism search.
#[derive(Clone, Copy, Debug)]
pub struct AutOptions<'a> {
    /// A group already known to consist of automorphisms. Its elements are
    /// used for pruning and are part of the result.
    pub known: Option<&'a PermutationGroup>,
    pub vertex_limit: usize,
}

impl Default for AutOptions<'_> {
    fn default() -> Self {
        AutOptions {
            known: None,
            vertex_limit: MAX_AUT_VERTICES,
        }
    }
}

type Cells = Vec<Vec<usize>>;

#[derive(Clone)]
struct Node {
    cells: Cells,
    trace: u64,
}

#[inline]
fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

#[inline]
fn fold(acc: u64, x: u64) -> u64 {
    mix(acc ^ x.wrapping_mul(0x0100_0000_01b3))
}

struct Refiner<'h> {
    h: &'h Hypergraph,
    /// Edge indices containing each vertex.
    incidence: Vec<Vec<u32>>,
}

impl<'h> Refiner<'h> {
    fn new(h: &'h Hypergraph) -> Self {
        let mut incidence = vec![Vec::new(); h.n];
        for (i, e) in h.edges.iter().enumerate() {
            for v in e.iter() {
                incidence[v].push(i as u32);
            }
        }
        Refiner { h, incidence }
    }

    /// Refines to a stable partition, folding every round's cell keys into
    /// `trace`.
    fn refine(&self, mut cells: Cells, mut trace: u64) -> Node {
        let n = self.h.n;
        let mut cell_of = vec![0usize; n];
        let mut edge_hash = vec![0u64; self.h.edges.len()];
        let mut key = vec![0u64; n];
        loop {
            if cells.len() == n {
                trace = fold(trace, n as u64);
                return Node { cells, trace };
            }
            for (i, c) in cells.iter().enumerate() {
                for &v in c {
                    cell_of[v] = i;
                }
            }
            for (e, hsh) in self.h.edges.iter().zip(edge_hash.iter_mut()) {
                *hsh = e
                    .iter()
                    .fold(0u64, |acc, v| acc.wrapping_add(mix(cell_of[v] as u64)));
            }
            for v in 0..n {
                key[v] = self.incidence[v]
                    .iter()
                    .fold(0u64, |acc, &e| acc.wrapping_add(mix(edge_hash[e as usize] ^ 0x5a5a)));
            }
            let mut next: Cells = Vec::with_capacity(cells.len() + 1);
            for (ci, cell) in cells.iter().enumerate() {
                let mut sorted = cell.clone();
                sorted.sort_unstable_by_key(|&v| (key[v], v));
                let mut start = 0;
                while start < sorted.len() {
                    let k = key[sorted[start]];
                    let mut end = start + 1;
                    while end < sorted.len() && key[sorted[end]] == k {
                        end += 1;
                    }
                    trace = fold(trace, fold(ci as u64, fold(k, (end - start) as u64)));
                    let mut part = sorted[start..end].to_vec();
                    part.sort_unstable();
                    next.push(part);
                    start = end;
                }
            }
            let split = next.len() != cells.len();
            trace = fold(trace, next.len() as u64);
            cells = next;
            if !split {
                return Node { cells, trace };
            }
        }
    }

    fn root(&self) -> Node {
        self.refine(vec![(0..self.h.n).collect()], 0)
    }

    fn individualize(&self, node: &Node, target: usize, v: usize) -> Node {
        let mut cells: Cells = Vec::with_capacity(node.cells.len() + 1);
        for (i, c) in node.cells.iter().enumerate() {
            if i == target {
                cells.push(vec![v]);
                cells.push(c.iter().copied().filter(|&x| x != v).collect());
            } else {
                cells.push(c.clone());
            }
        }
        self.refine(cells, fold(node.trace, target as u64))
    }
}

/// First largest non-singleton cell.
fn target_cell(cells: &Cells) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, c) in cells.iter().enumerate() {
        if c.len() > 1 && best.map_or(true, |b| c.len() > cells[b].len()) {
            best = Some(i);
        }
    }
    best
}

fn same_shape(a: &Node, b: &Node) -> bool {
    a.trace == b.trace
        && a.cells.len() == b.cells.len()
        && a.cells.iter().zip(&b.cells).all(|(x, y)| x.len() == y.len())
}

struct Search<'h> {
    refiner: Refiner<'h>,
    /// Nodes of the first path; `path[d + 1]` individualizes `path_vertex[d]`.
    path: Vec<Node>,
    path_vertex: Vec<usize>,
    path_target: Vec<usize>,
    first_leaf: Vec<usize>,
}

impl<'h> Search<'h> {
    fn new(h: &'h Hypergraph) -> Self {
        let refiner = Refiner::new(h);
        let mut path = vec![refiner.root()];
        let mut path_vertex = Vec::new();
        let mut path_target = Vec::new();
        while let Some(t) = target_cell(&path.last().unwrap().cells) {
            let node = path.last().unwrap();
            let v = node.cells[t][0];
            let child = refiner.individualize(node, t, v);
            path_vertex.push(v);
            path_target.push(t);
            path.push(child);
        }
        let first_leaf = path.last().unwrap().cells.iter().map(|c| c[0]).collect();
        Search {
            refiner,
            path,
            path_vertex,
            path_target,
            first_leaf,
        }
    }

    fn leaf_permutation(&self, leaf: &Node) -> Permutation {
        let mut images = vec![0usize; self.first_leaf.len()];
        for (&a, c) in self.first_leaf.iter().zip(&leaf.cells) {
            images[a] = c[0];
        }
        Permutation::from_images(images).expect("discrete partitions give bijections")
    }

    /// An automorphism below `node` (at depth `depth`), if any.
    fn descend(&self, node: &Node, depth: usize) -> Option<Permutation> {
        if depth == self.path_vertex.len() {
            let g = self.leaf_permutation(node);
            return self.refiner.h.is_automorphism(&g).then_some(g);
        }
        let t = self.path_target[depth];
        if target_cell(&node.cells) != Some(t) {
            return None;
        }
        for &v in &node.cells[t] {
            let child = self.refiner.individualize(node, t, v);
            if !same_shape(&child, &self.path[depth + 1]) {
                continue;
            }
            if let Some(g) = self.descend(&child, depth + 1) {
                return Some(g);
            }
        }
        None
    }

    /// Runs the level-by-level search. `known` must consist of automorphisms
    /// and have a base starting with the path vertices. With `stop_early`,
    /// returns as soon as one automorphism outside `known` turns up.
    fn run(&self, known: &[Permutation], stop_early: bool) -> Vec<Permutation> {
        let n = self.refiner.h.n;
        let mut gens: Vec<Permutation> = known.to_vec();
        let mut found = Vec::new();
        for d in (0..self.path_vertex.len()).rev() {
            let prefix = &self.path_vertex[..d];
            let fixes_prefix = |g: &Permutation| prefix.iter().all(|&p| g.apply(p) == p);
            let mut in_orbit = vec![false; n];
            let mut orbit = vec![self.path_vertex[d]];
            in_orbit[self.path_vertex[d]] = true;
            extend_orbit(gens.iter().filter(|g| fixes_prefix(g)), &mut orbit, &mut in_orbit);
            let node = &self.path[d];
            let t = self.path_target[d];
            for &gamma in &node.cells[t] {
                if in_orbit[gamma] {
                    continue;
                }
                let child = self.refiner.individualize(node, t, gamma);
                if !same_shape(&child, &self.path[d + 1]) {
                    continue;
                }
                if let Some(g) = self.descend(&child, d + 1) {
                    found.push(g.clone());
                    if stop_early {
                        return found;
                    }
                    gens.push(g);
                    extend_orbit(gens.iter().filter(|g| fixes_prefix(g)), &mut orbit, &mut in_orbit);
                }
            }
        }
        found
    }
}

fn extend_orbit<'a, I>(gens: I, orbit: &mut Vec<usize>, in_orbit: &mut [bool])
where
    I: Iterator<Item = &'a Permutation> + Clone,
{
    let mut head = 0;
    while head < orbit.len() {
        let x = orbit[head];
        head += 1;
        for g in gens.clone() {
            let y = g.apply(x);
            if !in_orbit[y] {
                in_orbit[y] = true;
                orbit.push(y);
            }
        }
    }
}

fn check_limit(h: &Hypergraph, limit: usize) -> Result<()> {
    if h.n > limit {
        return Err(Error::LimitExceeded {
            what: "hypergraph vertices",
            value: h.n,
            limit,
        });
    }
    Ok(())
}

/// Strong generators of `known` relative to a base starting with the path.
fn aligned_generators(search: &Search<'_>, known: &PermutationGroup) -> Result<Vec<Permutation>> {
    let h = search.refiner.h;
    if known.degree() != h.n {
        return Err(Error::DomainMismatch {
            expected: h.n,
            found: known.degree(),
        });
    }
    if let Some(g) = known.generators().iter().find(|g| !h.is_automorphism(g)) {
        return Err(Error::InvalidArgument(alloc::format!(
            "known generator {} is not an automorphism",
            g
        )));
    }
    let rebased = known.rebased(&search.path_vertex)?;
    Ok(rebased.strong_generators().to_vec())
}

pub(super) fn automorphism_group(h: &Hypergraph, options: &AutOptions<'_>) -> Result<PermutationGroup> {
    check_limit(h, options.vertex_limit)?;
    let search = Search::new(h);
    let known = match options.known {
        Some(k) => aligned_generators(&search, k)?,
        None => Vec::new(),
    };
    let mut gens = known.clone();
    gens.extend(search.run(&known, false));
    PermutationGroup::from_generators(h.n, gens)
}

/// True iff `Aut(h)` is strictly larger than `group`, which must consist of
/// automorphisms of `h`.
pub(super) fn has_automorphism_outside(h: &Hypergraph, group: &PermutationGroup) -> Result<bool> {
    check_limit(h, MAX_AUT_VERTICES)?;
    let search = Search::new(h);
    let known = aligned_generators(&search, group)?;
    // Anything found maps a path vertex outside its orbit under the point-wise
    // stabilizer of the earlier path vertices in `group`, so it is not in
    // `group`.
    Ok(!search.run(&known, true).is_empty())
}
