//! Base and strong generating set.
//!
//! A seeded random Schreier-Sims pass builds a candidate chain quickly; the
//! deterministic Schreier-Sims completion then sifts every Schreier generator
//! at every level, adding whatever the random pass missed. The final chain is
//! therefore exact regardless of how lucky the random phase was.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::perm::Permutation;

/// Number of consecutive trivially-sifting random elements that ends the
/// random phase.
const RANDOM_PHASE_PATIENCE: usize = 24;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base_point: usize,
    /// Indices into the strong generating set of generators fixing every
    /// earlier base point.
    pub gens: Vec<usize>,
    pub orbit: Vec<usize>,
    /// `transversal[x]` maps the base point to `x` for each orbit point.
    pub transversal: Vec<Option<Permutation>>,
    pub inverse: Vec<Option<Permutation>>,
}

impl Level {
    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.transversal[x].is_some()
    }

    #[inline]
    pub fn rep(&self, x: usize) -> &Permutation {
        self.transversal[x].as_ref().expect("point in basic orbit")
    }

    #[inline]
    pub fn rep_inverse(&self, x: usize) -> &Permutation {
        self.inverse[x].as_ref().expect("point in basic orbit")
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub strong: Vec<Permutation>,
    pub levels: Vec<Level>,
}

impl StabChain {
    pub fn build(degree: usize, gens: &[Permutation], base_prefix: &[usize], seed: u64) -> Self {
        let mut chain = StabChain {
            degree,
            strong: Vec::new(),
            levels: base_prefix.iter().map(|&b| empty_level(degree, b)).collect(),
        };
        for g in gens {
            if !g.is_identity() && !chain.strong.contains(g) {
                chain.push_strong(g.clone());
            }
        }
        chain.rebuild_all();
        if !chain.strong.is_empty() {
            chain.random_phase(gens, seed);
        }
        chain.complete();
        chain
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Sifts `g` starting at level `from`. Returns the residue and the level
    /// where sifting stopped (`levels.len()` when it passed every level).
    pub fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let x = h.apply(level.base_point);
            if !level.contains(x) {
                return (h, j);
            }
            if x != level.base_point {
                h = h.then(level.rep_inverse(x));
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && {
            let (h, j) = self.sift(g, 0);
            j == self.levels.len() && h.is_identity()
        }
    }

    /// Appends a strong generator, extending the base if it fixes every
    /// current base point.
    fn push_strong(&mut self, g: Permutation) -> usize {
        if self.levels.iter().all(|l| g.apply(l.base_point) == l.base_point) {
            let moved = (0..self.degree)
                .find(|&x| g.apply(x) != x)
                .expect("non-identity generator");
            self.levels.push(empty_level(self.degree, moved));
        }
        self.strong.push(g);
        self.strong.len() - 1
    }

    fn rebuild_all(&mut self) {
        for i in 0..self.levels.len() {
            self.rebuild_level(i);
        }
    }

    fn rebuild_level(&mut self, i: usize) {
        let n = self.degree;
        let prefix: Vec<usize> = self.levels[..i].iter().map(|l| l.base_point).collect();
        let gens: Vec<usize> = (0..self.strong.len())
            .filter(|&s| prefix.iter().all(|&b| self.strong[s].apply(b) == b))
            .collect();
        let beta = self.levels[i].base_point;
        let mut transversal: Vec<Option<Permutation>> = vec![None; n];
        let mut inverse: Vec<Option<Permutation>> = vec![None; n];
        transversal[beta] = Some(Permutation::identity(n));
        inverse[beta] = Some(Permutation::identity(n));
        let mut orbit = vec![beta];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for &s in &gens {
                let y = self.strong[s].apply(x);
                if transversal[y].is_none() {
                    let t = transversal[x].as_ref().unwrap().then(&self.strong[s]);
                    inverse[y] = Some(t.inverse());
                    transversal[y] = Some(t);
                    orbit.push(y);
                }
            }
        }
        self.levels[i] = Level {
            base_point: beta,
            gens,
            orbit,
            transversal,
            inverse,
        };
    }

    fn random_phase(&mut self, gens: &[Permutation], seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pr = ProductReplacement::new(self.degree, gens, &mut rng);
        let mut quiet = 0;
        while quiet < RANDOM_PHASE_PATIENCE {
            let g = pr.next(&mut rng);
            let (h, j) = self.sift(&g, 0);
            if h.is_identity() {
                quiet += 1;
                continue;
            }
            quiet = 0;
            self.push_strong(h);
            // The residue fixes base points below `j`, so only levels up to
            // `j` (and a possibly appended level) change.
            for i in 0..self.levels.len().min(j + 2) {
                self.rebuild_level(i);
            }
        }
    }

    /// Deterministic Schreier-Sims from the current base and strong set.
    fn complete(&mut self) {
        self.rebuild_all();
        let mut i = self.levels.len();
        while i > 0 {
            let lvl = i - 1;
            match self.first_failing_schreier(lvl) {
                Some((h, j)) => {
                    self.push_strong(h);
                    for m in lvl + 1..self.levels.len() {
                        self.rebuild_level(m);
                    }
                    i = j + 1;
                }
                None => i -= 1,
            }
        }
        self.rebuild_all();
    }

    fn first_failing_schreier(&self, lvl: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[lvl];
        for &x in &level.orbit {
            let ux = level.rep(x);
            for &s in &level.gens {
                let gen = &self.strong[s];
                let y = gen.apply(x);
                let t = ux.then(gen);
                if &t == level.rep(y) {
                    continue;
                }
                let h = t.then(level.rep_inverse(y));
                let (res, j) = self.sift(&h, lvl + 1);
                if !res.is_identity() {
                    return Some((res, j.min(self.levels.len())));
                }
            }
        }
        None
    }

    /// Uniformly random element: product of random transversal elements.
    pub fn random_element<R: RngCore>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let k = (rng.next_u64() % level.orbit.len() as u64) as usize;
            g = g.then(level.rep(level.orbit[k]));
        }
        g
    }
}

fn empty_level(n: usize, base_point: usize) -> Level {
    let mut transversal = vec![None; n];
    let mut inverse = vec![None; n];
    transversal[base_point] = Some(Permutation::identity(n));
    inverse[base_point] = Some(Permutation::identity(n));
    Level {
        base_point,
        gens: Vec::new(),
        orbit: vec![base_point],
        transversal,
        inverse,
    }
}

/// Product replacement random element generator.
struct ProductReplacement {
    slots: Vec<Permutation>,
    acc: Permutation,
}

impl ProductReplacement {
    fn new<R: RngCore>(n: usize, gens: &[Permutation], rng: &mut R) -> Self {
        let gens: Vec<&Permutation> = gens.iter().filter(|g| !g.is_identity()).collect();
        let count = gens.len().max(10);
        let slots = (0..count).map(|i| gens[i % gens.len()].clone()).collect();
        let mut pr = ProductReplacement {
            slots,
            acc: Permutation::identity(n),
        };
        for _ in 0..50 {
            pr.next(rng);
        }
        pr
    }

    fn next<R: RngCore>(&mut self, rng: &mut R) -> Permutation {
        let len = self.slots.len() as u64;
        let i = (rng.next_u64() % len) as usize;
        let mut j = (rng.next_u64() % (len - 1)) as usize;
        if j >= i {
            j += 1;
        }
        let other = if rng.next_u32() & 1 == 0 {
            self.slots[j].clone()
        } else {
            self.slots[j].inverse()
        };
        self.slots[i] = if rng.next_u32() & 1 == 0 {
            self.slots[i].then(&other)
        } else {
            other.then(&self.slots[i])
        };
        self.acc = self.acc.then(&self.slots[i]);
        self.acc.clone()
    }
}
