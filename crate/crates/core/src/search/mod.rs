//! Searching for subsets whose orbit hypergraph has exactly the given group
//! as its automorphism group.

mod fixed;

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::hypergraph::realizes;
use crate::subset::{check_domain, KSubsets, Subset};

pub use fixed::{fixed_family, s_family, ClassContribution, FixedFamilyMode, FixedFamilyReport};

pub const DEFAULT_SEED: u64 = 20_240_501;

/// Largest degree for which a visited bit per subset is kept.
pub const MAX_SCAN_DEGREE: usize = 28;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest `|Δ|` tried by the random search.
    pub max_subset_size: usize,
    /// Random subsets drawn per size.
    pub trials: usize,
    pub seed: u64,
    /// Largest degree for scans over all `2^n` subsets.
    pub exhaustive_limit: usize,
    /// Largest group order enumerated element by element.
    pub element_limit: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_subset_size: 6,
            trials: 64,
            seed: DEFAULT_SEED,
            exhaustive_limit: 24,
            element_limit: crate::group::DEFAULT_ELEMENT_LIMIT,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Realized,
    ExceptionCertified,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Realized => "realized",
            Status::ExceptionCertified => "exception_certified",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationResult {
    pub status: Status,
    /// Realizing subset; for exhaustive runs the smallest by `(size, mask)`.
    pub witness: Option<Subset>,
    /// Sorted sizes `r` in `1..n` admitting a realizing `r`-subset. Present
    /// for full rank profiles and for certified exceptions.
    pub ranks_realizable: Option<Vec<usize>>,
    /// `(size, subsets tested)` for each size attempted.
    pub trials_used: Vec<(usize, usize)>,
}

fn check_searchable(group: &PermutationGroup) -> Result<()> {
    check_domain(group.degree())?;
    if group.contains_alternating() {
        return Err(Error::ContainsAlternating);
    }
    Ok(())
}

/// Uniform random `k`-subset of `{0..n-1}` by a Fisher-Yates prefix.
pub fn random_subset<R: RngCore>(n: usize, k: usize, rng: &mut R) -> Subset {
    let mut points: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = i + (rng.next_u64() % (n - i) as u64) as usize;
        points.swap(i, j);
    }
    Subset::from_points(points[..k].iter().copied())
}

/// Tests seeded random subsets of sizes `1..=max_subset_size` (capped at
/// `n/2`) and returns the first realizing one.
pub fn random_search(group: &PermutationGroup, config: &SearchConfig) -> Result<RealizationResult> {
    check_searchable(group)?;
    let n = group.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut trials_used = Vec::new();
    for k in 1..=config.max_subset_size.min(n / 2) {
        for t in 1..=config.trials.max(1) {
            let delta = random_subset(n, k, &mut rng);
            if realizes(group, delta)? {
                trials_used.push((k, t));
                return Ok(RealizationResult {
                    status: Status::Realized,
                    witness: Some(delta),
                    ranks_realizable: None,
                    trials_used,
                });
            }
        }
        trials_used.push((k, config.trials.max(1)));
    }
    Ok(RealizationResult {
        status: Status::Inconclusive,
        witness: None,
        ranks_realizable: None,
        trials_used,
    })
}

/// Outcome of scanning one subset size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankScan {
    pub size: usize,
    /// Smallest realizing mask of this size.
    pub witness: Option<Subset>,
    /// Orbit representatives tested.
    pub representatives_tested: usize,
}

/// Visits the smallest mask of every orbit of `group` on `k`-subsets, in
/// increasing order, until `visit` returns `false`.
pub fn for_each_orbit_representative<F>(group: &PermutationGroup, k: usize, mut visit: F) -> Result<()>
where
    F: FnMut(Subset) -> Result<bool>,
{
    let n = group.degree();
    check_domain(n)?;
    if n > MAX_SCAN_DEGREE {
        return Err(Error::LimitExceeded {
            what: "orbit representative scan degree",
            value: n,
            limit: MAX_SCAN_DEGREE,
        });
    }
    let mut visited = Bitmap::new(n);
    let mut queue: Vec<u64> = Vec::new();
    for delta in KSubsets::new(n, k) {
        if visited.get(delta.0) {
            continue;
        }
        visited.set(delta.0);
        queue.clear();
        queue.push(delta.0);
        while let Some(s) = queue.pop() {
            for g in group.generators() {
                let t = g.apply_subset(Subset(s)).0;
                if !visited.get(t) {
                    visited.set(t);
                    queue.push(t);
                }
            }
        }
        if !visit(delta)? {
            break;
        }
    }
    Ok(())
}

/// Tests every orbit representative of size `k`, stopping at the first
/// realizing one.
pub fn scan_rank(group: &PermutationGroup, k: usize) -> Result<RankScan> {
    check_searchable(group)?;
    let mut tested = 0;
    let mut witness = None;
    for_each_orbit_representative(group, k, |delta| {
        tested += 1;
        if realizes(group, delta)? {
            witness = Some(delta);
            return Ok(false);
        }
        Ok(true)
    })?;
    Ok(RankScan {
        size: k,
        witness,
        representatives_tested: tested,
    })
}

fn check_exhaustive(group: &PermutationGroup, config: &SearchConfig) -> Result<()> {
    check_searchable(group)?;
    if group.degree() > config.exhaustive_limit {
        return Err(Error::LimitExceeded {
            what: "exhaustive scan degree",
            value: group.degree(),
            limit: config.exhaustive_limit,
        });
    }
    Ok(())
}

/// Scans orbit representatives of sizes `1..=n/2` in increasing size. Stops
/// at the first realizing size unless `rank_profile` asks for every size.
/// Complements realize together, so sizes above `n/2` mirror smaller ones.
pub fn exhaustive_certify(
    group: &PermutationGroup,
    config: &SearchConfig,
    rank_profile: bool,
) -> Result<RealizationResult> {
    check_exhaustive(group, config)?;
    let n = group.degree();
    let mut scans = Vec::new();
    for k in 1..=n / 2 {
        let scan = scan_rank(group, k)?;
        let hit = scan.witness.is_some();
        scans.push(scan);
        if hit && !rank_profile {
            break;
        }
    }
    Ok(assemble(n, &scans, rank_profile))
}

/// Combines per-size scans covering sizes `1..` into a result.
pub fn assemble(n: usize, scans: &[RankScan], rank_profile: bool) -> RealizationResult {
    let witness = scans.iter().find_map(|s| s.witness);
    let trials_used = scans.iter().map(|s| (s.size, s.representatives_tested)).collect();
    let mut ranks: Vec<usize> = Vec::new();
    for s in scans.iter().filter(|s| s.witness.is_some()) {
        ranks.push(s.size);
        ranks.push(n - s.size);
    }
    ranks.sort_unstable();
    ranks.dedup();
    let status = if witness.is_some() {
        Status::Realized
    } else {
        Status::ExceptionCertified
    };
    let ranks_realizable = (rank_profile || witness.is_none()).then_some(ranks);
    RealizationResult {
        status,
        witness,
        ranks_realizable,
        trials_used,
    }
}

/// One bit per subset of an `n`-point domain.
pub(crate) struct Bitmap {
    words: Vec<u64>,
}

impl Bitmap {
    pub fn new(n: usize) -> Bitmap {
        let bits = 1usize << n;
        Bitmap {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    #[inline]
    pub fn get(&self, i: u64) -> bool {
        self.words[(i >> 6) as usize] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: u64) -> bool {
        let w = &mut self.words[(i >> 6) as usize];
        let bit = 1u64 << (i & 63);
        let was = *w & bit != 0;
        *w |= bit;
        !was
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn or_assign(&mut self, other: &Bitmap) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Smallest clear bit below `limit`.
    pub fn first_clear(&self, limit: u64) -> Option<u64> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != u64::MAX {
                let bit = (i as u64) * 64 + (!w).trailing_zeros() as u64;
                return (bit < limit).then_some(bit);
            }
        }
        None
    }
}
