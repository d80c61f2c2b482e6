//! Worker pool sizing and per-item seeds.

use sha2::{Digest, Sha256};

pub const JOBS_ENV: &str = "HYPERAUT_JOBS";

/// `--jobs`, else `HYPERAUT_JOBS`, else the available parallelism.
pub fn job_count(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var(JOBS_ENV).ok()?.parse().ok())
        .filter(|&j| j > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
}

/// Seed for batch item `index`, independent of scheduling.
pub fn item_seed(master: u64, index: usize) -> u64 {
    let mut h = Sha256::new();
    h.update(master.to_le_bytes());
    h.update((index as u64).to_le_bytes());
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().expect("8 bytes"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_differ_per_item_and_are_stable() {
        assert_ne!(item_seed(1, 0), item_seed(1, 1));
        assert_ne!(item_seed(1, 0), item_seed(2, 0));
        assert_eq!(item_seed(7, 3), item_seed(7, 3));
    }

    #[test]
    fn explicit_flag_wins() {
        assert_eq!(job_count(Some(3)), 3);
        assert!(job_count(None) >= 1);
    }
}
