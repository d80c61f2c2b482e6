//! Resumable state for long rank-profile scans.

use std::path::Path;

use hyperaut_core::search::RankScan;
use hyperaut_core::{PermutationGroup, Subset};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::manifest::sha256_hex;

pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub size: usize,
    /// 1-indexed points of the smallest realizing subset.
    pub witness: Option<Vec<usize>>,
    pub representatives_tested: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    /// Digest of the degree and generators; a mismatch means another group.
    pub group_digest: String,
    pub completed: Vec<ScanRecord>,
}

pub fn group_digest(group: &PermutationGroup) -> String {
    let mut text = format!("{}\n", group.degree());
    for g in group.generators() {
        text.push_str(&g.to_string());
        text.push('\n');
    }
    sha256_hex(text.as_bytes())
}

impl ScanRecord {
    pub fn from_scan(s: &RankScan) -> ScanRecord {
        ScanRecord {
            size: s.size,
            witness: s.witness.map(|w| w.to_labels()),
            representatives_tested: s.representatives_tested,
        }
    }

    pub fn to_scan(&self) -> RankScan {
        RankScan {
            size: self.size,
            witness: self
                .witness
                .as_ref()
                .map(|w| Subset::from_points(w.iter().map(|x| x - 1))),
            representatives_tested: self.representatives_tested,
        }
    }
}

impl Checkpoint {
    pub fn new(group: &PermutationGroup) -> Checkpoint {
        Checkpoint {
            version: CHECKPOINT_VERSION,
            group_digest: group_digest(group),
            completed: Vec::new(),
        }
    }

    /// Loads a checkpoint for `group`, or starts afresh if `path` is absent.
    pub fn load_or_new(path: &Path, group: &PermutationGroup) -> Result<Checkpoint> {
        if !path.exists() {
            return Ok(Checkpoint::new(group));
        }
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(&shown, e))?;
        let cp: Checkpoint = serde_json::from_str(&text).map_err(|e| CliError::json(&shown, e))?;
        if cp.version != CHECKPOINT_VERSION || cp.group_digest != group_digest(group) {
            return Err(CliError::Input(format!("{shown}: checkpoint belongs to another group or version")));
        }
        Ok(cp)
    }

    pub fn is_done(&self, size: usize) -> bool {
        self.completed.iter().any(|r| r.size == size)
    }

    pub fn record(&mut self, scan: &RankScan) {
        if !self.is_done(scan.size) {
            self.completed.push(ScanRecord::from_scan(scan));
            self.completed.sort_by_key(|r| r.size);
        }
    }

    /// Writes through a temporary file so an interrupted write leaves the
    /// previous state intact.
    pub fn save(&self, path: &Path) -> Result<()> {
        let shown = path.display().to_string();
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string_pretty(self).map_err(|e| CliError::json(&shown, e))?;
        std::fs::write(&tmp, text).map_err(|e| CliError::io(&shown, e))?;
        std::fs::rename(&tmp, path).map_err(|e| CliError::io(&shown, e))
    }

    pub fn scans(&self) -> Vec<RankScan> {
        self.completed.iter().map(ScanRecord::to_scan).collect()
    }
}
