//! Run manifests: what was run, with which seed, and a digest of the output.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = concat!("hyperaut ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub wall_time_seconds: f64,
    /// Hex SHA-256 of the primary output bytes.
    pub outputs_digest: String,
    pub exit_code: u8,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(
        command: &str,
        arguments: &[String],
        seed: Option<u64>,
        wall_time_seconds: f64,
        output: &str,
        exit_code: u8,
    ) -> RunManifest {
        RunManifest {
            command: command.to_string(),
            arguments: arguments.to_vec(),
            seed,
            tool_version: TOOL_VERSION.to_string(),
            wall_time_seconds,
            outputs_digest: sha256_hex(output.as_bytes()),
            exit_code,
        }
    }
}
