//! Permutation groups, hypergraph automorphism groups and certified counting
//! bounds for deciding which small primitive groups are full automorphism
//! groups of edge-transitive hypergraphs.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the bundled
//! group catalog data and the command-line front end live in the `hyperaut`
//! companion crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod catalog;
mod error;
pub mod group;
pub mod hypergraph;
pub mod perm;
pub mod search;
pub mod subset;

pub use error::{Error, Result};
pub use group::{BlockSystem, PermutationGroup, PrimeOrderClass, PrimeOrderClassTable};
pub use hypergraph::Hypergraph;
pub use perm::{CycleData, Permutation};
pub use subset::Subset;
