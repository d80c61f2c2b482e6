//! Bundled data files: the group catalog and the inequality registry
//! defaults.

use std::sync::OnceLock;

use hyperaut_core::catalog::{synthesize_standard, Catalog};

use crate::error::Result;
use crate::formats::{CatalogFile, RegistryFile};

pub const CATALOG_JSON: &str = include_str!("../data/catalog.json");
pub const REGISTRY_JSON: &str = include_str!("../data/registry.json");

/// Parses and verifies a catalog file.
pub fn load_catalog_from(text: &str) -> Result<Catalog> {
    let file = CatalogFile::parse(text)?;
    Ok(Catalog::new(file.to_entries()?)?)
}

/// The bundled catalog, verified once per process.
pub fn load_catalog() -> Result<&'static Catalog> {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    if let Some(c) = CATALOG.get() {
        return Ok(c);
    }
    let c = load_catalog_from(CATALOG_JSON)?;
    Ok(CATALOG.get_or_init(|| c))
}

pub fn registry() -> Result<RegistryFile> {
    RegistryFile::parse(REGISTRY_JSON)
}

/// Regenerates the bundled catalog file from the construction recipes.
pub fn synthesize_catalog_json() -> Result<String> {
    Ok(CatalogFile::from_entries(&synthesize_standard()?).render())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_catalog_matches_recipes() {
        assert_eq!(CATALOG_JSON, synthesize_catalog_json().unwrap());
    }

    #[test]
    fn bundled_catalog_verifies() {
        let c = load_catalog().unwrap();
        assert_eq!(c.len(), 66);
        assert_eq!(c.entries().iter().filter(|e| e.table1_member).count(), 16);
    }

    #[test]
    fn registry_has_a_default_for_every_inequality() {
        let r = registry().unwrap();
        for e in hyperaut_core::bounds::REGISTRY {
            assert!(r.scan(e.name).is_some(), "{}", e.name);
        }
        assert_eq!(r.constants().unwrap().iter().count(), 3);
    }
}
