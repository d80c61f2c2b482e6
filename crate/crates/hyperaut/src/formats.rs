//! On-disk formats: the catalog and registry JSON files, group files and
//! decimal constants.

use std::str::FromStr;

use hyperaut_core::catalog::{CatalogEntry, SCHEMA_VERSION};
use hyperaut_core::perm::max_label;
use hyperaut_core::{Error as CoreError, Permutation};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
    /// Decimal string; orders may exceed 64 bits.
    pub expected_order: String,
    pub expected_primitive: bool,
    pub onan_scott_tag: String,
    pub table1_member: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub schema_version: u32,
    /// Resolutions of naming questions, kept with the data they concern.
    #[serde(default)]
    pub notes: Vec<String>,
    pub entries: Vec<CatalogRecord>,
}

impl From<&CatalogEntry> for CatalogRecord {
    fn from(e: &CatalogEntry) -> Self {
        CatalogRecord {
            name: e.name.clone(),
            degree: e.degree,
            generators: e.generators.clone(),
            expected_order: e.expected_order.to_string(),
            expected_primitive: e.expected_primitive,
            onan_scott_tag: e.onan_scott_tag.clone(),
            table1_member: e.table1_member,
            recipe: e.recipe.clone(),
            note: e.note.clone(),
        }
    }
}

impl TryFrom<&CatalogRecord> for CatalogEntry {
    type Error = CliError;

    fn try_from(r: &CatalogRecord) -> Result<Self> {
        let expected_order = BigUint::from_str(&r.expected_order).map_err(|_| {
            CliError::Input(format!("{}@{}: bad expected_order {:?}", r.name, r.degree, r.expected_order))
        })?;
        Ok(CatalogEntry {
            name: r.name.clone(),
            degree: r.degree,
            generators: r.generators.clone(),
            expected_order,
            expected_primitive: r.expected_primitive,
            onan_scott_tag: r.onan_scott_tag.clone(),
            table1_member: r.table1_member,
            recipe: r.recipe.clone(),
            note: r.note.clone(),
        })
    }
}

/// Notes stored alongside the synthesized catalog.
pub const CATALOG_NOTES: &[&str] = &[
    "Names are ASCII: ':' is a semidirect product, 'x' a direct product, \
     'Gamma'/'Sigma' the semilinear groups, '{2}' the action on 2-subsets.",
    "The degree-9 groups (C3xC3):C4 and (C3xC3):Q8 are each the only primitive \
     group of their shape at degree 9; all degree-9 entries have distinct \
     fingerprints, so no conjugacy-class choice is involved.",
    "PSL(2,7)@7 is the action on the Fano plane (PSL(3,2)); PSL(2,7)@8 is the \
     action on the projective line.",
];

impl CatalogFile {
    pub fn from_entries(entries: &[CatalogEntry]) -> CatalogFile {
        CatalogFile {
            schema_version: SCHEMA_VERSION,
            notes: CATALOG_NOTES.iter().map(|s| s.to_string()).collect(),
            entries: entries.iter().map(CatalogRecord::from).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<CatalogFile> {
        let file: CatalogFile = serde_json::from_str(text).map_err(|e| CliError::json("catalog", e))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(CliError::Input(format!(
                "catalog schema version {} is not supported (expected {})",
                file.schema_version, SCHEMA_VERSION
            )));
        }
        Ok(file)
    }

    pub fn to_entries(&self) -> Result<Vec<CatalogEntry>> {
        self.entries.iter().map(CatalogEntry::try_from).collect()
    }

    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("catalog serializes");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalConstant {
    pub name: String,
    /// Decimal string.
    pub value: String,
    /// Where the value comes from; these are not recomputed here.
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanDefault {
    pub name: String,
    pub lo: u64,
    pub hi: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryFile {
    pub schema_version: u32,
    pub external_constants: Vec<ExternalConstant>,
    pub scans: Vec<ScanDefault>,
}

impl RegistryFile {
    pub fn parse(text: &str) -> Result<RegistryFile> {
        serde_json::from_str(text).map_err(|e| CliError::json("registry", e))
    }

    pub fn constants(&self) -> Result<hyperaut_core::bounds::ExternalConstants> {
        let mut c = hyperaut_core::bounds::ExternalConstants::new();
        for k in &self.external_constants {
            let v = BigUint::from_str(&k.value)
                .map_err(|_| CliError::Input(format!("constant {}: bad value {:?}", k.name, k.value)))?;
            c.insert(k.name.clone(), v);
        }
        Ok(c)
    }

    pub fn scan(&self, name: &str) -> Option<&ScanDefault> {
        self.scans.iter().find(|s| s.name == name)
    }
}

/// A group given by generators, read from a file.
///
/// Text form: one cycle string per line, `#` comments, and an optional
/// `degree N` line; without it the degree is the largest label used.
/// JSON form: `{"degree": N, "generators": [...]}` with `degree` optional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(default)]
    pub degree: Option<usize>,
    pub generators: Vec<String>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<GroupFile> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).map_err(|e| CliError::json("group file", e));
        }
        let mut degree = None;
        let mut generators = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("degree") {
                let d = rest.trim_start_matches([' ', ':', '=']).trim();
                degree = Some(
                    d.parse()
                        .map_err(|_| CliError::Input(format!("bad degree line {line:?}")))?,
                );
            } else {
                generators.push(line.to_string());
            }
        }
        Ok(GroupFile { degree, generators })
    }

    /// Parses the generators; errors name the generator and byte position.
    pub fn permutations(&self) -> Result<(usize, Vec<Permutation>)> {
        let mut degree = self.degree.unwrap_or(0);
        if self.degree.is_none() {
            for (i, g) in self.generators.iter().enumerate() {
                degree = degree.max(max_label(g).map_err(|e| at_generator(i, e))?);
            }
        }
        if degree == 0 {
            return Err(CliError::Input("cannot infer the degree of an empty group; add a degree line".into()));
        }
        let perms = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| Permutation::parse(degree, g).map_err(|e| at_generator(i, e)))
            .collect::<Result<Vec<_>>>()?;
        Ok((degree, perms))
    }
}

fn at_generator(index: usize, e: CoreError) -> CliError {
    CliError::Input(format!("generator {}: {e}", index + 1))
}

/// Parses `"0.5211"`, `"3"` or `"7/10"` exactly.
pub fn parse_decimal(text: &str) -> Result<BigRational> {
    let bad = || CliError::Input(format!("not a decimal or fraction: {text:?}"));
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    if int.is_empty() && frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{}{}", if int.is_empty() { "0" } else { int }, frac);
    let num = BigInt::from_str(&digits).map_err(|_| bad())?;
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decimals() {
        assert_eq!(parse_decimal("0.5211").unwrap(), BigRational::new(5211.into(), 10_000.into()));
        assert_eq!(parse_decimal("3").unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(parse_decimal("2/5").unwrap(), parse_decimal("0.4").unwrap());
        assert_eq!(parse_decimal(".5").unwrap(), parse_decimal("1/2").unwrap());
        for bad in ["", ".", "abc", "1/0", "0.5x", "1.2.3"] {
            assert!(parse_decimal(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn text_group_file() {
        let f = GroupFile::parse("# Sym(4)\n(1,2)\n(1,2,3,4)  # 4-cycle\n").unwrap();
        let (n, perms) = f.permutations().unwrap();
        assert_eq!(n, 4);
        assert_eq!(perms.len(), 2);
        let f = GroupFile::parse("degree 6\n(1,2)\n").unwrap();
        assert_eq!(f.permutations().unwrap().0, 6);
    }

    #[test]
    fn json_group_file() {
        let f = GroupFile::parse(r#"{"generators": ["(1,2,3)"]}"#).unwrap();
        assert_eq!(f.permutations().unwrap().0, 3);
    }

    #[test]
    fn malformed_cycles_report_position() {
        let f = GroupFile::parse("(1,2)\n(1,,3)\n").unwrap();
        let msg = f.permutations().unwrap_err().to_string();
        assert!(msg.contains("generator 2"), "{msg}");
        assert!(msg.contains("byte 3"), "{msg}");
    }

    proptest! {
        #[test]
        fn decimal_round_trip(n in 0u64..1_000_000, places in 0u32..7) {
            let den = 10u64.pow(places);
            let text = if places == 0 {
                n.to_string()
            } else {
                format!("{}.{:0width$}", n / den, n % den, width = places as usize)
            };
            prop_assert_eq!(parse_decimal(&text).unwrap(), BigRational::new(n.into(), den.into()));
        }
    }
}
