//! Group sources named on the command line.
//!
//! `catalog:NAME@DEGREE` (or `catalog:NAME` when unique), `sym:N`, `alt:N`,
//! `cyclic:N`, `trivial:N`, `file:PATH`, or a bare path to a group file.

use hyperaut_core::PermutationGroup;

use crate::data::load_catalog;
use crate::error::{CliError, Result};
use crate::formats::GroupFile;

#[derive(Clone, Debug)]
pub struct ResolvedGroup {
    /// Catalog label, or the source text.
    pub label: String,
    pub group: PermutationGroup,
    pub table1_member: Option<bool>,
}

fn degree_arg(kind: &str, rest: &str) -> Result<usize> {
    rest.parse()
        .map_err(|_| CliError::Input(format!("{kind}: expected a degree, got {rest:?}")))
}

pub fn resolve(source: &str) -> Result<ResolvedGroup> {
    let plain = |group: PermutationGroup| ResolvedGroup {
        label: source.to_string(),
        group,
        table1_member: None,
    };
    if let Some((kind, rest)) = source.split_once(':') {
        match kind {
            "catalog" => {
                let (entry, group) = load_catalog()?.find_label(rest)?;
                return Ok(ResolvedGroup {
                    label: entry.label(),
                    group: group.clone(),
                    table1_member: Some(entry.table1_member),
                });
            }
            "sym" => return Ok(plain(PermutationGroup::symmetric(degree_arg(kind, rest)?)?)),
            "alt" => return Ok(plain(PermutationGroup::alternating(degree_arg(kind, rest)?)?)),
            "cyclic" => return Ok(plain(PermutationGroup::cyclic(degree_arg(kind, rest)?)?)),
            "trivial" => return Ok(plain(PermutationGroup::trivial(degree_arg(kind, rest)?)?)),
            "file" => return read_file(rest, source),
            _ => {}
        }
    }
    read_file(source, source)
}

fn read_file(path: &str, source: &str) -> Result<ResolvedGroup> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let file = GroupFile::parse(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    let (degree, perms) = file
        .permutations()
        .map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    Ok(ResolvedGroup {
        label: source.to_string(),
        group: PermutationGroup::from_generators(degree, perms)?,
        table1_member: None,
    })
}
