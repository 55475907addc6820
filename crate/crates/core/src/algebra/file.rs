//! Plain-text algebra definition files.
//!
//! Format (one declaration per line, `#` starts a comment):
//!
//! ```text
//! n = 1
//! depth = 3
//! families * = e f h          # same families at every degree, or
//! families 0 = x y            # explicit per-degree lists
//! bracket [0,e] [0,f] -> h : 1
//! bracket [1,e] [-1,f] -> h : 2^n1 - n2
//! ```
//!
//! Bracket right-hand sides are exp-polynomials in the 2n lattice variables
//! `n1..n2n` (first block alpha, second block beta). Entries for a missing
//! orientation are derived by antisymmetry; degree pairs never mentioned
//! bracket to zero.

use super::{AlgebraSpec, FamilyTable, StructureTable};
use crate::error::{Error, Result};
use crate::exppoly::parse_exppoly;
use std::collections::BTreeMap;

fn split_once_trim(line: &str, sep: char) -> Option<(&str, &str)> {
    line.split_once(sep).map(|(a, b)| (a.trim(), b.trim()))
}

/// Parse `[i,name]` into its parts.
fn parse_slot(text: &str) -> Result<(i64, String)> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [degree,family], got `{text}`")))?;
    let (deg, fam) = split_once_trim(inner, ',')
        .ok_or_else(|| Error::Parse(format!("expected [degree,family], got `{text}`")))?;
    let i: i64 = deg
        .parse()
        .map_err(|e| Error::Parse(format!("bad degree `{deg}`: {e}")))?;
    Ok((i, fam.to_string()))
}

/// Parse an algebra definition from text.
pub fn parse_algebra_file(text: &str, name: &str) -> Result<AlgebraSpec> {
    let mut n: Option<usize> = None;
    let mut depth: i64 = 3;
    let mut uniform: Option<Vec<String>> = None;
    let mut per_degree: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    let mut brackets: Vec<(i64, String, i64, String, String, String)> = Vec::new();

    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("bracket ") {
            let (lhs, rhs) = split_once_trim(rest, ':')
                .ok_or_else(|| Error::Parse(format!("bracket line needs `:`, got `{line}`")))?;
            let (pair, target) = split_once_trim(lhs, '>')
                .and_then(|(a, b)| a.strip_suffix('-').map(|a| (a.trim(), b)))
                .ok_or_else(|| Error::Parse(format!("bracket line needs `->`, got `{line}`")))?;
            let mut slots = pair.split_whitespace();
            let x = slots
                .next()
                .ok_or_else(|| Error::Parse("missing first bracket slot".into()))?;
            let y = slots
                .next()
                .ok_or_else(|| Error::Parse("missing second bracket slot".into()))?;
            let (i, k) = parse_slot(x)?;
            let (j, m) = parse_slot(y)?;
            brackets.push((i, k, j, m, target.to_string(), rhs.to_string()));
        } else if let Some(rest) = line.strip_prefix("families ") {
            let (which, list) = split_once_trim(rest, '=')
                .ok_or_else(|| Error::Parse(format!("families line needs `=`, got `{line}`")))?;
            let names: Vec<String> = list.split_whitespace().map(str::to_string).collect();
            if names.is_empty() {
                return Err(Error::Parse("empty family list".into()));
            }
            if which == "*" {
                uniform = Some(names);
            } else {
                let i: i64 = which
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad degree `{which}`: {e}")))?;
                per_degree.insert(i, names);
            }
        } else if let Some((key, value)) = split_once_trim(line, '=') {
            match key {
                "n" => {
                    n = Some(
                        value
                            .parse()
                            .map_err(|e| Error::Parse(format!("bad n `{value}`: {e}")))?,
                    )
                }
                "depth" => {
                    depth = value
                        .parse()
                        .map_err(|e| Error::Parse(format!("bad depth `{value}`: {e}")))?
                }
                other => return Err(Error::Parse(format!("unknown key `{other}`"))),
            }
        } else {
            return Err(Error::Parse(format!("unparseable line `{line}`")));
        }
    }

    let n = n.ok_or_else(|| Error::Parse("missing `n = ...`".into()))?;
    if uniform.is_some() && !per_degree.is_empty() {
        return Err(Error::Parse(
            "use either `families *` or per-degree lists, not both".into(),
        ));
    }
    let families = match uniform {
        Some(names) => FamilyTable::Uniform(names),
        None => {
            if per_degree.is_empty() {
                return Err(Error::Parse("missing families declaration".into()));
            }
            FamilyTable::PerDegree(per_degree)
        }
    };

    let spec_without_structure = AlgebraSpec::new(
        name.to_string(),
        n,
        depth,
        families,
        StructureTable::Table(BTreeMap::new()),
    );

    let mut table = super::StructureMap::new();
    for (i, k, j, m, s, rhs) in brackets {
        let k = spec_without_structure.family_index(i, &k)?;
        let m = spec_without_structure.family_index(j, &m)?;
        let s = spec_without_structure.family_index(i + j, &s)?;
        let f = parse_exppoly(&rhs, 2 * n)?;
        table.entry((i, j, k, m)).or_default().push((s, f));
    }

    Ok(AlgebraSpec::new(
        spec_without_structure.name.clone(),
        n,
        depth,
        spec_without_structure.families.clone(),
        StructureTable::Table(table),
    ))
}
