//! Plain-text module definition files, mirroring the algebra format:
//!
//! ```text
//! kind = graded            # or finite
//! n = 1
//! basis = v0 v1
//! action [h] [v0] -> v0 : 1
//! action [e] [v1] -> v0 : 2^n1
//! ```
//!
//! Action right-hand sides use `n1..n2n` (generator weight, then target
//! weight) for the graded kind and `n1..nn` for the finite kind. Family
//! names in the first slot resolve against the paired algebra's `K_0`.

use super::{ActionTable, ModuleKind, ModuleSpec};
use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::exppoly::{parse_exppoly, ExpPoly};
use std::collections::BTreeMap;

fn strip_brackets(text: &str) -> Result<&str> {
    text.trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .map(str::trim)
        .ok_or_else(|| Error::Parse(format!("expected [name], got `{text}`")))
}

/// Parse a module definition from text, pairing it with `algebra`.
pub fn parse_module_file(text: &str, name: &str, algebra: &AlgebraSpec) -> Result<ModuleSpec> {
    let mut kind: Option<ModuleKind> = None;
    let mut n: Option<usize> = None;
    let mut basis: Option<Vec<String>> = None;
    let mut actions: Vec<(String, String, String, String)> = Vec::new();

    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("action ") {
            let (lhs, rhs) = line_split(rest, ':')?;
            let (pair, target) = lhs
                .split_once("->")
                .map(|(a, b)| (a.trim(), b.trim()))
                .ok_or_else(|| Error::Parse(format!("action line needs `->`: `{line}`")))?;
            let mut slots = pair.split_whitespace();
            let k = slots
                .next()
                .ok_or_else(|| Error::Parse("missing generator slot".into()))?;
            let j = slots
                .next()
                .ok_or_else(|| Error::Parse("missing basis slot".into()))?;
            actions.push((
                strip_brackets(k)?.to_string(),
                strip_brackets(j)?.to_string(),
                target.to_string(),
                rhs.to_string(),
            ));
        } else if let Some((key, value)) = line.split_once('=').map(|(a, b)| (a.trim(), b.trim())) {
            match key {
                "kind" => {
                    kind = Some(match value {
                        "graded" => ModuleKind::Graded,
                        "finite" => ModuleKind::Finite,
                        other => return Err(Error::Parse(format!("unknown kind `{other}`"))),
                    })
                }
                "n" => {
                    n = Some(
                        value
                            .parse()
                            .map_err(|e| Error::Parse(format!("bad n `{value}`: {e}")))?,
                    )
                }
                "basis" => {
                    let names: Vec<String> = value.split_whitespace().map(str::to_string).collect();
                    if names.is_empty() {
                        return Err(Error::Parse("empty basis".into()));
                    }
                    basis = Some(names);
                }
                other => return Err(Error::Parse(format!("unknown key `{other}`"))),
            }
        } else {
            return Err(Error::Parse(format!("unparseable line `{line}`")));
        }
    }

    let kind = kind.ok_or_else(|| Error::Parse("missing `kind = ...`".into()))?;
    let n = n.ok_or_else(|| Error::Parse("missing `n = ...`".into()))?;
    let basis = basis.ok_or_else(|| Error::Parse("missing `basis = ...`".into()))?;
    if n != algebra.lattice_rank() {
        return Err(Error::Param(format!(
            "module rank {n} != algebra rank {}",
            algebra.lattice_rank()
        )));
    }
    let arity = match kind {
        ModuleKind::Graded => 2 * n,
        ModuleKind::Finite => n,
    };
    let mut table: BTreeMap<(usize, usize), Vec<(usize, ExpPoly)>> = BTreeMap::new();
    for (k_name, j_name, s_name, rhs) in actions {
        let k = algebra.family_index(0, &k_name)?;
        let j = basis
            .iter()
            .position(|b| *b == j_name)
            .ok_or_else(|| Error::Unknown(format!("no basis vector `{j_name}`")))?;
        let s = basis
            .iter()
            .position(|b| *b == s_name)
            .ok_or_else(|| Error::Unknown(format!("no basis vector `{s_name}`")))?;
        let f = parse_exppoly(&rhs, arity)?;
        table.entry((k, j)).or_default().push((s, f));
    }
    Ok(ModuleSpec::new(
        name.to_string(),
        algebra.name().to_string(),
        kind,
        n,
        basis,
        algebra.family_count(0),
        ActionTable::Table(table),
    ))
}

fn line_split(line: &str, sep: char) -> Result<(&str, &str)> {
    line.split_once(sep)
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| Error::Parse(format!("expected `{sep}` in `{line}`")))
}
