//! Text form for induced-module vectors, used by `radical test`:
//!
//! ```text
//! 1*[-1,0;3]v[0;-3] - 1*[-1,0;0]v[0;0] + 3*[-1,0;1]v[0;-1]
//! ```
//!
//! Each term is an optional scalar coefficient, a sequence of letters
//! `[degree,family;lattice]` with negative degree, and a base `v[j;lattice]`
//! (`v[j]` for finite-kind modules). Lattice points are comma-separated
//! integers.

use anyhow::{anyhow, bail, Result};
use explie_core::algebra::{AlgebraSpec, Generator};
use explie_core::exactnum::{parse_scalar, Scalar};
use explie_core::gmodule::{ModuleKind, ModuleSpec};
use explie_core::induce::{FormalVector, PBWWord};

fn parse_ints(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| anyhow!("bad integer `{t}`: {e}"))
        })
        .collect()
}

/// Split `source` into chunks at top-level `+`/`-` signs, keeping the sign.
fn signed_terms(source: &str) -> Vec<(i64, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut sign = 1i64;
    for c in source.chars() {
        match c {
            '[' | '(' => {
                depth += 1;
                cur.push(c);
            }
            ']' | ')' => {
                depth -= 1;
                cur.push(c);
            }
            '+' | '-' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push((sign, cur.trim().to_string()));
                }
                sign = if c == '-' { -1 } else { 1 };
                cur = String::new();
            }
            _ => cur.push(c),
        }
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur.trim().to_string()));
    }
    out
}

/// Parse one vector in the text form against an algebra/module pair.
pub fn parse_vector(
    source: &str,
    algebra: &AlgebraSpec,
    module: &ModuleSpec,
) -> Result<FormalVector> {
    let n = algebra.lattice_rank();
    let mut out = FormalVector::zero();
    for (sign, term) in signed_terms(source) {
        // optional coefficient before the first '['
        let bracket = term
            .find('[')
            .ok_or_else(|| anyhow!("term `{term}` has no letters or base"))?;
        let vpos = term
            .find("v[")
            .ok_or_else(|| anyhow!("term `{term}` has no base `v[..]`"))?;
        let (coeff_text, word_text) = if bracket < vpos {
            term.split_at(bracket)
        } else {
            term.split_at(vpos)
        };
        let coeff_text = coeff_text.trim().trim_end_matches('*').trim();
        let mut coeff = if coeff_text.is_empty() {
            Scalar::one()
        } else {
            parse_scalar(coeff_text).map_err(|e| anyhow!("bad coefficient: {e}"))?
        };
        if sign < 0 {
            coeff = -&coeff;
        }

        // letters, then the base
        let mut letters = Vec::new();
        let mut rest = word_text.trim();
        while let Some(body) = rest.strip_prefix('[') {
            let end = body
                .find(']')
                .ok_or_else(|| anyhow!("unterminated letter in `{term}`"))?;
            let inner = &body[..end];
            rest = body[end + 1..].trim();
            let (head, lattice) = inner
                .split_once(';')
                .ok_or_else(|| anyhow!("letter `{inner}` needs `degree,family;lattice`"))?;
            let (deg, fam) = head
                .split_once(',')
                .ok_or_else(|| anyhow!("letter `{inner}` needs `degree,family`"))?;
            let i: i64 = deg.trim().parse()?;
            if i >= 0 {
                bail!("letter degree {i} must be negative");
            }
            let family: usize = fam.trim().parse()?;
            if family >= algebra.family_count(i) {
                bail!("family {family} not in K_{i}");
            }
            let alpha = parse_ints(lattice)?;
            if alpha.len() != n {
                bail!("letter lattice point needs {n} coordinates");
            }
            letters.push(Generator::new(i, alpha, family));
        }
        let base_body = rest
            .strip_prefix("v[")
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| anyhow!("term `{term}` must end with `v[..]`"))?;
        let (j, weight) = match base_body.split_once(';') {
            Some((j, w)) => (j.trim().parse::<usize>()?, parse_ints(w)?),
            None => (base_body.trim().parse::<usize>()?, Vec::new()),
        };
        if j >= module.basis_len() {
            bail!("basis index {j} out of range");
        }
        match module.kind() {
            ModuleKind::Graded if weight.len() != n => {
                bail!("base weight needs {n} coordinates for a graded module")
            }
            ModuleKind::Finite if !weight.is_empty() => {
                bail!("finite-kind base takes no weight, write v[{j}]")
            }
            _ => {}
        }
        out.insert(
            PBWWord {
                letters,
                base: (j, weight),
            },
            coeff,
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use explie_core::algebra::registry_algebra;
    use explie_core::gmodule::registry_module;

    #[test]
    fn parses_the_claim2_vector() {
        let a = registry_algebra("generalized-virasoro", &Default::default()).unwrap();
        let m = registry_module("vir", &Default::default(), &a).unwrap();
        let x = parse_vector(
            "[-1,0;3]v[0;-3] - [-1,0;0]v[0;0] + 3*[-1,0;1]v[0;-1] - 3*[-1,0;2]v[0;-2]",
            &a,
            &m,
        )
        .unwrap();
        assert_eq!(x.len(), 4);
        assert_eq!(x.homogeneous_bidegree(), Some((-1, Some(vec![0]))));
    }

    #[test]
    fn rejects_nonnegative_letters_and_bad_shapes() {
        let a = registry_algebra("generalized-virasoro", &Default::default()).unwrap();
        let m = registry_module("vir", &Default::default(), &a).unwrap();
        assert!(parse_vector("[1,0;0]v[0;0]", &a, &m).is_err());
        assert!(parse_vector("v[0]", &a, &m).is_err());
        assert!(parse_vector("[-1,5;0]v[0;1]", &a, &m).is_err());
    }
}
