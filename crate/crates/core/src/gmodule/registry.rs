//! Built-in modules paired with the registry algebras.

use super::{ActionTable, ModuleKind, ModuleSpec};
use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::exactnum::{parse_scalar, Scalar};
use crate::exppoly::{normalize, parse_exppoly, ExpPoly, TermKey};
use num::{BigRational, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

pub type Params = BTreeMap<String, String>;

fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| Error::Param(format!("bad rational `{s}`: {e}")))
}

fn require_algebra(algebra: &AlgebraSpec, prefix: &str, module: &str) -> Result<()> {
    if !algebra.name().starts_with(prefix) {
        return Err(Error::Param(format!(
            "module `{module}` pairs with `{prefix}*`, got algebra `{}`",
            algebra.name()
        )));
    }
    Ok(())
}

/// Matrix of the sl2 natural 2-dimensional representation on basis
/// (v+, v-) for the generator order (e, f, h): entries (k, j) -> [(s, c)].
fn sl2_natural() -> Vec<Vec<Vec<(usize, i64)>>> {
    let mut t = vec![vec![Vec::new(); 2]; 3];
    t[0][1] = vec![(0, 1)]; // e v- = v+
    t[1][0] = vec![(1, 1)]; // f v+ = v-
    t[2][0] = vec![(0, 1)]; // h v+ = v+
    t[2][1] = vec![(1, -1)]; // h v- = -v-
    t
}

/// Loop module over the toroidal sl2 algebra (one tensor factor, natural
/// representation): `g(alpha) v(beta) = q^alpha (g v)(alpha + beta)`.
fn loop_module(q: Vec<BigRational>, n: usize, algebra: &str) -> ModuleSpec {
    let table = sl2_natural();
    let rule = move |k: usize, j: usize| -> Vec<(usize, ExpPoly)> {
        let arity = 2 * n;
        table[k][j]
            .iter()
            .map(|&(s, c)| {
                let mut key = TermKey::unit(arity);
                key.bases[..n].clone_from_slice(&q);
                let f =
                    normalize(arity, vec![(key, Scalar::from_int(c))]).expect("bases are nonzero");
                (s, f)
            })
            .collect()
    };
    ModuleSpec::new(
        "loop".into(),
        algebra.to_string(),
        ModuleKind::Graded,
        n,
        vec!["v+".into(), "v-".into()],
        3,
        ActionTable::Rule(Arc::new(rule)),
    )
}

/// Finite-dimensional variant of the loop module:
/// `g(alpha) v = q^alpha (g v)`.
fn tensor_module(q: Vec<BigRational>, n: usize, algebra: &str) -> ModuleSpec {
    let table = sl2_natural();
    let rule = move |k: usize, j: usize| -> Vec<(usize, ExpPoly)> {
        table[k][j]
            .iter()
            .map(|&(s, c)| {
                let mut key = TermKey::unit(n);
                key.bases[..n].clone_from_slice(&q);
                let f = normalize(n, vec![(key, Scalar::from_int(c))]).expect("bases are nonzero");
                (s, f)
            })
            .collect()
    };
    ModuleSpec::new(
        "tensor".into(),
        algebra.to_string(),
        ModuleKind::Finite,
        n,
        vec!["v+".into(), "v-".into()],
        3,
        ActionTable::Rule(Arc::new(rule)),
    )
}

/// One-family rule module: a single basis vector with action `f`.
fn single_rule(
    name: &str,
    algebra: &str,
    kind: ModuleKind,
    n: usize,
    k0_count: usize,
    f: ExpPoly,
) -> ModuleSpec {
    let rule = move |_k: usize, _j: usize| -> Vec<(usize, ExpPoly)> {
        if f.is_zero() {
            Vec::new()
        } else {
            vec![(0, f.clone())]
        }
    };
    ModuleSpec::new(
        name.into(),
        algebra.to_string(),
        kind,
        n,
        vec!["v".into()],
        k0_count,
        ActionTable::Rule(Arc::new(rule)),
    )
}

fn parse_q(params: &Params, n: usize) -> Result<Vec<BigRational>> {
    let q_text = params.get("q").map(String::as_str).unwrap_or("2");
    let q: Vec<BigRational> = q_text
        .split(',')
        .map(parse_rational)
        .collect::<Result<_>>()?;
    if q.len() != n {
        return Err(Error::Param(format!(
            "need {n} q components, got {}",
            q.len()
        )));
    }
    if q.iter().any(|x| x.is_zero()) {
        return Err(Error::Param("q components must be nonzero".into()));
    }
    Ok(q)
}

/// Look up a built-in module by name, paired against `algebra`.
///
/// Names: `loop` (toroidal-sl2; param `q`), `tensor` (toroidal-sl2, finite
/// kind; param `q`), `vlike` (virasoro-like; param `f`, one variable),
/// `qtorus` (quantum-torus; param `f`, 2n variables), `highest`
/// (quantum-torus, finite kind; param `f`, n variables), `vir`
/// (generalized-virasoro; params `lambda`, `mu`). A suffix `-q<rat>` on
/// `loop`/`tensor` sets `q`, so `loop-q2` is `loop` with `q = 2`.
pub fn registry_module(name: &str, params: &Params, algebra: &AlgebraSpec) -> Result<ModuleSpec> {
    let n = algebra.lattice_rank();
    // peel a trailing -q<rat> off loop/tensor names
    let (base, merged): (&str, Params) = match name
        .strip_prefix("loop-q")
        .map(|q| ("loop", q))
        .or_else(|| name.strip_prefix("tensor-q").map(|q| ("tensor", q)))
    {
        Some((base, q)) => {
            let mut ps = params.clone();
            ps.entry("q".into()).or_insert_with(|| q.to_string());
            (base, ps)
        }
        None => (name, params.clone()),
    };
    let params = &merged;
    match base {
        "loop" => {
            require_algebra(algebra, "toroidal-sl2", base)?;
            Ok(loop_module(parse_q(params, n)?, n, algebra.name()))
        }
        "tensor" => {
            require_algebra(algebra, "toroidal-sl2", base)?;
            Ok(tensor_module(parse_q(params, n)?, n, algebra.name()))
        }
        "vlike" => {
            require_algebra(algebra, "virasoro-like", base)?;
            let text = params.get("f").map(String::as_str).unwrap_or("2^n1");
            // f(k) in the generator index, constant in the target weight
            let f = parse_exppoly(text, 1)?.promote(2, &[0])?;
            Ok(single_rule(
                "vlike",
                algebra.name(),
                ModuleKind::Graded,
                1,
                1,
                f,
            ))
        }
        "qtorus" => {
            require_algebra(algebra, "quantum-torus", base)?;
            let text = params.get("f").map(String::as_str).unwrap_or("2^n1");
            let f = parse_exppoly(text, 2 * n)?;
            Ok(single_rule(
                "qtorus",
                algebra.name(),
                ModuleKind::Graded,
                n,
                1,
                f,
            ))
        }
        "highest" => {
            require_algebra(algebra, "quantum-torus", base)?;
            let text = params.get("f").map(String::as_str).unwrap_or("n1");
            let f = parse_exppoly(text, n)?;
            Ok(single_rule(
                "highest",
                algebra.name(),
                ModuleKind::Finite,
                n,
                1,
                f,
            ))
        }
        "vir" => {
            require_algebra(algebra, "generalized-virasoro", base)?;
            let lambda = parse_scalar(params.get("lambda").map(String::as_str).unwrap_or("1/2"))?;
            let mu = parse_scalar(params.get("mu").map(String::as_str).unwrap_or("1/3"))?;
            // d_{alpha p} v_{beta p} = (beta p + lambda + alpha p mu) v
            let p = Scalar::p();
            let f = ExpPoly::constant(2, lambda)
                .add(&ExpPoly::var(2, 0).scale(&(&p * &mu)))
                .and_then(|f| f.add(&ExpPoly::var(2, 1).scale(&p)))?;
            Ok(single_rule(
                "vir",
                algebra.name(),
                ModuleKind::Graded,
                1,
                1,
                f,
            ))
        }
        other => Err(Error::Unknown(format!("no registry module `{other}`"))),
    }
}
