//! Built-in algebras: toroidal (sl2 or abelian coefficients), Witt,
//! quantum torus, Virasoro-like, and the generalized Virasoro algebra on
//! the index group `Z + Z*p`.

use super::{AlgebraSpec, FamilyTable, StructureTable};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::exppoly::{ExpPoly, TermKey};
use num::{BigRational, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

pub type Params = BTreeMap<String, String>;

fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| Error::Param(format!("bad rational `{s}`: {e}")))
}

fn get_usize(params: &Params, key: &str, default: usize) -> Result<usize> {
    match params.get(key) {
        None => Ok(default),
        Some(v) => v
            .parse()
            .map_err(|e| Error::Param(format!("bad {key} `{v}`: {e}"))),
    }
}

/// Structure constants of sl2 on the ordered basis (e, f, h).
fn sl2_constants() -> Vec<Vec<Vec<(usize, i64)>>> {
    let mut c = vec![vec![Vec::new(); 3]; 3];
    c[0][1] = vec![(2, 1)]; // [e,f] = h
    c[1][0] = vec![(2, -1)];
    c[2][0] = vec![(0, 2)]; // [h,e] = 2e
    c[0][2] = vec![(0, -2)];
    c[2][1] = vec![(1, -2)]; // [h,f] = -2f
    c[1][2] = vec![(1, 2)];
    c
}

fn toroidal(
    n: usize,
    names: Vec<String>,
    constants: Vec<Vec<Vec<(usize, i64)>>>,
    name: &str,
) -> AlgebraSpec {
    let rule = move |_i: i64, _j: i64, k: usize, m: usize| -> Vec<(usize, ExpPoly)> {
        constants[k][m]
            .iter()
            .map(|&(s, c)| (s, ExpPoly::constant(2 * n, Scalar::from_int(c))))
            .collect()
    };
    AlgebraSpec::new(
        name.to_string(),
        n,
        6,
        FamilyTable::Uniform(names),
        StructureTable::Rule(Arc::new(rule)),
    )
}

fn witt(n: usize) -> AlgebraSpec {
    // families: d1..dn are the lattice derivations, d0 the extra one
    let mut names: Vec<String> = (1..=n).map(|k| format!("d{k}")).collect();
    names.push("d0".into());
    let rule = move |i: i64, j: i64, k: usize, m: usize| -> Vec<(usize, ExpPoly)> {
        let arity = 2 * n;
        let var_alpha = |c: usize| ExpPoly::var(arity, c);
        let var_beta = |c: usize| ExpPoly::var(arity, n + c);
        let constant = |v: i64| ExpPoly::constant(arity, Scalar::from_int(v));
        let mut out: BTreeMap<usize, ExpPoly> = BTreeMap::new();
        let mut push = |s: usize, f: ExpPoly| {
            let entry = out.entry(s).or_insert_with(|| ExpPoly::zero(arity));
            *entry = entry.add(&f).expect("arities agree");
        };
        match (k == n, m == n) {
            (false, false) => {
                // [t0^i t^a d_k, t0^j t^b d_m] = b_k d_m - a_m d_k
                push(m, var_beta(k));
                push(k, var_alpha(m).neg());
            }
            (true, false) => {
                // [t0^i t^a d0, t0^j t^b d_m] = j d_m - a_m d0
                push(m, constant(j));
                push(n, var_alpha(m).neg());
            }
            (false, true) => {
                // antisymmetric image of the previous case
                push(k, constant(-i));
                push(n, var_beta(k));
            }
            (true, true) => {
                // [t0^i t^a d0, t0^j t^b d0] = (j - i) d0
                push(n, constant(j - i));
            }
        }
        out.into_iter().filter(|(_, f)| !f.is_zero()).collect()
    };
    AlgebraSpec::new(
        format!("witt (n={n})"),
        n,
        6,
        FamilyTable::Uniform(names),
        StructureTable::Rule(Arc::new(rule)),
    )
}

fn quantum_torus(n: usize, q: Vec<BigRational>) -> AlgebraSpec {
    let rule = move |i: i64, j: i64, _k: usize, _m: usize| -> Vec<(usize, ExpPoly)> {
        let arity = 2 * n;
        // q^{j alpha} - q^{i beta}
        let mut key1 = TermKey::unit(arity);
        let mut key2 = TermKey::unit(arity);
        for (c, qc) in q.iter().enumerate() {
            key1.bases[c] = Scalar::rational_pow(qc, j);
            key2.bases[n + c] = Scalar::rational_pow(qc, i);
        }
        let f =
            crate::exppoly::normalize(arity, vec![(key1, Scalar::one()), (key2, -&Scalar::one())])
                .expect("bases are nonzero");
        if f.is_zero() {
            Vec::new()
        } else {
            vec![(0, f)]
        }
    };
    AlgebraSpec::new(
        format!("quantum-torus (n={n})"),
        n,
        6,
        FamilyTable::Uniform(vec!["t".into()]),
        StructureTable::Rule(Arc::new(rule)),
    )
}

fn virasoro_like() -> AlgebraSpec {
    // [L_x, L_y] = (y1 x2 - y2 x1) L_{x+y} with x = (i, alpha), y = (j, beta)
    let rule = move |i: i64, j: i64, _k: usize, _m: usize| -> Vec<(usize, ExpPoly)> {
        let alpha = ExpPoly::var(2, 0);
        let beta = ExpPoly::var(2, 1);
        let f = alpha
            .scale(&Scalar::from_int(j))
            .sub(&beta.scale(&Scalar::from_int(i)))
            .expect("arities agree");
        if f.is_zero() {
            Vec::new()
        } else {
            vec![(0, f)]
        }
    };
    AlgebraSpec::new(
        "virasoro-like".into(),
        1,
        6,
        FamilyTable::Uniform(vec!["L".into()]),
        StructureTable::Rule(Arc::new(rule)),
    )
}

fn generalized_virasoro() -> AlgebraSpec {
    // elements d_{i + k p}; [d_x, d_y] = (y - x) d_{x+y} gives the
    // coefficient (j - i) + (beta - alpha) p
    let rule = move |i: i64, j: i64, _k: usize, _m: usize| -> Vec<(usize, ExpPoly)> {
        let p = Scalar::p();
        let f = ExpPoly::constant(2, Scalar::from_int(j - i))
            .add(&ExpPoly::var(2, 1).scale(&p))
            .and_then(|f| f.sub(&ExpPoly::var(2, 0).scale(&p)))
            .expect("arities agree");
        if f.is_zero() {
            Vec::new()
        } else {
            vec![(0, f)]
        }
    };
    AlgebraSpec::new(
        "generalized-virasoro".into(),
        1,
        6,
        FamilyTable::Uniform(vec!["d".into()]),
        StructureTable::Rule(Arc::new(rule)),
    )
}

/// Look up a built-in algebra by name.
///
/// Recognized names: `toroidal-sl2` (param `n`, default 1),
/// `toroidal-abelian` (params `n`, `dim`), `witt` (param `n`, default 1),
/// `quantum-torus` (params `n` default 1, `q` comma-separated nonzero
/// rationals), `virasoro-like`, `generalized-virasoro`.
pub fn registry_algebra(name: &str, params: &Params) -> Result<AlgebraSpec> {
    match name {
        "toroidal-sl2" => {
            let n = get_usize(params, "n", 1)?;
            Ok(toroidal(
                n,
                vec!["e".into(), "f".into(), "h".into()],
                sl2_constants(),
                &format!("toroidal-sl2 (n={n})"),
            ))
        }
        "toroidal-abelian" => {
            let n = get_usize(params, "n", 1)?;
            let dim = get_usize(params, "dim", 1)?;
            if dim == 0 {
                return Err(Error::Param(
                    "abelian coefficient algebra needs dim >= 1".into(),
                ));
            }
            let names = (1..=dim).map(|k| format!("a{k}")).collect();
            let constants = vec![vec![Vec::new(); dim]; dim];
            Ok(toroidal(
                n,
                names,
                constants,
                &format!("toroidal-abelian (n={n}, dim={dim})"),
            ))
        }
        "witt" => {
            let n = get_usize(params, "n", 1)?;
            if n == 0 {
                return Err(Error::Param("witt needs n >= 1".into()));
            }
            Ok(witt(n))
        }
        "quantum-torus" => {
            let n = get_usize(params, "n", 1)?;
            let q_text = params.get("q").map(String::as_str).unwrap_or("2");
            let q: Vec<BigRational> = q_text
                .split(',')
                .map(parse_rational)
                .collect::<Result<_>>()?;
            if q.len() != n {
                return Err(Error::Param(format!(
                    "quantum-torus needs {n} q components, got {}",
                    q.len()
                )));
            }
            if q.iter().any(|x| x.is_zero()) {
                return Err(Error::Param(
                    "quantum-torus q components must be nonzero".into(),
                ));
            }
            Ok(quantum_torus(n, q))
        }
        "virasoro-like" => Ok(virasoro_like()),
        "generalized-virasoro" => Ok(generalized_virasoro()),
        other => Err(Error::Unknown(format!("no registry algebra `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;

    #[test]
    fn quantum_torus_bracket_example() {
        // [t0^1(1), t0^1(0)] = (q^{1*1} - q^{1*0}) t0^2(1) = (2 - 1) t0^2(1)
        let a = registry_algebra("quantum-torus", &Params::new()).unwrap();
        let x = Generator::new(1, vec![1], 0);
        let y = Generator::new(1, vec![0], 0);
        let b = a.bracket(&x, &y).unwrap();
        let terms: Vec<_> = b.iter().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(*terms[0].0, Generator::new(2, vec![1], 0));
        assert_eq!(*terms[0].1, Scalar::from_int(1));
    }

    #[test]
    fn virasoro_like_bracket_example() {
        // [L_(1,0), L_(0,1)] = det [[0,1],[1,0]] L_(1,1) = -L_(1,1)
        let a = registry_algebra("virasoro-like", &Params::new()).unwrap();
        let x = Generator::new(1, vec![0], 0);
        let y = Generator::new(0, vec![1], 0);
        let b = a.bracket(&x, &y).unwrap();
        let terms: Vec<_> = b.iter().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(*terms[0].0, Generator::new(1, vec![1], 0));
        assert_eq!(*terms[0].1, Scalar::from_int(-1));
    }

    #[test]
    fn generalized_virasoro_bracket_example() {
        // [d_{1+p}, d_{-1+p}] = ((-1+p) - (1+p)) d_{2p} = -2 d_{2p}
        let a = registry_algebra("generalized-virasoro", &Params::new()).unwrap();
        let x = Generator::new(1, vec![1], 0);
        let y = Generator::new(-1, vec![1], 0);
        let b = a.bracket(&x, &y).unwrap();
        let terms: Vec<_> = b.iter().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(*terms[0].0, Generator::new(0, vec![2], 0));
        assert_eq!(*terms[0].1, Scalar::from_int(-2));

        // coefficients stay degree <= 1 in p: check a p-dependent case
        let z = a
            .bracket(
                &Generator::new(1, vec![2], 0),
                &Generator::new(0, vec![0], 0),
            )
            .unwrap();
        let (_, c) = z.iter().next().unwrap();
        assert_eq!(
            c,
            &(&Scalar::from_int(-1) - &(&Scalar::from_int(2) * &Scalar::p()))
        );
    }

    #[test]
    fn unknown_name_and_bad_params() {
        assert!(registry_algebra("nope", &Params::new()).is_err());
        let mut p = Params::new();
        p.insert("q".into(), "0".into());
        assert!(registry_algebra("quantum-torus", &p).is_err());
    }
}
