//! The generalized Virasoro specialization: the centerless algebra on the
//! index group `M = Z + Z*p` with `p` a formal transcendental, the modules
//! with action `d_a v_b = (b + lambda + a*mu) v_{a+b}` on the degree-zero
//! part, reduced spanning sets, and the odd-double-factorial dimension
//! bound.
//!
//! Because `p` is transcendental, `m + k*p` determines `(m, k)` uniquely;
//! an element of `M` is stored as that integer pair, and `-i + k*p` never
//! vanishes for `i != 0`, which is what makes the equal-dimension corollary
//! apply to every listed weight.

use crate::algebra::{registry_algebra, AlgebraSpec};
use crate::error::{Error, Result};
use crate::exactnum::{mat_nullspace, mat_rank, ExactMatrix, Scalar};
use crate::gmodule::{registry_module, ModuleSpec};
use crate::induce::{monomial_vector, FormalVector};
use crate::quotient::{LowerShape, QuotientCtx};
use num::BigInt;
use serde::Serialize;
use std::collections::BTreeMap;

/// An element `m + k*p` of the index group `M = Z + Z*p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MElem {
    pub m: i64,
    pub k: i64,
}

impl MElem {
    pub fn new(m: i64, k: i64) -> Self {
        MElem { m, k }
    }

    /// An element of `M_0 = Z*p`.
    pub fn in_m0(k: i64) -> Self {
        MElem { m: 0, k }
    }

    pub fn is_in_m0(&self) -> bool {
        self.m == 0
    }

    pub fn to_scalar(&self) -> Scalar {
        &Scalar::from_int(self.m) + &(&Scalar::from_int(self.k) * &Scalar::p())
    }
}

impl std::fmt::Display for MElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.m, self.k) {
            (m, 0) => write!(f, "{m}"),
            (0, 1) => write!(f, "p"),
            (0, -1) => write!(f, "-p"),
            (0, k) => write!(f, "{k}p"),
            (m, 1) => write!(f, "{m}+p"),
            (m, -1) => write!(f, "{m}-p"),
            (m, k) if k < 0 => write!(f, "{m}{k}p"),
            (m, k) => write!(f, "{m}+{k}p"),
        }
    }
}

/// Odd double factorial `1 * 3 * ... * (2i+1)`.
pub fn odd_double_factorial(i: u32) -> BigInt {
    let mut acc = BigInt::from(1);
    for t in 1..=i {
        acc *= 2 * t as i64 + 1;
    }
    acc
}

/// The generalized Virasoro algebra and the module with parameters
/// `(lambda, mu)` given as scalar text.
pub fn vir_pair(lambda: &str, mu: &str) -> Result<(AlgebraSpec, ModuleSpec)> {
    let algebra = registry_algebra("generalized-virasoro", &BTreeMap::new())?;
    let mut params = BTreeMap::new();
    params.insert("lambda".to_string(), lambda.to_string());
    params.insert("mu".to_string(), mu.to_string());
    let module = registry_module("vir", &params, &algebra)?;
    Ok((algebra, module))
}

/// The reduced spanning set at level `n`: words
/// `d_{-1+a_n} ... d_{-1+a_1} v_{a - sum}` with `a_t` restricted to
/// `P_t = {k*p : 0 <= k <= 2t}`. Its size is the odd double factorial.
#[derive(Debug, Clone)]
pub struct ReducedSpanSet {
    pub level: u32,
    /// Per word, the multipliers `(k_1..k_n)` of `p`; entry `t-1` is the
    /// letter applied `t`-th (the rightmost letter of the written word).
    pub words: Vec<Vec<i64>>,
}

impl ReducedSpanSet {
    pub fn new(level: u32) -> Self {
        let mut words = vec![Vec::new()];
        for t in 1..=level as i64 {
            let mut next = Vec::with_capacity(words.len() * (2 * t as usize + 1));
            for w in &words {
                for k in 0..=2 * t {
                    let mut v = w.clone();
                    v.push(k);
                    next.push(v);
                }
            }
            words = next;
        }
        ReducedSpanSet { level, words }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Build one word as an induced-module vector at target weight `a`.
    pub fn monomial(
        &self,
        algebra: &AlgebraSpec,
        module: &ModuleSpec,
        word: &[i64],
        a: MElem,
    ) -> Result<FormalVector> {
        if !a.is_in_m0() {
            return Err(Error::Param("weight must lie in M_0".into()));
        }
        let shape: Vec<(i64, usize)> = word.iter().map(|_| (1, 0)).collect();
        // letters are written leftmost-first; the t-th multiplier is applied
        // t-th, i.e. sits at the right end
        let betas: Vec<Vec<i64>> = word.iter().rev().map(|&k| vec![k]).collect();
        monomial_vector(algebra, module, &shape, &betas, 0, Some(&[a.k]))
    }
}

/// Exact dimension of the weight space at level `i` and weight
/// `-i + lambda + a`: rank of the reduced spanning set against the
/// functional columns generated by words in degree-one raising letters.
pub fn vir_weight_dim(ctx: &QuotientCtx<'_>, i: u32, a: MElem) -> Result<usize> {
    if !a.is_in_m0() {
        return Err(Error::Param("weight must lie in M_0".into()));
    }
    if i == 0 {
        return ctx.dim_symbolic(0, Some(&[a.k]));
    }
    let span = ReducedSpanSet::new(i);
    let shape = LowerShape {
        shape: vec![(1, 0); i as usize],
        base_j: 0,
    };
    let fam = ctx.functional_family(&shape, Some(&[a.k]))?;
    // keep only columns coming from all-ones raising shapes: the raising
    // side is generated in degree one
    let ones: Vec<(i64, usize)> = vec![(1, 0); i as usize];
    let cols: Vec<&crate::exppoly::ExpPoly> = fam
        .entries
        .iter()
        .filter(|(key, _)| key.raise == ones)
        .map(|(_, f)| f)
        .collect();
    if cols.is_empty() {
        return Ok(0);
    }
    let mut rows = Vec::with_capacity(span.len());
    for word in &span.words {
        // beta coordinates in letter order, leftmost first
        let beta: Vec<i64> = word.iter().rev().copied().collect();
        let mut row = Vec::with_capacity(cols.len());
        for f in &cols {
            row.push(f.evaluate(&beta)?);
        }
        rows.push(row);
    }
    Ok(mat_rank(&ExactMatrix::from_rows(rows)?))
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub level: u32,
    pub dim: usize,
    pub bound: String,
    pub pass: bool,
}

/// Table of weight-space dimensions against the odd-double-factorial bound
/// `(2i+1)!! = 1, 3, 15, 105, ...` for levels `0..=i_max`.
pub fn vir_bound_report(ctx: &QuotientCtx<'_>, i_max: u32, a: MElem) -> Result<Vec<BoundRow>> {
    let mut rows = Vec::new();
    for i in 0..=i_max {
        let dim = vir_weight_dim(ctx, i, a)?;
        let bound = odd_double_factorial(i);
        rows.push(BoundRow {
            level: i,
            dim,
            pass: BigInt::from(dim) <= bound,
            bound: bound.to_string(),
        });
    }
    Ok(rows)
}

/// Solve the moment system `beta'^k + sum_{a in P_{n+1}} a^k b_a = 0` for
/// `0 <= k <= 2n+2`: the coefficients rewriting a `d_{-1+beta'}` word into
/// the reduced span. The nodes `P_{n+1} = {0, p, ..., (2n+2)p}` are
/// pairwise distinct, so the solution exists and is unique.
pub fn vir_moment_nullvector(beta_prime: MElem, n: u32) -> Result<Vec<Scalar>> {
    if !beta_prime.is_in_m0() {
        return Err(Error::Param("beta' must lie in M_0".into()));
    }
    let size = 2 * n as usize + 3;
    // moment matrix over the nodes plus the beta' column; its null space is
    // one-dimensional with a nonzero beta' coordinate
    let mut m = ExactMatrix::zero(size, size + 1);
    for k in 0..size {
        for c in 0..size {
            let v = if k == 0 {
                Scalar::one()
            } else {
                MElem::in_m0(c as i64).to_scalar().powi(k as i64)?
            };
            m.set(k, c, v);
        }
        let v = if k == 0 {
            Scalar::one()
        } else {
            beta_prime.to_scalar().powi(k as i64)?
        };
        m.set(k, size, v);
    }
    let ns = mat_nullspace(&m);
    if ns.len() != 1 {
        return Err(Error::Internal(format!(
            "moment system has null space of dimension {}",
            ns.len()
        )));
    }
    let v = &ns[0];
    let last = v[size].clone();
    if last.is_zero() {
        return Err(Error::Internal(
            "moment solution misses the target node".into(),
        ));
    }
    let inv = last.inv()?;
    Ok(v[..size].iter().map(|c| c * &inv).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct EqualDimsTable {
    pub level: u32,
    pub entries: Vec<(String, usize)>,
    pub all_equal: bool,
}

/// Dimensions at level `i >= 1` across several weights in `M_0`; under the
/// transcendental embedding `-i + a` never vanishes for these levels, so
/// the dimensions must all agree.
pub fn equal_dims_table(
    ctx: &QuotientCtx<'_>,
    i: u32,
    weights: &[MElem],
) -> Result<EqualDimsTable> {
    if i == 0 {
        return Err(Error::Param(
            "the equal-dimension table needs i >= 1".into(),
        ));
    }
    let mut entries = Vec::new();
    for a in weights {
        let dim = vir_weight_dim(ctx, i, *a)?;
        entries.push((a.to_string(), dim));
    }
    let all_equal = entries.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(EqualDimsTable {
        level: i,
        entries,
        all_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::MembershipMode;

    #[test]
    fn odd_double_factorial_values() {
        let want = [1i64, 3, 15, 105];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(odd_double_factorial(i as u32), BigInt::from(*w));
        }
    }

    #[test]
    fn reduced_span_sizes() {
        assert_eq!(ReducedSpanSet::new(0).len(), 1);
        assert_eq!(ReducedSpanSet::new(1).len(), 3);
        assert_eq!(ReducedSpanSet::new(2).len(), 15);
        assert_eq!(ReducedSpanSet::new(3).len(), 105);
    }

    #[test]
    fn moment_nullvector_examples() {
        // beta' = 3p, n = 0, nodes {0, p, 2p}: b = (-1, 3, -3)
        let b = vir_moment_nullvector(MElem::in_m0(3), 0).unwrap();
        assert_eq!(
            b,
            vec![
                Scalar::from_int(-1),
                Scalar::from_int(3),
                Scalar::from_int(-3)
            ]
        );
        // beta' already a node: minus the matching unit vector
        let b0 = vir_moment_nullvector(MElem::in_m0(0), 0).unwrap();
        assert_eq!(
            b0,
            vec![Scalar::from_int(-1), Scalar::zero(), Scalar::zero()]
        );
        let b1 = vir_moment_nullvector(MElem::in_m0(1), 0).unwrap();
        assert_eq!(
            b1,
            vec![Scalar::zero(), Scalar::from_int(-1), Scalar::zero()]
        );
    }

    #[test]
    fn moment_equations_hold() {
        for (bp, n) in [(4i64, 0u32), (-2, 1), (7, 1)] {
            let b = vir_moment_nullvector(MElem::in_m0(bp), n).unwrap();
            let size = 2 * n as usize + 3;
            for k in 0..size {
                let mut acc = if k == 0 {
                    Scalar::one()
                } else {
                    MElem::in_m0(bp).to_scalar().powi(k as i64).unwrap()
                };
                for (c, coeff) in b.iter().enumerate() {
                    let node = if k == 0 {
                        Scalar::one()
                    } else {
                        MElem::in_m0(c as i64).to_scalar().powi(k as i64).unwrap()
                    };
                    acc = &acc + &(coeff * &node);
                }
                assert!(acc.is_zero(), "moment k={k} fails for beta'={bp}, n={n}");
            }
        }
    }

    #[test]
    fn weight_dim_level_zero_is_one() {
        let (a, m) = vir_pair("1/2", "1/3").unwrap();
        let ctx = QuotientCtx::new(&a, &m).unwrap();
        for k in [-1i64, 0, 2] {
            assert_eq!(vir_weight_dim(&ctx, 0, MElem::in_m0(k)).unwrap(), 1);
        }
    }

    #[test]
    fn weight_dim_level_one_within_bound_and_matches_quotient() {
        let (a, m) = vir_pair("1/2", "1/3").unwrap();
        let ctx = QuotientCtx::new(&a, &m).unwrap();
        let d = vir_weight_dim(&ctx, 1, MElem::in_m0(0)).unwrap();
        assert!(d <= 3);
        assert_eq!(d, ctx.dim_symbolic(1, Some(&[0])).unwrap());
    }

    #[test]
    fn degenerate_zero_action_gives_zero_dim() {
        // an identically zero action kills every functional
        let (a, _) = vir_pair("0", "0").unwrap();
        let text = "
            kind = graded
            n = 1
            basis = v
            action [d] [v] -> v : n1 - n1
        ";
        let m = crate::gmodule::parse_module_file(text, "vir", &a).unwrap();
        let ctx = QuotientCtx::new(&a, &m).unwrap();
        assert_eq!(vir_weight_dim(&ctx, 1, MElem::in_m0(0)).unwrap(), 0);
    }

    #[test]
    fn claim2_rewriting_is_radical() {
        // the full combination (coefficient 1 on beta', moment solution b on
        // the nodes) is annihilated by every raising test
        let (alg, m) = vir_pair("1/2", "1/3").unwrap();
        let ctx = QuotientCtx::new(&alg, &m).unwrap();
        let a = MElem::in_m0(1);
        for bp in [5i64, -3] {
            let b = vir_moment_nullvector(MElem::in_m0(bp), 0).unwrap();
            let mono = |node: i64| {
                monomial_vector(&alg, &m, &[(1, 0)], &[vec![node]], 0, Some(&[a.k])).unwrap()
            };
            let mut x = mono(bp);
            for (j, coeff) in b.iter().enumerate() {
                x = x.add(&mono(j as i64).scale(coeff));
            }
            assert!(ctx
                .radical_membership(&x, MembershipMode::Symbolic)
                .unwrap());
        }
    }

    #[test]
    fn equal_dims_table_singleton_is_trivially_equal() {
        let (a, m) = vir_pair("1/2", "1/3").unwrap();
        let ctx = QuotientCtx::new(&a, &m).unwrap();
        let table = equal_dims_table(&ctx, 1, &[MElem::in_m0(2)]).unwrap();
        assert!(table.all_equal);
        assert_eq!(table.entries.len(), 1);
        assert!(equal_dims_table(&ctx, 0, &[MElem::in_m0(0)]).is_err());
    }

    #[test]
    fn melem_display() {
        assert_eq!(MElem::in_m0(0).to_string(), "0");
        assert_eq!(MElem::in_m0(1).to_string(), "p");
        assert_eq!(MElem::in_m0(-2).to_string(), "-2p");
        assert_eq!(MElem::new(3, 1).to_string(), "3+p");
        assert_eq!(MElem::new(3, -2).to_string(), "3-2p");
    }
}
