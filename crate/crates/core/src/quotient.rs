//! Weight-space dimensions of the quotient of the induced module by its
//! radical, and radical membership tests.
//!
//! Two independent routes compute the same dimension:
//!
//! - the truncated route enumerates concrete lowering monomials and raising
//!   tests inside growing lattice boxes and takes exact ranks of the pairing
//!   matrix (an oracle: ranks are nondecreasing and bounded);
//! - the symbolic route expands every raising image `h_l(beta, gamma)` in
//!   the gamma variables, collects the finitely many functionals
//!   `f_p(beta)` per lowering shape, and evaluates them on independence
//!   grids, where the rank is provably the dimension.
//!
//! Functional columns are keyed by `(raising shape, target l, gamma
//! signature)` so different lowering shapes share columns: the pairing is
//! computed on the whole weight component, not per shape.

use crate::algebra::{AlgebraSpec, Generator};
use crate::error::{Error, Result};
use crate::exactnum::{mat_rank, ExactMatrix, Scalar};
use crate::exppoly::{independence_grid, ExpPoly, TermKey};
use crate::gmodule::{ModuleKind, ModuleSpec};
use crate::induce::{apply_raising_word, monomial_vector, FormalVector, SymbolicEngine};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

/// Ordered compositions of `total` into positive parts (the single empty
/// composition when `total` is zero).
pub fn compositions(total: i64) -> Vec<Vec<i64>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for rest in compositions(total - first) {
            let mut c = vec![first];
            c.extend(rest);
            out.push(c);
        }
    }
    out
}

/// All family assignments for the parts of a composition at the given sign
/// of the extragrading degree.
fn family_assignments(algebra: &AlgebraSpec, parts: &[i64], sign: i64) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &part in parts {
        let count = algebra.family_count(sign * part);
        let mut next = Vec::with_capacity(out.len() * count);
        for partial in &out {
            for k in 0..count {
                let mut v = partial.clone();
                v.push(k);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// A lowering shape with families: `(i_t, k_t)` pairs plus the base index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LowerShape {
    pub shape: Vec<(i64, usize)>,
    pub base_j: usize,
}

impl LowerShape {
    pub fn total_degree(&self) -> i64 {
        self.shape.iter().map(|&(i, _)| i).sum()
    }

    pub fn letters(&self) -> usize {
        self.shape.len()
    }
}

/// Column identity in the merged pairing: which raising word family, which
/// target base index, and which gamma-expansion signature.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FunctionalKey {
    pub raise: Vec<(i64, usize)>,
    pub target: usize,
    pub gamma_sig: TermKey,
}

/// The finite functional family of one lowering shape: exp-polynomial
/// functions of the stacked beta variables, keyed for cross-shape merging.
#[derive(Debug, Clone)]
pub struct FunctionalFamily {
    pub shape: LowerShape,
    /// Arity of each functional: n * letters.
    pub nvars: usize,
    pub entries: Vec<(FunctionalKey, ExpPoly)>,
}

impl FunctionalFamily {
    /// The distinct nonzero functionals (the family size `d` that bounds
    /// the spanned dimension).
    pub fn distinct_functionals(&self) -> Vec<&ExpPoly> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (_, f) in &self.entries {
            if seen.insert(f) {
                out.push(f);
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// All lowering shapes of total degree `i` over an algebra/module pair.
pub fn lower_shapes(algebra: &AlgebraSpec, module: &ModuleSpec, i: i64) -> Result<Vec<LowerShape>> {
    if i < 0 {
        return Err(Error::Degree(format!("negative level {i}")));
    }
    if i > algebra.depth_bound() {
        return Err(Error::Depth(format!(
            "level {i} exceeds depth bound {}",
            algebra.depth_bound()
        )));
    }
    let mut out = Vec::new();
    for parts in compositions(i) {
        for fams in family_assignments(algebra, &parts, -1) {
            let shape: Vec<(i64, usize)> = parts.iter().copied().zip(fams).collect();
            for base_j in 0..module.basis_len() {
                out.push(LowerShape {
                    shape: shape.clone(),
                    base_j,
                });
            }
        }
    }
    Ok(out)
}

/// Raising shapes (composition with families) of total degree `i`.
pub fn raise_shapes(algebra: &AlgebraSpec, i: i64) -> Vec<Vec<(i64, usize)>> {
    let mut out = Vec::new();
    for parts in compositions(i) {
        for fams in family_assignments(algebra, &parts, 1) {
            out.push(parts.iter().copied().zip(fams).collect());
        }
    }
    out
}

type FamilyCacheKey = (Vec<(i64, usize)>, usize, Option<Vec<i64>>);

/// Shared state for dimension scans over one algebra/module pair.
pub struct QuotientCtx<'a> {
    pub algebra: &'a AlgebraSpec,
    pub module: &'a ModuleSpec,
    engine: SymbolicEngine<'a>,
    families: Mutex<HashMap<FamilyCacheKey, Arc<FunctionalFamily>>>,
}

impl<'a> QuotientCtx<'a> {
    pub fn new(algebra: &'a AlgebraSpec, module: &'a ModuleSpec) -> Result<Self> {
        if module.algebra_name() != algebra.name() {
            return Err(Error::Param(format!(
                "module `{}` pairs with algebra `{}`, got `{}`",
                module.name(),
                module.algebra_name(),
                algebra.name()
            )));
        }
        Ok(QuotientCtx {
            algebra,
            module,
            engine: SymbolicEngine::new(algebra, module),
            families: Mutex::new(HashMap::new()),
        })
    }

    pub fn engine(&self) -> &SymbolicEngine<'a> {
        &self.engine
    }

    fn weight_arg(&self, alpha: Option<&[i64]>) -> Result<Option<Vec<i64>>> {
        match (self.module.kind(), alpha) {
            (ModuleKind::Graded, Some(a)) => Ok(Some(a.to_vec())),
            (ModuleKind::Finite, None) => Ok(None),
            (ModuleKind::Graded, None) => {
                Err(Error::Shape("graded module needs a target weight".into()))
            }
            (ModuleKind::Finite, Some(_)) => {
                Err(Error::Shape("finite module takes no target weight".into()))
            }
        }
    }

    /// The functional family of one lowering shape at target weight `alpha`:
    /// for every raising shape of matching degree, reduce symbolically and
    /// expand in the gamma variables.
    pub fn functional_family(
        &self,
        shape: &LowerShape,
        alpha: Option<&[i64]>,
    ) -> Result<Arc<FunctionalFamily>> {
        let alpha_vec = self.weight_arg(alpha)?;
        let key: FamilyCacheKey = (shape.shape.clone(), shape.base_j, alpha_vec.clone());
        if let Some(hit) = self.families.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let n = self.algebra.lattice_rank();
        let s = shape.letters();
        let i = shape.total_degree();
        let mut entries = Vec::new();
        for raise in raise_shapes(self.algebra, i) {
            let r = raise.len();
            let image =
                self.engine
                    .reduce(&shape.shape, &raise, shape.base_j, alpha_vec.as_deref())?;
            // gamma variables are the trailing n*r coordinates
            let gamma_vars: Vec<usize> = (n * s..n * (s + r)).collect();
            for (l, h) in &image.images {
                for (f_beta, sig) in h.expand_in_subset(&gamma_vars) {
                    if f_beta.is_zero() {
                        continue;
                    }
                    entries.push((
                        FunctionalKey {
                            raise: raise.clone(),
                            target: *l,
                            gamma_sig: sig,
                        },
                        f_beta,
                    ));
                }
            }
        }
        let family = Arc::new(FunctionalFamily {
            shape: shape.clone(),
            nvars: n * s,
            entries,
        });
        self.families.lock().unwrap().insert(key, family.clone());
        Ok(family)
    }

    /// Exact dimension of the quotient's homogeneous component at degree
    /// `-i` and weight `alpha`, by ranks of functional values on
    /// independence grids.
    pub fn dim_symbolic(&self, i: i64, alpha: Option<&[i64]>) -> Result<usize> {
        let shapes = lower_shapes(self.algebra, self.module, i)?;
        let mut columns: BTreeSet<FunctionalKey> = BTreeSet::new();
        let mut families = Vec::new();
        for shape in &shapes {
            let fam = self.functional_family(shape, alpha)?;
            for (key, _) in &fam.entries {
                columns.insert(key.clone());
            }
            families.push(fam);
        }
        let columns: Vec<FunctionalKey> = columns.into_iter().collect();
        if columns.is_empty() {
            return Ok(0);
        }
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for fam in &families {
            if fam.is_empty() {
                continue;
            }
            let mut sigs: BTreeSet<TermKey> = BTreeSet::new();
            for (_, f) in &fam.entries {
                for (key, _) in f.terms() {
                    sigs.insert(key.clone());
                }
            }
            let sigs: Vec<TermKey> = sigs.into_iter().collect();
            let grid = if fam.nvars == 0 {
                vec![Vec::new()]
            } else {
                independence_grid(&sigs)?
            };
            let by_key: BTreeMap<&FunctionalKey, &ExpPoly> =
                fam.entries.iter().map(|(k, f)| (k, f)).collect();
            for point in &grid {
                let mut row = Vec::with_capacity(columns.len());
                for col in &columns {
                    row.push(match by_key.get(col) {
                        Some(f) => f.evaluate(point)?,
                        None => Scalar::zero(),
                    });
                }
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return Ok(0);
        }
        let m = ExactMatrix::from_rows(rows)?;
        Ok(mat_rank(&m))
    }

    /// The truncated pairing matrix: concrete lowering monomials (letter
    /// weights inside the `b_low` box) against concrete raising tests
    /// (gamma inside the `b_high` box, all target indices).
    pub fn pairing_matrix_truncated(
        &self,
        i: i64,
        alpha: Option<&[i64]>,
        b_low: i64,
        b_high: i64,
    ) -> Result<PairingMatrix> {
        self.weight_arg(alpha)?;
        let n = self.algebra.lattice_rank();
        let coords_low: Vec<i64> = (-b_low..=b_low).collect();
        let coords_high: Vec<i64> = (-b_high..=b_high).collect();

        let mut rows = Vec::new();
        for shape in lower_shapes(self.algebra, self.module, i)? {
            let s = shape.letters();
            for flat in crate::algebra::lattice_box(n * s, &coords_low) {
                let betas: Vec<Vec<i64>> = flat.chunks(n).map(<[i64]>::to_vec).collect();
                rows.push(RowLabel {
                    shape: shape.clone(),
                    betas,
                });
            }
        }
        let mut cols = Vec::new();
        for raise in raise_shapes(self.algebra, i) {
            let r = raise.len();
            for flat in crate::algebra::lattice_box(n * r, &coords_high) {
                let gammas: Vec<Vec<i64>> = flat.chunks(n).map(<[i64]>::to_vec).collect();
                for target in 0..self.module.basis_len() {
                    cols.push(ColLabel {
                        raise: raise.clone(),
                        gammas: gammas.clone(),
                        target,
                    });
                }
            }
        }

        let mut matrix = ExactMatrix::zero(rows.len(), cols.len());
        for (ri, row) in rows.iter().enumerate() {
            let x = monomial_vector(
                self.algebra,
                self.module,
                &row.shape.shape,
                &row.betas,
                row.shape.base_j,
                alpha,
            )?;
            // apply each raising word once; read off all targets
            let mut ci = 0;
            while ci < cols.len() {
                let col = &cols[ci];
                let word: Vec<Generator> = col
                    .raise
                    .iter()
                    .zip(&col.gammas)
                    .map(|(&(j, m), g)| Generator::new(j, g.clone(), m))
                    .collect();
                let image = apply_raising_word(self.algebra, self.module, &word, &x)?;
                let mut by_target: BTreeMap<usize, Scalar> = BTreeMap::new();
                for ((j, _), c) in image.iter() {
                    by_target.insert(*j, c.clone());
                }
                for target in 0..self.module.basis_len() {
                    debug_assert_eq!(cols[ci + target].target, target);
                    if let Some(c) = by_target.get(&target) {
                        matrix.set(ri, ci + target, c.clone());
                    }
                }
                ci += self.module.basis_len();
            }
        }
        Ok(PairingMatrix { rows, cols, matrix })
    }

    /// Rank of the truncated pairing per box in an increasing schedule
    /// (at least three boxes); stabilization means the last two ranks agree.
    pub fn dim_truncated(
        &self,
        i: i64,
        alpha: Option<&[i64]>,
        schedule: &[i64],
    ) -> Result<DimScan> {
        if schedule.len() < 3 {
            return Err(Error::Param("box schedule needs at least 3 entries".into()));
        }
        if schedule.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Param(
                "box schedule must be strictly increasing".into(),
            ));
        }
        let mut boxes = Vec::new();
        for &b in schedule {
            let pairing = self.pairing_matrix_truncated(i, alpha, b, b)?;
            let rank = mat_rank(&pairing.matrix);
            boxes.push(BoxRank {
                box_size: b,
                rows: pairing.rows.len(),
                cols: pairing.cols.len(),
                rank,
            });
        }
        let k = boxes.len();
        let stabilized = boxes[k - 1].rank == boxes[k - 2].rank;
        let value = boxes[k - 1].rank;
        Ok(DimScan {
            boxes,
            stabilized,
            value,
        })
    }

    /// Radical membership of a homogeneous vector.
    ///
    /// Symbolic mode is exact in both directions. Truncated mode applies all
    /// raising tests with gamma inside the box; passing it is necessary for
    /// membership but not sufficient, and the result says only that every
    /// tried test annihilated the vector.
    pub fn radical_membership(&self, x: &FormalVector, mode: MembershipMode) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        let (deg, weight) = x
            .homogeneous_bidegree()
            .ok_or_else(|| Error::Degree("vector is not homogeneous".into()))?;
        let i = -deg;
        if i < 0 {
            return Err(Error::Degree("vector has positive degree".into()));
        }
        let alpha = weight;
        match mode {
            MembershipMode::Symbolic => {
                // group words by (shape, base) and align their functional
                // families on the merged column keys
                let mut sums: BTreeMap<FunctionalKey, Scalar> = BTreeMap::new();
                for (word, coeff) in x.iter() {
                    let shape = LowerShape {
                        shape: word
                            .letters
                            .iter()
                            .map(|l| (-l.degree.i, l.family))
                            .collect(),
                        base_j: word.base.0,
                    };
                    let fam = self.functional_family(&shape, alpha.as_deref())?;
                    let beta: Vec<i64> = word
                        .letters
                        .iter()
                        .flat_map(|l| l.degree.alpha.iter().copied())
                        .collect();
                    for (key, f) in &fam.entries {
                        let v = f.evaluate(&beta)?;
                        if v.is_zero() {
                            continue;
                        }
                        let entry = sums.entry(key.clone()).or_insert_with(Scalar::zero);
                        *entry = &*entry + &(&v * coeff);
                    }
                }
                Ok(sums.values().all(Scalar::is_zero))
            }
            MembershipMode::Truncated(b) => {
                let n = self.algebra.lattice_rank();
                let coords: Vec<i64> = (-b..=b).collect();
                for raise in raise_shapes(self.algebra, i) {
                    let r = raise.len();
                    for flat in crate::algebra::lattice_box(n * r, &coords) {
                        let word: Vec<Generator> = raise
                            .iter()
                            .zip(flat.chunks(n))
                            .map(|(&(j, m), g)| Generator::new(j, g.to_vec(), m))
                            .collect();
                        if !apply_raising_word(self.algebra, self.module, &word, x)?.is_zero() {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipMode {
    Symbolic,
    Truncated(i64),
}

#[derive(Debug, Clone, Serialize)]
pub struct RowLabel {
    pub shape: LowerShape,
    pub betas: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ColLabel {
    pub raise: Vec<(i64, usize)>,
    pub gammas: Vec<Vec<i64>>,
    pub target: usize,
}

#[derive(Debug, Clone)]
pub struct PairingMatrix {
    pub rows: Vec<RowLabel>,
    pub cols: Vec<ColLabel>,
    pub matrix: ExactMatrix,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoxRank {
    pub box_size: i64,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DimScan {
    pub boxes: Vec<BoxRank>,
    pub stabilized: bool,
    pub value: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::registry_algebra;
    use crate::gmodule::registry_module;
    use std::collections::BTreeMap as Map;

    fn params(pairs: &[(&str, &str)]) -> Map<String, String> {
        pairs
            .iter()
            .map(|&(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    #[test]
    fn compositions_enumerate_ordered_parts() {
        assert_eq!(compositions(0), vec![Vec::<i64>::new()]);
        assert_eq!(compositions(1), vec![vec![1]]);
        let c3 = compositions(3);
        assert_eq!(c3.len(), 4);
        assert!(c3.contains(&vec![1, 2]));
        assert!(c3.contains(&vec![2, 1]));
    }

    #[test]
    fn virasoro_depth_one_family_spans_three_moments() {
        // the functionals at i=1 span {1, beta, beta^2}
        let a = registry_algebra("generalized-virasoro", &params(&[])).unwrap();
        let m = registry_module("vir", &params(&[]), &a).unwrap();
        let ctx = QuotientCtx::new(&a, &m).unwrap();
        let shape = LowerShape {
            shape: vec![(1, 0)],
            base_j: 0,
        };
        let fam = ctx.functional_family(&shape, Some(&[0])).unwrap();
        assert_eq!(fam.entries.len(), 3);
        // their span has rank 3 on the grid {0,1,2}
        let mut rows = Vec::new();
        for b in 0..3 {
            let mut row = Vec::new();
            for (_, f) in &fam.entries {
                row.push(f.evaluate(&[b]).unwrap());
            }
            rows.push(row);
        }
        assert_eq!(mat_rank(&ExactMatrix::from_rows(rows).unwrap()), 3);
    }

    #[test]
    fn trivial_action_gives_empty_family() {
        // module with h = 0: everything below degree 0 is radical
        let a = registry_algebra("quantum-torus", &params(&[])).unwrap();
        let m = registry_module("qtorus", &params(&[("f", "n1 - n1")]), &a).unwrap();
        let ctx = QuotientCtx::new(&a, &m).unwrap();
        let shape = LowerShape {
            shape: vec![(1, 0)],
            base_j: 0,
        };
        let fam = ctx.functional_family(&shape, Some(&[0])).unwrap();
        assert!(fam.is_empty());
        assert_eq!(ctx.dim_symbolic(1, Some(&[0])).unwrap(), 0);
        let scan = ctx.dim_truncated(1, Some(&[0]), &[1, 2, 3]).unwrap();
        assert_eq!(scan.value, 0);
        assert!(scan.stabilized);
    }

    #[test]
    fn degree_zero_dimension_is_module_dimension() {
        let a = registry_algebra("toroidal-sl2", &params(&[])).unwrap();
        let m = registry_module("loop", &params(&[("q", "2")]), &a).unwrap();
        let ctx = QuotientCtx::new(&a, &m).unwrap();
        assert_eq!(ctx.dim_symbolic(0, Some(&[0])).unwrap(), 2);
        let scan = ctx.dim_truncated(0, Some(&[5]), &[1, 2, 3]).unwrap();
        assert_eq!(scan.value, 2);
        assert!(scan.stabilized);
    }

    #[test]
    fn virasoro_level_one_dimension_is_three() {
        let a = registry_algebra("generalized-virasoro", &params(&[])).unwrap();
        let m = registry_module("vir", &params(&[]), &a).unwrap();
        let ctx = QuotientCtx::new(&a, &m).unwrap();
        let sym = ctx.dim_symbolic(1, Some(&[0])).unwrap();
        assert!(sym <= 3);
        let scan = ctx.dim_truncated(1, Some(&[0]), &[1, 2, 3]).unwrap();
        assert!(scan.stabilized);
        assert_eq!(scan.value, sym);
        // ranks nondecreasing in box size
        for w in scan.boxes.windows(2) {
            assert!(w[0].rank <= w[1].rank);
        }
    }

    #[test]
    fn explicit_radical_vector_is_detected() {
        // coefficients (1, -1, 3, -3) at nodes (3, 0, 1, 2): kills 1, b, b^2
        let a = registry_algebra("generalized-virasoro", &params(&[])).unwrap();
        let m = registry_module("vir", &params(&[]), &a).unwrap();
        let ctx = QuotientCtx::new(&a, &m).unwrap();
        let mono =
            |node: i64| monomial_vector(&a, &m, &[(1, 0)], &[vec![node]], 0, Some(&[0])).unwrap();
        let x = mono(3)
            .add(&mono(0).scale(&Scalar::from_int(-1)))
            .add(&mono(1).scale(&Scalar::from_int(3)))
            .add(&mono(2).scale(&Scalar::from_int(-3)));
        assert!(ctx
            .radical_membership(&x, MembershipMode::Symbolic)
            .unwrap());
        assert!(ctx
            .radical_membership(&x, MembershipMode::Truncated(3))
            .unwrap());
        // a single monomial is not radical
        assert!(!ctx
            .radical_membership(&mono(2), MembershipMode::Symbolic)
            .unwrap());
        assert!(!ctx
            .radical_membership(&mono(2), MembershipMode::Truncated(2))
            .unwrap());
    }

    #[test]
    fn degree_zero_membership_is_zero_test() {
        let a = registry_algebra("generalized-virasoro", &params(&[])).unwrap();
        let m = registry_module("vir", &params(&[]), &a).unwrap();
        let ctx = QuotientCtx::new(&a, &m).unwrap();
        let v = monomial_vector(&a, &m, &[], &[], 0, Some(&[2])).unwrap();
        assert!(!ctx
            .radical_membership(&v, MembershipMode::Symbolic)
            .unwrap());
        assert!(ctx
            .radical_membership(&FormalVector::zero(), MembershipMode::Symbolic)
            .unwrap());
    }

    #[test]
    fn toroidal_family_is_finite_and_recombines() {
        let a = registry_algebra("toroidal-sl2", &params(&[])).unwrap();
        let m = registry_module("loop-q2", &params(&[]), &a).unwrap();
        let ctx = QuotientCtx::new(&a, &m).unwrap();
        let shape = LowerShape {
            shape: vec![(1, 0)],
            base_j: 1,
        };
        let fam = ctx.functional_family(&shape, Some(&[0])).unwrap();
        // single raising composition at degree one: 3 families, 2 targets,
        // finitely many gamma signatures each
        let raising = raise_shapes(&a, 1);
        assert_eq!(raising.len(), 3);
        let max_sigs = fam
            .entries
            .iter()
            .map(|(k, _)| k.gamma_sig.clone())
            .collect::<std::collections::BTreeSet<_>>()
            .len();
        assert!(fam.len() <= m.basis_len() * raising.len() * max_sigs);
        // regrouping the functionals by key reproduces each raising image
        let n = 1;
        for raise in &raising {
            let image = ctx
                .engine()
                .reduce(&shape.shape, raise, shape.base_j, Some(&[0]))
                .unwrap();
            for (l, h) in &image.images {
                let pairs: Vec<(ExpPoly, TermKey)> = fam
                    .entries
                    .iter()
                    .filter(|(k, _)| k.raise == *raise && k.target == *l)
                    .map(|(k, f)| (f.clone(), k.gamma_sig.clone()))
                    .collect();
                let gamma_vars: Vec<usize> = (n..2 * n).collect();
                let rebuilt =
                    crate::exppoly::recombine(&pairs, &gamma_vars, 2 * n).unwrap();
                assert_eq!(rebuilt, *h);
            }
        }
    }

    #[test]
    fn degree_zero_pairing_is_identity_like() {
        let a = registry_algebra("toroidal-sl2", &params(&[])).unwrap();
        let m = registry_module("loop-q2", &params(&[]), &a).unwrap();
        let ctx = QuotientCtx::new(&a, &m).unwrap();
        let pairing = ctx.pairing_matrix_truncated(0, Some(&[2]), 1, 1).unwrap();
        assert_eq!(pairing.rows.len(), m.basis_len());
        assert_eq!(pairing.cols.len(), m.basis_len());
        assert_eq!(mat_rank(&pairing.matrix), m.basis_len());
    }

    #[test]
    fn schedule_validation() {
        let a = registry_algebra("generalized-virasoro", &params(&[])).unwrap();
        let m = registry_module("vir", &params(&[]), &a).unwrap();
        let ctx = QuotientCtx::new(&a, &m).unwrap();
        assert!(ctx.dim_truncated(1, Some(&[0]), &[1, 2]).is_err());
        assert!(ctx.dim_truncated(1, Some(&[0]), &[2, 2, 3]).is_err());
    }

    #[test]
    fn depth_bound_guard() {
        let a = registry_algebra("generalized-virasoro", &params(&[])).unwrap();
        let m = registry_module("vir", &params(&[]), &a).unwrap();
        let ctx = QuotientCtx::new(&a, &m).unwrap();
        assert!(matches!(
            ctx.dim_symbolic(100, Some(&[0])),
            Err(Error::Depth(_))
        ));
    }

    #[test]
    fn mismatched_pair_rejected() {
        let a = registry_algebra("generalized-virasoro", &params(&[])).unwrap();
        let a2 = registry_algebra("quantum-torus", &params(&[])).unwrap();
        let m = registry_module("vir", &params(&[]), &a).unwrap();
        assert!(QuotientCtx::new(&a2, &m).is_err());
    }
}
