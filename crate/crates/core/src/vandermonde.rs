//! Extended (confluent-exponential) Vandermonde matrices: the closed-form
//! determinant, nonsingularity, and the reduction of an infinite linear
//! system over exp-polynomial functions to a finite one.
//!
//! The function list attached to a [`VSpec`] with blocks `(a_j, s_j)` is
//! `a_1^n, n a_1^n, ..., n^{s_1-1} a_1^n, a_2^n, ...`; the matrix evaluates
//! it at `n = 0..s-1`.

use crate::error::{Error, Result};
use crate::exactnum::{mat_det, mat_nullspace, mat_rank, ExactMatrix, Scalar};
use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;

/// Block specification: pairwise-distinct nonzero rational bases with
/// positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VSpec {
    blocks: Vec<(BigRational, usize)>,
}

impl VSpec {
    pub fn new(blocks: Vec<(BigRational, usize)>) -> Result<VSpec> {
        if blocks.is_empty() {
            return Err(Error::Dimension("empty block list".into()));
        }
        for (base, mult) in &blocks {
            if base.is_zero() {
                return Err(Error::InvalidBase("zero Vandermonde base".into()));
            }
            if *mult == 0 {
                return Err(Error::Dimension("zero multiplicity".into()));
            }
        }
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if blocks[i].0 == blocks[j].0 {
                    return Err(Error::Duplicate(format!("repeated base {}", blocks[i].0)));
                }
            }
        }
        Ok(VSpec { blocks })
    }

    pub fn from_ints(blocks: &[(i64, usize)]) -> Result<VSpec> {
        VSpec::new(
            blocks
                .iter()
                .map(|&(b, s)| (BigRational::from_integer(b.into()), s))
                .collect(),
        )
    }

    pub fn blocks(&self) -> &[(BigRational, usize)] {
        &self.blocks
    }

    /// Total size `s = sum s_j`.
    pub fn size(&self) -> usize {
        self.blocks.iter().map(|&(_, s)| s).sum()
    }

    /// Value of the k-th attached function at integer n (k is 0-based,
    /// walking blocks in order and powers within each block).
    pub fn eval_function(&self, k: usize, n: i64) -> Scalar {
        let mut idx = k;
        for (base, mult) in &self.blocks {
            if idx < *mult {
                let mut v = Scalar::rational_pow(base, n);
                for _ in 0..idx {
                    v *= BigRational::from_integer(n.into());
                }
                return Scalar::from_rational(v);
            }
            idx -= mult;
        }
        panic!("function index {k} out of range");
    }
}

/// The s x s matrix with entry (p, k) equal to the k-th function at n = p.
pub fn build_matrix(spec: &VSpec) -> ExactMatrix {
    let s = spec.size();
    let mut m = ExactMatrix::zero(s, s);
    for p in 0..s {
        for k in 0..s {
            m.set(p, k, spec.eval_function(k, p as i64));
        }
    }
    m
}

/// Superfactorial `m! * (m-1)! * ... * 1!` with the empty product equal 1.
pub fn superfactorial(m: usize) -> BigInt {
    let mut acc = BigInt::one();
    let mut fact = BigInt::one();
    for k in 1..=m {
        fact *= k;
        acc *= &fact;
    }
    acc
}

/// Closed-form determinant of [`build_matrix`]:
/// product over blocks of `superfactorial(s_j - 1) * a_j^{s_j(s_j-1)/2}`
/// times the product over base pairs of `(a_j - a_i)^{s_i s_j}`.
pub fn det_closed_form(spec: &VSpec) -> Scalar {
    let mut acc = BigRational::one();
    for (base, mult) in spec.blocks() {
        acc *= BigRational::from_integer(superfactorial(mult - 1));
        let e = (mult * (mult - 1) / 2) as i64;
        acc *= Scalar::rational_pow(base, e);
    }
    for (i, (ai, si)) in spec.blocks().iter().enumerate() {
        for (aj, sj) in spec.blocks().iter().skip(i + 1) {
            let diff = aj - ai;
            acc *= Scalar::rational_pow(&diff, (si * sj) as i64);
        }
    }
    Scalar::from_rational(acc)
}

/// Outcome of reducing the infinite system
/// `sum_k (sum_j d_{kj} f_j(n)) c_k = 0 (all n)` to the finite system
/// `sum_k d_{kj} c_k = 0 (j = 1..s)`.
#[derive(Debug, Clone)]
pub struct ReducedSystem {
    /// Finite system matrix: row j holds the equation `sum_k d_{kj} c_k = 0`.
    pub finite: ExactMatrix,
    /// The infinite system evaluated on the grid `n = 0..s-1`.
    pub evaluated: ExactMatrix,
    /// Report of the equivalence verification.
    pub report: EquivalenceReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    /// The change of basis from finite to evaluated equations is the
    /// extended Vandermonde matrix, checked invertible.
    pub transform_invertible: bool,
    /// `evaluated == vandermonde * finite` exactly.
    pub transform_exact: bool,
    /// Null spaces of finite and evaluated systems agree as subspaces.
    pub nullspaces_equal: bool,
}

impl EquivalenceReport {
    pub fn all_pass(&self) -> bool {
        self.transform_invertible && self.transform_exact && self.nullspaces_equal
    }
}

/// Do two null-space bases span the same subspace? Exact, by rank counting.
fn same_subspace(a: &[Vec<Scalar>], b: &[Vec<Scalar>], dim: usize) -> bool {
    let stack = |rows: Vec<Vec<Scalar>>| -> ExactMatrix {
        if rows.is_empty() {
            ExactMatrix::zero(0, dim)
        } else {
            ExactMatrix::from_rows(rows).expect("basis vectors share length")
        }
    };
    let ra = mat_rank(&stack(a.to_vec()));
    let rb = mat_rank(&stack(b.to_vec()));
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    let rab = mat_rank(&stack(both));
    ra == rb && rb == rab
}

/// Reduce the system with coefficient table `d` (one row per unknown `c_k`,
/// `s` columns pairing with the block spec's function list) and verify on
/// `n = 0..s-1` that the infinite system is an invertible transform of the
/// finite one.
pub fn reduce_system(d: &[Vec<Scalar>], spec: &VSpec) -> Result<ReducedSystem> {
    let s = spec.size();
    let unknowns = d.len();
    if d.iter().any(|row| row.len() != s) {
        return Err(Error::Dimension(format!(
            "coefficient rows must have {s} columns"
        )));
    }
    // finite system: equation j is sum_k d_{kj} c_k = 0
    let mut finite = ExactMatrix::zero(s, unknowns);
    for (k, row) in d.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            finite.set(j, k, v.clone());
        }
    }
    // infinite system on the grid: equation n is sum_k (sum_j d_{kj} f_j(n)) c_k = 0
    let mut evaluated = ExactMatrix::zero(s, unknowns);
    for n in 0..s {
        for (k, row) in d.iter().enumerate() {
            let mut acc = Scalar::zero();
            for (j, v) in row.iter().enumerate() {
                acc = &acc + &(v * &spec.eval_function(j, n as i64));
            }
            evaluated.set(n, k, acc);
        }
    }
    let vmat = build_matrix(spec);
    let transform_invertible = !mat_det(&vmat)?.is_zero();
    if !transform_invertible {
        return Err(Error::Internal(
            "extended Vandermonde transform is singular".into(),
        ));
    }
    let transform_exact = vmat.mul(&finite)? == evaluated;
    let nullspaces_equal = same_subspace(
        &mat_nullspace(&finite),
        &mat_nullspace(&evaluated),
        unknowns,
    );
    Ok(ReducedSystem {
        finite,
        evaluated,
        report: EquivalenceReport {
            transform_invertible,
            transform_exact,
            nullspaces_equal,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn build_matrix_examples() {
        let m = build_matrix(&VSpec::from_ints(&[(1, 1)]).unwrap());
        assert_eq!(m.rows(), 1);
        assert_eq!(*m.get(0, 0), s(1));

        let m2 = build_matrix(&VSpec::from_ints(&[(1, 1), (2, 1)]).unwrap());
        let want = [[1, 1], [1, 2]];
        for (r, row) in want.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                assert_eq!(*m2.get(r, c), s(*v));
            }
        }

        let m3 = build_matrix(&VSpec::from_ints(&[(2, 3)]).unwrap());
        let want3 = [[1, 0, 0], [2, 2, 2], [4, 8, 16]];
        for (r, row) in want3.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                assert_eq!(*m3.get(r, c), s(*v));
            }
        }
    }

    #[test]
    fn superfactorial_convention() {
        assert_eq!(superfactorial(0), BigInt::from(1));
        assert_eq!(superfactorial(2), BigInt::from(2));
        assert_eq!(superfactorial(3), BigInt::from(12));
    }

    #[test]
    fn closed_form_examples() {
        // distinct simple bases: (2-1)^1 = 1
        let spec = VSpec::from_ints(&[(1, 1), (2, 1)]).unwrap();
        assert_eq!(det_closed_form(&spec), s(1));
        assert_eq!(mat_det(&build_matrix(&spec)).unwrap(), s(1));

        // one base of multiplicity 3: 2!! * 2^3 = 2 * 8 = 16
        let spec2 = VSpec::from_ints(&[(2, 3)]).unwrap();
        assert_eq!(det_closed_form(&spec2), s(16));
        assert_eq!(mat_det(&build_matrix(&spec2)).unwrap(), s(16));

        // (1,2) + (2,1): 1!!_super * 1 * (2-1)^2 = 1
        let spec3 = VSpec::from_ints(&[(1, 2), (2, 1)]).unwrap();
        assert_eq!(det_closed_form(&spec3), s(1));
        assert_eq!(mat_det(&build_matrix(&spec3)).unwrap(), s(1));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(VSpec::from_ints(&[(0, 1)]).is_err());
        assert!(VSpec::from_ints(&[(2, 1), (2, 1)]).is_err());
        assert!(VSpec::from_ints(&[(2, 0)]).is_err());
    }

    #[test]
    fn reduce_system_examples() {
        // f = {1^n, 2^n}, d = [[1,1],[1,-1]]: both systems force c = 0
        let spec = VSpec::from_ints(&[(1, 1), (2, 1)]).unwrap();
        let d = vec![vec![s(1), s(1)], vec![s(1), s(-1)]];
        let red = reduce_system(&d, &spec).unwrap();
        assert!(red.report.all_pass());
        assert!(mat_nullspace(&red.finite).is_empty());
        assert!(mat_nullspace(&red.evaluated).is_empty());

        // all-zero coefficients: every c satisfies both systems
        let d0 = vec![vec![s(0), s(0)], vec![s(0), s(0)]];
        let red0 = reduce_system(&d0, &spec).unwrap();
        assert!(red0.report.all_pass());
        assert_eq!(mat_nullspace(&red0.finite).len(), 2);

        // single constant function, d column (1,1): one equation c1 + c2 = 0
        let spec1 = VSpec::from_ints(&[(1, 1)]).unwrap();
        let d1 = vec![vec![s(1)], vec![s(1)]];
        let red1 = reduce_system(&d1, &spec1).unwrap();
        assert!(red1.report.all_pass());
        assert_eq!(mat_nullspace(&red1.finite).len(), 1);
    }
}
