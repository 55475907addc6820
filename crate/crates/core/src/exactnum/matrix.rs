//! Dense exact matrices over [`Scalar`] with fraction-free elimination.

use super::poly::Poly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "matrix index out of bounds");
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "matrix index out of bounds");
        self.entries[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExactMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    let term = self.get(r, k) * other.get(k, c);
                    if !term.is_zero() {
                        acc = &acc + &term;
                    }
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension("vector length != cols".into()));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (c, x) in v.iter().enumerate() {
                    acc = &acc + &(self.get(r, c) * x);
                }
                acc
            })
            .collect())
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension("column counts differ".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(ExactMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn mat_det(m: &ExactMatrix) -> Result<Scalar> {
    if m.rows != m.cols {
        return Err(Error::Dimension(format!(
            "determinant of non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Scalar::one());
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = Scalar::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                Some(r) => {
                    a.swap_rows(k, r);
                    sign = !sign;
                }
                None => return Ok(Scalar::zero()),
            }
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&pivot * a.get(i, j)) - &(a.get(i, k) * a.get(k, j));
                // Bareiss: this division is exact in any integral domain
                a.set(i, j, &num / &prev);
            }
            a.set(i, k, Scalar::zero());
        }
        prev = pivot;
    }
    let d = a.get(n - 1, n - 1).clone();
    Ok(if sign { -&d } else { d })
}

/// Scale a polynomial row to integer primitive form: multiply through by
/// the lcm of coefficient denominators and divide out the gcd of the
/// integer coefficients. Rank-preserving.
fn normalize_primitive(row: &mut [Poly]) {
    use num::{BigInt, BigRational, Integer, One, Signed, Zero};
    let mut den_lcm = BigInt::one();
    for p in row.iter() {
        for c in p.coeffs() {
            den_lcm = den_lcm.lcm(c.denom());
        }
    }
    let mut content = BigInt::zero();
    for p in row.iter() {
        for c in p.coeffs() {
            content = content.gcd(&(c.numer() * &den_lcm / c.denom()));
        }
    }
    if content.is_zero() {
        return;
    }
    let factor = BigRational::new(den_lcm, content.abs());
    for p in row.iter_mut() {
        *p = p.scale(&factor);
    }
}

/// Row echelon data shared by rank and null-space computations.
/// Returns the reduced rows and the pivot column of each.
fn row_reduce(m: &ExactMatrix) -> (ExactMatrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = a.get(row, col).inv().expect("pivot is nonzero");
        for c in col..a.cols {
            let v = a.get(row, c) * &inv;
            a.set(row, c, v);
        }
        for r in 0..a.rows {
            if r != row && !a.get(r, col).is_zero() {
                let factor = a.get(r, col).clone();
                for c in col..a.cols {
                    let v = a.get(r, c) - &(&factor * a.get(row, c));
                    a.set(r, c, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

/// Exact rank over the fraction field.
///
/// Denominators are cleared per row, then the polynomial matrix is reduced
/// by fraction-free (Bareiss) elimination with row and column pivoting: the
/// single division per update step is an exact polynomial division, so no
/// gcd is ever taken during elimination.
pub fn mat_rank(m: &ExactMatrix) -> usize {
    let rows = m.rows;
    let cols = m.cols;
    if rows == 0 || cols == 0 {
        return 0;
    }
    // clear denominators row by row (rank-preserving row scalings) and
    // rescale to primitive integer coefficients
    let mut a: Vec<Vec<Poly>> = Vec::with_capacity(rows);
    for r in 0..rows {
        let mut lcm = Poly::one();
        for c in 0..cols {
            let den = m.get(r, c).denominator();
            let g = lcm.gcd(den);
            let (q, _) = den.div_rem(&g);
            lcm = &lcm * &q;
        }
        let mut row = Vec::with_capacity(cols);
        for c in 0..cols {
            let e = m.get(r, c);
            let (extra, rem) = lcm.div_rem(e.denominator());
            debug_assert!(rem.is_zero());
            row.push(e.numerator() * &extra);
        }
        normalize_primitive(&mut row);
        a.push(row);
    }
    let mut prev = Poly::one();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        // pivot on the lowest-degree nonzero entry to limit degree growth
        let p = (row..rows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].degree().unwrap_or(0));
        let Some(p) = p else {
            continue;
        };
        a.swap(row, p);
        for i in row + 1..rows {
            for j in col + 1..cols {
                let num = &(&a[row][col] * &a[i][j]) - &(&a[i][col] * &a[row][j]);
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][col] = Poly::zero();
        }
        prev = a[row][col].clone();
        rank += 1;
        row += 1;
    }
    rank
}

/// Basis of the right null space; `m.apply(v)` is exactly zero for every
/// returned `v`, and the count is `cols - rank`.
pub fn mat_nullspace(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    let (rref, pivots) = row_reduce(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Scalar::zero(); m.cols];
            v[fc] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rref.get(r, fc);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn mat(rows: Vec<Vec<i64>>) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(s).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn det_identity_is_one() {
        assert_eq!(mat_det(&ExactMatrix::identity(2)).unwrap(), s(1));
    }

    #[test]
    fn det_proportional_rows_is_zero() {
        // [[1, p], [p, p*p]]
        let p = Scalar::p();
        let m =
            ExactMatrix::from_rows(vec![vec![s(1), p.clone()], vec![p.clone(), &p * &p]]).unwrap();
        assert!(mat_det(&m).unwrap().is_zero());
    }

    #[test]
    fn det_exp_sample_rows() {
        // rows n = 0,1,2 of {2^n, n 2^n, n^2 2^n}; cofactor expansion gives 16
        let m = mat(vec![vec![1, 0, 0], vec![2, 2, 2], vec![4, 8, 16]]);
        assert_eq!(mat_det(&m).unwrap(), s(16));
    }

    #[test]
    fn det_rejects_non_square() {
        assert!(matches!(
            mat_det(&ExactMatrix::zero(2, 3)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(mat_rank(&ExactMatrix::zero(3, 4)), 0);
        assert_eq!(mat_rank(&ExactMatrix::identity(2)), 2);
        // det [[1,1],[1,3]] = 2, so full rank
        assert_eq!(mat_rank(&mat(vec![vec![1, 1], vec![1, 3]])), 2);
    }

    #[test]
    fn nullspace_examples() {
        assert!(mat_nullspace(&ExactMatrix::identity(2)).is_empty());
        let ns = mat_nullspace(&mat(vec![vec![1, 1]]));
        assert_eq!(ns.len(), 1);
        // (1, -1) up to scaling
        let v = &ns[0];
        assert_eq!(&v[0] + &v[1], Scalar::zero());
        assert!(!v[0].is_zero());
    }

    #[test]
    fn nullspace_moment_system() {
        // nodes {0, p, 2p} plus target column for 3p, moments k = 0..2;
        // the one-dimensional null space is (-1, 3, -3, 1) up to scale
        let p = Scalar::p();
        let nodes: Vec<Scalar> = [0i64, 1, 2, 3].iter().map(|&k| &s(k) * &p).collect();
        let mut m = ExactMatrix::zero(3, 4);
        for k in 0..3 {
            for (c, x) in nodes.iter().enumerate() {
                m.set(k, c, x.powi(k as i64).unwrap());
            }
        }
        let ns = mat_nullspace(&m);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        // normalize so the last entry is 1
        let scale = v[3].inv().unwrap();
        let norm: Vec<Scalar> = v.iter().map(|x| x * &scale).collect();
        assert_eq!(norm, vec![s(-1), s(3), s(-3), s(1)]);
        for e in m.apply(v).unwrap() {
            assert!(e.is_zero());
        }
    }
}
