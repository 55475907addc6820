//! Exact scalar field and exact linear algebra.
//!
//! Every computation in this crate bottoms out here: [`Scalar`] is the field
//! of rational functions in one formal transcendental `p` over the rationals,
//! and [`ExactMatrix`] provides fraction-free determinants, ranks and null
//! spaces over it. Nothing is ever rounded.
//!
//! The transcendental matters: the lattice embeddings in the Virasoro layer
//! need a direct sum `Z + Z*p` inside the scalars, which no rational value of
//! `p` provides. Zero-testing stays decidable because a scalar is zero iff
//! its reduced numerator is the zero polynomial.

mod matrix;
mod parse;
mod poly;
mod scalar;

pub use matrix::{mat_det, mat_nullspace, mat_rank, ExactMatrix};
pub use parse::parse_scalar;
pub use poly::Poly;
pub use scalar::Scalar;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_changes_sign_under_row_swap() {
        let p = Scalar::p();
        let mut m = ExactMatrix::zero(3, 3);
        let vals = [
            [Scalar::from_int(1), p.clone(), Scalar::from_int(2)],
            [Scalar::from_int(0), Scalar::from_int(1), p.clone()],
            [p.clone(), Scalar::from_int(3), Scalar::from_int(1)],
        ];
        for (r, row) in vals.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        let d = mat_det(&m).unwrap();
        let mut swapped = m.clone();
        swapped.swap_rows(0, 2);
        assert_eq!(mat_det(&swapped).unwrap(), -&d);
    }

    #[test]
    fn rank_invariant_under_transpose() {
        let mut m = ExactMatrix::zero(2, 3);
        m.set(0, 0, Scalar::from_int(1));
        m.set(0, 1, Scalar::from_int(2));
        m.set(1, 0, Scalar::from_int(2));
        m.set(1, 1, Scalar::from_int(4));
        m.set(1, 2, Scalar::p());
        assert_eq!(mat_rank(&m), mat_rank(&m.transpose()));
        assert_eq!(mat_rank(&m), 2);
    }
}
