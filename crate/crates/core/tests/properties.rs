//! Property tests for the exact arithmetic and symbolic layers.

use explie_core::exactnum::{
    mat_det, mat_nullspace, mat_rank, parse_scalar, ExactMatrix, Poly, Scalar,
};
use explie_core::exppoly::{
    grid_matrix, independence_grid, normalize, recombine, ExpPoly, TermKey,
};
use explie_core::vandermonde::{build_matrix, det_closed_form, reduce_system, VSpec};
use num::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rational_strategy() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=5).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(rational_strategy(), 0..=max_deg + 1).prop_map(Poly::from_coeffs)
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (poly_strategy(3), poly_strategy(2)).prop_map(|(n, d)| {
        let d = if d.is_zero() { Poly::one() } else { d };
        Scalar::from_polys(n, d).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_division_roundtrips(a in poly_strategy(4), b in poly_strategy(4)) {
        prop_assume!(!b.is_zero());
        let a = Scalar::from_polys(a, Poly::one()).unwrap();
        let b = Scalar::from_polys(b, Poly::one()).unwrap();
        let q = &a / &b;
        prop_assert_eq!(&q * &b, a);
    }

    #[test]
    fn scalar_field_axioms(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        // associativity and distributivity, exactly
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn scalar_text_roundtrips(a in scalar_strategy()) {
        let text = a.to_string();
        prop_assert_eq!(parse_scalar(&text).unwrap(), a);
    }
}

/// Random exp-polynomial with small integer data.
fn exppoly_strategy(arity: usize) -> impl Strategy<Value = ExpPoly> {
    let term = (
        proptest::collection::vec(0u32..=2, arity),
        proptest::collection::vec((-3i64..=3).prop_filter("nonzero base", |b| *b != 0), arity),
        -5i64..=5,
    );
    proptest::collection::vec(term, 0..=5).prop_map(move |terms| {
        let raw: Vec<(TermKey, Scalar)> = terms
            .into_iter()
            .map(|(powers, bases, c)| {
                (
                    TermKey {
                        powers,
                        bases: bases
                            .into_iter()
                            .map(|b| BigRational::from_integer(b.into()))
                            .collect(),
                    },
                    Scalar::from_int(c),
                )
            })
            .collect();
        normalize(arity, raw).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        f in exppoly_strategy(2),
        g in exppoly_strategy(2),
        seed in 0u64..1000,
    ) {
        let sum = f.add(&g).unwrap();
        let prod = f.mul(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let x = [rng.gen_range(-5..=5i64), rng.gen_range(-5..=5i64)];
            let fv = f.evaluate(&x).unwrap();
            let gv = g.evaluate(&x).unwrap();
            prop_assert_eq!(sum.evaluate(&x).unwrap(), &fv + &gv);
            prop_assert_eq!(prod.evaluate(&x).unwrap(), &fv * &gv);
        }
    }

    #[test]
    fn evaluation_homomorphism_in_three_variables(
        f in exppoly_strategy(3),
        g in exppoly_strategy(3),
        seed in 0u64..1000,
    ) {
        let sum = f.add(&g).unwrap();
        let prod = f.mul(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let x = [
                rng.gen_range(-5..=5i64),
                rng.gen_range(-5..=5i64),
                rng.gen_range(-5..=5i64),
            ];
            let fv = f.evaluate(&x).unwrap();
            let gv = g.evaluate(&x).unwrap();
            prop_assert_eq!(sum.evaluate(&x).unwrap(), &fv + &gv);
            prop_assert_eq!(prod.evaluate(&x).unwrap(), &fv * &gv);
        }
    }

    #[test]
    fn substitution_matches_pointwise_and_composes(
        f in exppoly_strategy(2),
        a11 in -2i64..=2, a12 in -2i64..=2, a21 in -2i64..=2, a22 in -2i64..=2,
        b1 in -3i64..=3, b2 in -3i64..=3,
        c11 in -2i64..=2, c12 in -2i64..=2, c21 in -2i64..=2, c22 in -2i64..=2,
        d1 in -2i64..=2, d2 in -2i64..=2,
        seed in 0u64..1000,
    ) {
        let a = vec![vec![a11, a12], vec![a21, a22]];
        let b = vec![b1, b2];
        let sub = f.substitute_affine(&a, &b).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10 {
            let y = [rng.gen_range(-4..=4i64), rng.gen_range(-4..=4i64)];
            let x = [
                a[0][0] * y[0] + a[0][1] * y[1] + b[0],
                a[1][0] * y[0] + a[1][1] * y[1] + b[1],
            ];
            prop_assert_eq!(sub.evaluate(&y).unwrap(), f.evaluate(&x).unwrap());
        }
        // composition law: sub(A1,b1) then sub(A2,b2) is sub(A1*A2, A1*b2 + b1)
        let c = vec![vec![c11, c12], vec![c21, c22]];
        let d = vec![d1, d2];
        let two_step = sub.substitute_affine(&c, &d).unwrap();
        let ac = vec![
            vec![
                a[0][0] * c[0][0] + a[0][1] * c[1][0],
                a[0][0] * c[0][1] + a[0][1] * c[1][1],
            ],
            vec![
                a[1][0] * c[0][0] + a[1][1] * c[1][0],
                a[1][0] * c[0][1] + a[1][1] * c[1][1],
            ],
        ];
        let ad = vec![
            a[0][0] * d[0] + a[0][1] * d[1] + b[0],
            a[1][0] * d[0] + a[1][1] * d[1] + b[1],
        ];
        let one_step = f.substitute_affine(&ac, &ad).unwrap();
        prop_assert_eq!(two_step, one_step);
    }

    #[test]
    fn expand_recombine_is_identity(h in exppoly_strategy(3)) {
        for subset in [vec![0usize], vec![2], vec![1, 2], vec![0, 1, 2]] {
            let pairs = h.expand_in_subset(&subset);
            prop_assert_eq!(recombine(&pairs, &subset, 3).unwrap(), h.clone());
        }
    }

    #[test]
    fn structural_equality_iff_grid_agreement(
        f in exppoly_strategy(2),
        g in exppoly_strategy(2),
    ) {
        let mut sigs: Vec<TermKey> = Vec::new();
        for (key, _) in f.terms().chain(g.terms()) {
            if !sigs.contains(key) {
                sigs.push(key.clone());
            }
        }
        if sigs.is_empty() {
            prop_assert_eq!(&f, &g);
            return Ok(());
        }
        let grid = independence_grid(&sigs).unwrap();
        let agree = grid
            .iter()
            .all(|pt| f.evaluate(pt).unwrap() == g.evaluate(pt).unwrap());
        prop_assert_eq!(f == g, agree);
    }
}

#[test]
fn extended_vandermonde_closed_form_on_random_specs() {
    // 50 seeded random specs: closed form equals elimination and the
    // matrix has full rank
    let mut rng = ChaCha8Rng::seed_from_u64(20240917);
    for trial in 0..50 {
        let m = rng.gen_range(1..=4usize);
        let mut bases: Vec<BigRational> = Vec::new();
        while bases.len() < m {
            let den = rng.gen_range(1..=3i64);
            let num = rng.gen_range(-5 * den..=5 * den);
            if num == 0 {
                continue;
            }
            let b = BigRational::new(num.into(), den.into());
            if !bases.contains(&b) {
                bases.push(b);
            }
        }
        let blocks: Vec<(BigRational, usize)> = bases
            .into_iter()
            .map(|b| (b, rng.gen_range(1..=3usize)))
            .collect();
        let spec = VSpec::new(blocks).unwrap();
        let matrix = build_matrix(&spec);
        assert_eq!(
            det_closed_form(&spec),
            mat_det(&matrix).unwrap(),
            "trial {trial}"
        );
        assert_eq!(mat_rank(&matrix), spec.size(), "trial {trial}");
    }
}

#[test]
fn system_reduction_preserves_null_spaces() {
    // random systems: the finite system and the grid-evaluated infinite
    // system have the same null space, exactly
    let mut rng = ChaCha8Rng::seed_from_u64(424242);
    for _ in 0..20 {
        let m = rng.gen_range(1..=3usize);
        let mut bases: Vec<BigRational> = Vec::new();
        while bases.len() < m {
            let num = rng.gen_range(-4i64..=4);
            if num == 0 {
                continue;
            }
            let b = BigRational::from_integer(num.into());
            if !bases.contains(&b) {
                bases.push(b);
            }
        }
        let blocks: Vec<(BigRational, usize)> = bases
            .into_iter()
            .map(|b| (b, rng.gen_range(1..=2usize)))
            .collect();
        let spec = VSpec::new(blocks).unwrap();
        let s = spec.size();
        let unknowns = rng.gen_range(1..=6usize);
        let d: Vec<Vec<Scalar>> = (0..unknowns)
            .map(|_| {
                (0..s)
                    .map(|_| Scalar::from_int(rng.gen_range(-3..=3)))
                    .collect()
            })
            .collect();
        let red = reduce_system(&d, &spec).unwrap();
        assert!(red.report.all_pass());
        assert_eq!(
            mat_nullspace(&red.finite).len(),
            mat_nullspace(&red.evaluated).len()
        );
    }
}

#[test]
fn grid_matrix_full_column_rank_on_completed_families() {
    // completed one-variable family: square and nonsingular
    let sigs: Vec<TermKey> = vec![
        TermKey {
            powers: vec![0],
            bases: vec![BigRational::from_integer(1.into())],
        },
        TermKey {
            powers: vec![1],
            bases: vec![BigRational::from_integer(1.into())],
        },
        TermKey {
            powers: vec![0],
            bases: vec![BigRational::from_integer(2.into())],
        },
    ];
    let grid = independence_grid(&sigs).unwrap();
    let m = grid_matrix(&sigs, &grid);
    assert_eq!(m.rows(), m.cols());
    assert!(!mat_det(&m).unwrap().is_zero());
}

#[test]
fn nullspace_vectors_annihilate_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..10 {
        let rows = rng.gen_range(1..=4usize);
        let cols = rng.gen_range(1..=5usize);
        let mut m = ExactMatrix::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, Scalar::from_int(rng.gen_range(-3..=3)));
            }
        }
        let ns = mat_nullspace(&m);
        assert_eq!(ns.len(), cols - mat_rank(&m));
        for v in &ns {
            for entry in m.apply(v).unwrap() {
                assert!(entry.is_zero());
            }
        }
    }
}
