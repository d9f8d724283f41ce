mod common;

use common::*;
use proptest::prelude::*;
use siegel_core::exact_linalg::{
    char_poly, complexify, int, rank, rank_and_nullspace, realify, solve, GaussMatrix, GaussRational, RatMatrix,
    Rational,
};

fn rat_matrix(max: usize) -> impl Strategy<Value = RatMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-4i64..=4, r * c)
            .prop_map(move |v| RatMatrix::from_fn(r, c, |i, j| int(v[i * c + j])))
    })
}

fn low_rank(max: usize) -> impl Strategy<Value = RatMatrix> {
    (1..=max, 1..=max, 1..=max).prop_flat_map(|(r, c, k)| {
        (prop::collection::vec(-3i64..=3, r * k), prop::collection::vec(-3i64..=3, k * c)).prop_map(move |(a, b)| {
            let a = RatMatrix::from_fn(r, k, |i, j| int(a[i * k + j]));
            let b = RatMatrix::from_fn(k, c, |i, j| int(b[i * c + j]));
            a.try_mul(&b).unwrap()
        })
    })
}

fn gauss_square(n: usize) -> impl Strategy<Value = GaussMatrix> {
    prop::collection::vec((-3i64..=3, -3i64..=3), n * n)
        .prop_map(move |v| GaussMatrix::from_fn(n, n, |i, j| g(v[i * n + j].0, v[i * n + j].1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_equals_rank_of_transpose(m in low_rank(5)) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rank_plus_nullity(m in rat_matrix(6)) {
        let ns = rank_and_nullspace(&m);
        prop_assert_eq!(ns.rank + ns.basis.len(), m.cols());
        for x in &ns.basis {
            prop_assert!(m.mul_vec(x).unwrap().iter().all(num_traits::Zero::is_zero));
        }
    }

    #[test]
    fn null_basis_is_independent(m in low_rank(5)) {
        let ns = rank_and_nullspace(&m);
        let b = RatMatrix::from_fn(ns.basis.len(), m.cols(), |i, j| ns.basis[i][j].clone());
        prop_assert_eq!(rank(&b), ns.basis.len());
    }

    #[test]
    fn solve_consistent_systems(m in rat_matrix(5), seed in prop::collection::vec(-5i64..=5, 5)) {
        let x0: Vec<Rational> = (0..m.cols()).map(|j| int(seed[j])).collect();
        let b = m.mul_vec(&x0).unwrap();
        let x = solve(&m, &b).unwrap().expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
    }

    #[test]
    fn realify_is_multiplicative((a, b) in (1usize..=3).prop_flat_map(|n| (gauss_square(n), gauss_square(n)))) {
        let ab = a.try_mul(&b).unwrap();
        prop_assert_eq!(realify(&ab), realify(&a).try_mul(&realify(&b)).unwrap());
        prop_assert_eq!(complexify(&realify(&ab)), Some(ab));
    }

    #[test]
    fn determinant_is_multiplicative((a, b) in (1usize..=3).prop_flat_map(|n| (gauss_square(n), gauss_square(n)))) {
        let ab = a.try_mul(&b).unwrap();
        prop_assert_eq!(ab.determinant(), &a.determinant() * &b.determinant());
    }

    #[test]
    fn char_poly_matches_faddeev(m in (1usize..=4).prop_flat_map(|n| prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| RatMatrix::from_fn(n, n, |i, j| int(v[i * n + j]))))) {
        let oracle: Vec<Rational> = faddeev_char_poly(&GaussMatrix::from_real(&m)).into_iter().map(|z| z.re).collect();
        prop_assert_eq!(char_poly(&m).coeffs().to_vec(), oracle);
    }

    #[test]
    fn inverse_is_two_sided(a in (1usize..=3).prop_flat_map(gauss_square)) {
        if let Some(inv) = a.inverse() {
            prop_assert_eq!(a.try_mul(&inv).unwrap(), GaussMatrix::identity(a.rows()));
            prop_assert_eq!(inv.try_mul(&a).unwrap(), GaussMatrix::identity(a.rows()));
        } else {
            prop_assert_eq!(a.determinant(), GaussRational::default());
        }
    }
}
