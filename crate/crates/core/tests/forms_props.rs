mod common;

use common::*;
use proptest::prelude::*;
use siegel_core::cones::{Cone, Membership};
use siegel_core::exact_linalg::{int, rat, GaussMatrix, GaussRational, RatMatrix, Rational};
use siegel_core::forms::{zero_associated_space, HermitianFormSystem};
use siegel_core::grading::{g0_solve, SiegelDomainSpec};
use siegel_core::homogeneity::orbit_dim_at;
use siegel_core::workbench::{spec_from_json, spec_to_json};

fn gauss(lo: i64, hi: i64) -> impl Strategy<Value = GaussRational> {
    (lo..=hi, lo..=hi).prop_map(|(a, b)| g(a, b))
}

fn hermitian(m: usize) -> impl Strategy<Value = GaussMatrix> {
    prop::collection::vec(gauss(-3, 3), m * m).prop_map(move |v| {
        let a = GaussMatrix::from_fn(m, m, |i, j| v[i * m + j].clone());
        a.try_add(&a.adjoint()).unwrap()
    })
}

fn system(k: usize, m: usize) -> impl Strategy<Value = HermitianFormSystem> {
    prop::collection::vec(hermitian(m), k).prop_map(move |hs| HermitianFormSystem::new(k, m, hs).unwrap())
}

fn vector(m: usize) -> impl Strategy<Value = Vec<GaussRational>> {
    prop::collection::vec(gauss(-4, 4), m)
}

fn cone() -> impl Strategy<Value = Cone> {
    prop_oneof![
        (1usize..=4).prop_map(|k| Cone::Orthant { k }),
        (2usize..=5).prop_map(|k| Cone::Lorentz { k }),
        (1usize..=2, 2usize..=3).prop_map(|(a, b)| Cone::product(vec![Cone::Orthant { k: a }, Cone::Lorentz { k: b }]).unwrap()),
    ]
}

fn add(a: &[GaussRational], b: &[GaussRational]) -> Vec<GaussRational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale(l: &GaussRational, a: &[GaussRational]) -> Vec<GaussRational> {
    a.iter().map(|x| l * x).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hermitian_symmetry((h, w, w2) in (1usize..=3).prop_flat_map(|m| (system(2, m), vector(m), vector(m)))) {
        let a = h.evaluate(&w, &w2).unwrap();
        let b = h.evaluate(&w2, &w).unwrap();
        prop_assert!(a.iter().zip(&b).all(|(x, y)| *x == y.conj()));
        prop_assert!(h.evaluate(&w, &w).unwrap().iter().all(GaussRational::is_real));
    }

    #[test]
    fn sesquilinearity((h, w, w2, w3, l) in (1usize..=3).prop_flat_map(|m| (system(2, m), vector(m), vector(m), vector(m), gauss(-3, 3)))) {
        let lhs = h.evaluate(&w, &add(&scale(&l, &w2), &w3)).unwrap();
        let (p, q) = (h.evaluate(&w, &w2).unwrap(), h.evaluate(&w, &w3).unwrap());
        prop_assert!(lhs.iter().zip(p.iter().zip(&q)).all(|(x, (a, b))| *x == &(&l * a) + b));
        let anti = h.evaluate(&scale(&l, &w), &w2).unwrap();
        prop_assert!(anti.iter().zip(&p).all(|(x, a)| *x == &l.conj() * a));
    }

    #[test]
    fn zero_associated_planted(
        r in 1usize..=4,
        data in prop::collection::vec((-3i64..=3, -3i64..=3), 10),
        eigs in prop::collection::vec(-2i64..=2, 4),
    ) {
        let eigs = &eigs[..r];
        let h = planted_hermitian(&cayley_unitary(r, &data), eigs);
        let sys = HermitianFormSystem::new(2, r, vec![GaussMatrix::identity(r), h]).unwrap();
        prop_assert_eq!(zero_associated_space(&sys).dim(), r * r - 2 * planted_pair_count(eigs));
    }

    #[test]
    fn diagonal_pair_gives_s(diag in prop::collection::vec(-2i64..=2, 1..=4)) {
        let m = diag.len();
        let d = GaussMatrix::diagonal(diag.iter().map(|&x| GaussRational::from_int(x)).collect());
        let sys = HermitianFormSystem::new(2, m, vec![GaussMatrix::identity(m), d]).unwrap();
        prop_assert_eq!(zero_associated_space(&sys).dim(), m * m - 2 * planted_pair_count(&diag));
    }

    #[test]
    fn zero_associated_elements_are_skew((h, m) in (1usize..=3).prop_flat_map(|m| (Just(m), system(2, m))).prop_map(|(m, s)| {
        let mut comps = vec![GaussMatrix::identity(m)];
        comps.extend(s.components().iter().cloned());
        (HermitianFormSystem::new(3, m, comps).unwrap(), m)
    })) {
        let space = zero_associated_space(&h);
        prop_assert!(space.dim() <= m * m);
        for b in space.basis() {
            for c in h.components() {
                let defect = b.adjoint().try_mul(c).unwrap().try_add(&c.try_mul(b).unwrap()).unwrap();
                prop_assert!(defect.is_zero());
            }
        }
    }

    #[test]
    fn interior_implies_closure(c in cone(), xs in prop::collection::vec(-6i64..=6, 8)) {
        let x: Vec<Rational> = xs.iter().take(c.ambient_dim()).map(|&v| int(v)).collect();
        if c.contains(&x, Membership::Interior).unwrap() {
            prop_assert!(c.contains(&x, Membership::Closure).unwrap());
            let y: Vec<Rational> = x.iter().map(|v| v * rat(3, 7)).collect();
            prop_assert!(c.contains(&y, Membership::Interior).unwrap());
        }
    }

    #[test]
    fn algebra_closed_under_commutator(c in cone()) {
        let alg = c.algebra();
        for a in alg.basis() {
            for b in alg.basis() {
                let ab = a.try_mul(b).unwrap().try_sub(&b.try_mul(a).unwrap()).unwrap();
                prop_assert!(alg.contains(&ab));
            }
        }
    }

    #[test]
    fn algebra_flow_keeps_interior(c in cone(), coeffs in prop::collection::vec(-3i64..=3, 16)) {
        let alg = c.algebra();
        let a = alg.combine(&coeffs.iter().take(alg.dim()).map(|&v| int(v)).collect::<Vec<_>>());
        let x = c.canonical_interior_point();
        let step = RatMatrix::identity(c.ambient_dim()).try_add(&a.scale(&rat(1, 1000))).unwrap();
        prop_assert!(c.contains(&step.mul_vec(&x).unwrap(), Membership::Interior).unwrap());
    }

    #[test]
    fn orbit_dim_is_scale_invariant(v in prop::collection::vec(0i64..=3, 3), t in 1i64..=9) {
        prop_assume!(v.iter().any(|&x| x > 0));
        let d = SiegelDomainSpec::new(Cone::Orthant { k: 3 }, HermitianFormSystem::scalar(&ints(&v), 1), "o").unwrap();
        let x = ints(&[1, 2, 3]);
        let tx: Vec<Rational> = x.iter().map(|c| c * rat(t, 2)).collect();
        prop_assert_eq!(orbit_dim_at(&d, &x).unwrap(), orbit_dim_at(&d, &tx).unwrap());
    }

    #[test]
    fn g0_pairs_are_associated((h, w, w2) in (1usize..=2).prop_flat_map(|m| (system(2, m), vector(m), vector(m)))) {
        let mut comps = vec![GaussMatrix::identity(h.m())];
        comps.push(h.components()[0].clone());
        let form = HermitianFormSystem::new(2, h.m(), comps).unwrap();
        let d = SiegelDomainSpec::new(Cone::Orthant { k: 2 }, form.clone(), "p").unwrap();
        for (a, b) in &g0_solve(&d).pair_basis {
            let hv = form.evaluate(&w, &w2).unwrap();
            let lhs: Vec<GaussRational> = (0..2)
                .map(|l| (0..2).fold(GaussRational::default(), |acc, j| &acc + &hv[j].scale(a.get(l, j))))
                .collect();
            let r1 = form.evaluate(&b.mul_vec(&w).unwrap(), &w2).unwrap();
            let r2 = form.evaluate(&w, &b.mul_vec(&w2).unwrap()).unwrap();
            prop_assert!(lhs.iter().zip(r1.iter().zip(&r2)).all(|(x, (p, q))| *x == p + q));
        }
    }

    #[test]
    fn spec_json_round_trip((c, m, seed) in (cone(), 0usize..=2, any::<u64>())) {
        let k = c.ambient_dim();
        let comps: Vec<GaussMatrix> = (0..k)
            .map(|j| GaussMatrix::from_fn(m, m, |a, b| {
                let x = ((seed >> ((j * 7 + a * 3 + b) % 60)) & 7) as i64 - 3;
                if a == b { GaussRational::from_int(x) } else { g(x, x / 2) }
            }))
            .map(|h| h.try_add(&h.adjoint()).unwrap())
            .collect();
        let d = SiegelDomainSpec::new(c, HermitianFormSystem::new(k, m, comps).unwrap(), "rt").unwrap();
        prop_assert_eq!(spec_from_json(&spec_to_json(&d)).unwrap(), d);
    }
}
