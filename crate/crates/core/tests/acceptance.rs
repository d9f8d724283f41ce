mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use siegel_core::cones::Cone;
use siegel_core::exact_linalg::{int, GaussMatrix, RatMatrix, Rational};
use siegel_core::forms::{eigen_pair_count, zero_associated_space, HermitianFormSystem};
use siegel_core::grading::{check_one, g0_solve, g1_solve, g_half_solve, grading, SiegelDomainSpec};
use siegel_core::homogeneity::{transitivity_verdict, Certificate, TransitivityStatus};
use siegel_core::workbench::{case_exclusions, catalog_query, known_value_queries, s1_draws};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn spec(q: &str) -> SiegelDomainSpec {
    catalog_query(q).unwrap().spec
}

fn cone_algebra_dims() -> Outcome {
    let mut got: Vec<usize> = (1..=6).map(|i| Cone::omega(i).unwrap().algebra_dim()).collect();
    got.push(Cone::Lorentz { k: 5 }.algebra_dim());
    outcome(got == [2, 3, 4, 4, 5, 7, 11], format!("{got:?}"))
}

fn zero_associated_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let mut bad = Vec::new();
    for t in 0..50 {
        let r = rng.gen_range(1..=4);
        let data: Vec<(i64, i64)> = (0..16).map(|_| (rng.gen_range(-3..=3), rng.gen_range(-3..=3))).collect();
        let u = cayley_unitary(r, &data);
        let eigs: Vec<i64> = (0..r).map(|_| rng.gen_range(-2..=2)).collect();
        let h = planted_hermitian(&u, &eigs);
        let p = oracle_pair_count(&h);
        let sys = HermitianFormSystem::new(2, r, vec![GaussMatrix::identity(r), h.clone()]).unwrap();
        let dim = zero_associated_space(&sys).dim();
        let engine_p = eigen_pair_count(&h).unwrap();
        if p != planted_pair_count(&eigs) || dim != r * r - 2 * p || engine_p != p {
            bad.push(t);
        }
    }
    outcome(bad.is_empty(), format!("50 draws, failures at {bad:?}"))
}

fn g_omega_h_for_d6_forms() -> Outcome {
    let got: Vec<usize> = (1..=3).map(|n| g0_solve(&spec(&format!("D6tilde?N={n}"))).dim_g_omega_h).collect();
    outcome(got == [3, 3, 3], format!("m=1,2,3 -> {got:?}"))
}

fn g_half_vanishes() -> Outcome {
    let mut got: Vec<usize> = (1..=3).map(|n| g_half_solve(&spec(&format!("D6tilde?N={n}"))).dim).collect();
    got.push(g_half_solve(&spec("D8hat?N=1")).dim);
    outcome(got == [0, 0, 0, 0], format!("D6tilde N=1,2,3 and D8hat N=1 -> {got:?}"))
}

/// `a(x,x) = ((x₁−x₂)² + x₃², −(x₁−x₂)² + x₃², 2(x₁−x₂)x₃)`, evaluated directly.
fn expected_a(x: &[Rational]) -> Vec<Rational> {
    let u = &x[0] - &x[1];
    let sq = &x[2] * &x[2];
    vec![&u * &u + &sq, -(&u * &u) + &sq, int(2) * &u * &x[2]]
}

fn quad(a: &RatMatrix, x: &[Rational]) -> Rational {
    let ax = a.mul_vec(x).unwrap();
    x.iter().zip(&ax).map(|(p, q)| p * q).sum()
}

fn g1_direction() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=3 {
        let d = spec(&format!("D6tilde?N={n}"));
        let sol = g1_solve(&d);
        if sol.dim != 1 {
            ok = false;
            notes.push(format!("N={n}: dim {}", sol.dim));
            continue;
        }
        let p = &sol.basis[0];
        let xs: Vec<Vec<Rational>> = (0..8).map(|_| (0..3).map(|_| int(rng.gen_range(-5..=5))).collect()).collect();
        let mut ratio: Option<Rational> = None;
        let mut prop = p.b.iter().all(GaussMatrix::is_zero);
        for x in &xs {
            let e = expected_a(x);
            for (l, el) in e.iter().enumerate() {
                let got = quad(&p.a[l], x);
                match (&ratio, num_traits::Zero::is_zero(el)) {
                    (_, true) => prop &= num_traits::Zero::is_zero(&got),
                    (None, false) => ratio = Some(got / el),
                    (Some(t), false) => prop &= got == t * el,
                }
            }
        }
        prop &= ratio.as_ref().is_some_and(|t| !num_traits::Zero::is_zero(t));
        prop &= check_one(&d, p, 20, n as u64);
        ok &= prop;
        notes.push(format!("N={n}: {}", if prop { "proportional" } else { "not proportional" }));
    }
    outcome(ok, notes.join(", "))
}

fn totals() -> Outcome {
    let cases = [
        ("PS", 10),
        ("D6?variant=s4", 15),
        ("D7", 22),
        ("T?k=3", 10),
        ("T?k=4", 15),
        ("T?k=5", 21),
        ("orthant_tube?k=4", 12),
        ("B1xT3", 13),
    ];
    let mut bad = Vec::new();
    for (q, want) in cases {
        let got = grading(&spec(q)).total;
        if got != want {
            bad.push(format!("{q}: {got} != {want}"));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "8 totals".into() } else { bad.join(", ") })
}

fn d8_unit_weights() -> Outcome {
    let r = grading(&spec("D8?v=1,1,0,0"));
    let ok = r.g0 == 6 && r.s == 1 && r.dim_g_omega_h == 5 && r.total <= 16 && r.g_half == 0;
    outcome(ok, format!("g0={}, s={}, dim g(Omega,H)={}, g_half={}, total={}", r.g0, r.s, r.dim_g_omega_h, r.g_half, r.total))
}

fn ball_products() -> Outcome {
    let mut bad = Vec::new();
    for n in 2..=7i64 {
        for l in 1..n {
            let got = grading(&spec(&format!("ball_product?lengths={l},{}", n - l))).total as i64;
            if got != 2 * l * l - 2 * n * l + n * n + 2 * n {
                bad.push(format!("({l},{})", n - l));
            }
        }
    }
    let multi = [("1,1,1,1", 12), ("1,1,3", 21), ("2,4", 32), ("1,2,2", 19), ("3,3", 30), ("1,1,4", 30), ("2,5", 43)];
    for (l, want) in multi {
        let got = grading(&spec(&format!("ball_product?lengths={l}"))).total;
        if got != want {
            bad.push(format!("{l}: {got}"));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "27 two-factor + 7 listed".to_string() } else { bad.join(", ") })
}

fn certificates() -> Outcome {
    let d2 = transitivity_verdict(&spec("D2?n=4"), 64, 0);
    let d4 = transitivity_verdict(&spec("D4?v=1,0,0"), 64, 0);
    let d6 = transitivity_verdict(&spec("D6?variant=v&v=2,1,0"), 64, 0);
    let eigenline = |v: &siegel_core::homogeneity::TransitivityVerdict| {
        matches!(v.status, TransitivityStatus::NotTransitive { certificate: Certificate::Eigenline { .. } })
    };
    let ok = d2.is_not_transitive() && eigenline(&d4) && eigenline(&d6);
    let show = |v: &siegel_core::homogeneity::TransitivityVerdict| serde_json::to_string(&v.status).unwrap();
    outcome(ok, format!("D2 {}, D4 {}, D6 {}", show(&d2), show(&d4), show(&d6)))
}

fn case_tables() -> Outcome {
    let rest = |off| -> Vec<(usize, usize)> {
        let t = case_exclusions(off, 4..=8).unwrap();
        assert!((4..=8).all(|n| t.is_admitted(2, n)));
        t.admitted.iter().filter(|a| a.k != 2).map(|a| (a.k, a.n)).collect()
    };
    let five = vec![(3, 4), (4, 4), (3, 5), (5, 5)];
    let seven = vec![(3, 4), (4, 4), (3, 5), (4, 5), (5, 5), (3, 6)];
    let (a, b, c) = (rest(4), rest(5), rest(6));
    outcome(a == five && b == seven && c == seven, format!("offset 4 {a:?}; 5 {b:?}; 6 {c:?}"))
}

fn s1_family() -> Outcome {
    let draws = s1_draws(20, 64, 0);
    let dims: Vec<usize> = draws.iter().map(|d| g_half_solve(d).dim).collect();
    let s_ok = draws.iter().all(|d| g0_solve(d).s == 1);
    let f54 = g_half_solve(&spec("D6?variant=form54")).dim;
    let ok = draws.len() == 20 && s_ok && dims.iter().all(|&x| x <= 2) && f54 == 0;
    outcome(ok, format!("{} draws, g_half {dims:?}, fixed form {f54}", draws.len()))
}

fn bound_suite() -> Outcome {
    let mut qs = known_value_queries();
    qs.extend((1..=6).map(|i| format!("tube?cone=Omega{i}")));
    qs.extend(["D6?variant=s1".to_string(), "D8hat?N=2".to_string(), "D3?v=1,2,3".to_string()]);
    let bad: Vec<&String> = qs.iter().filter(|q| !grading(&spec(q)).bounds_hold()).collect();
    outcome(bad.is_empty(), format!("{} entries, violations {bad:?}", qs.len()))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: Vec<Criterion> = vec![
        ("cone algebra dimensions", cone_algebra_dims),
        ("zero-associated space vs characteristic polynomial oracle", zero_associated_oracle),
        ("dim G(Omega_3, (|w|^2,|w|^2,0)) = 3 for m = 1,2,3", g_omega_h_for_d6_forms),
        ("g_1/2 = 0 for D6tilde and D8hat", g_half_vanishes),
        ("g_1 of D6tilde is one-dimensional along a(x,x)", g1_direction),
        ("totals of named domains", totals),
        ("D8 with v = (1,1,0,0)", d8_unit_weights),
        ("products of balls", ball_products),
        ("non-transitivity certificates", certificates),
        ("case tables", case_tables),
        ("s = 1 family of D6", s1_family),
        ("bound suite on every catalog entry", bound_suite),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        println!("{} {:>2} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, o.detail);
        if !o.passed {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
