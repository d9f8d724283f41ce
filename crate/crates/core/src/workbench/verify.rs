use std::collections::BTreeSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::audit::case_exclusions;
use super::catalog::{catalog_query, d6_s1_form, CatalogEntry, Check, Relation};
use crate::cones::{Cone, Membership};
use crate::exact_linalg::{int, rat, GaussRational, RatMatrix, Rational};
use crate::forms::{validate, Validation};
use crate::grading::{g0_solve, g1_solve, g_half_solve, grading, GradingReport, OneParameter, SiegelDomainSpec};
use crate::homogeneity::transitivity_verdict;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub name: String,
    pub citation: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub passed: usize,
    pub failed: usize,
    pub claims: Vec<ClaimResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn claim(&self, name: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.name == name)
    }
}

fn claim(name: impl Into<String>, citation: impl Into<String>, expected: impl ToString, actual: impl ToString, pass: bool) -> ClaimResult {
    ClaimResult { name: name.into(), citation: citation.into(), expected: expected.to_string(), actual: actual.to_string(), pass }
}

/// Catalog queries with known values, including every two-factor ball
/// product with `n ≤ 7`.
pub fn known_value_queries() -> Vec<String> {
    let mut q: BTreeSet<String> = [
        "ball?n=1", "ball?n=2", "ball?n=3",
        "ball_product?lengths=1,1,1", "ball_product?lengths=1,1,2", "ball_product?lengths=1,1,1,1",
        "ball_product?lengths=1,1,3", "ball_product?lengths=1,2,2", "ball_product?lengths=1,1,4",
        "T?k=3", "T?k=4", "T?k=5", "orthant_tube?k=4", "B1xT3",
        "D1?n=4", "D1?n=5", "D2?n=4", "D3", "D4?v=1,0,0", "D4?v=1,0,1", "PS",
        "D5?variant=113", "D5?variant=122",
        "D6?variant=s4", "D6?variant=v&v=2,1,0", "D6?variant=form54",
        "D6tilde?N=1", "D6tilde?N=2", "D6tilde?N=3", "D7", "D8", "D8hat?N=1",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for n in 2..=7 {
        for l in 1..n {
            q.insert(format!("ball_product?lengths={l},{}", n - l));
        }
    }
    q.into_iter().collect()
}

fn relation_holds(rel: Relation, actual: usize, v: usize) -> bool {
    match rel {
        Relation::Eq => actual == v,
        Relation::Le => actual <= v,
    }
}

fn rel_str(rel: Relation, v: usize) -> String {
    match rel {
        Relation::Eq => format!("{v}"),
        Relation::Le => format!("<= {v}"),
    }
}

fn entry_claims(entry: &CatalogEntry, samples: usize, seed: u64) -> Vec<ClaimResult> {
    let q = entry.query();
    let mut out = Vec::new();
    if !entry.prevalidated {
        let v = validate(&entry.spec.form, &entry.spec.cone, samples, seed);
        let ok = matches!(v, Ok(Validation::Valid));
        out.push(claim(format!("{q}: valid"), "H is Omega-Hermitian", "valid", format!("{v:?}"), ok));
    }
    let needs_verdict = entry.expected.iter().any(|e| matches!(e.check, Check::NotTransitive | Check::TransitiveOnSamples));
    let (r, verdict) = rayon::join(
        || grading(&entry.spec),
        || needs_verdict.then(|| transitivity_verdict(&entry.spec, samples, seed)),
    );
    for e in &entry.expected {
        let (what, exp, act, pass) = match &e.check {
            Check::Total(rel, v) => ("total", rel_str(*rel, *v), r.total.to_string(), relation_holds(*rel, r.total, *v)),
            Check::Dims(d) => ("dims", format!("{d:?}"), format!("{:?}", r.dims()), r.dims() == *d),
            Check::G0(v) => ("g0", v.to_string(), r.g0.to_string(), r.g0 == *v),
            Check::S(v) => ("s", v.to_string(), r.s.to_string(), r.s == *v),
            Check::DimGOmegaH(v) => ("dim g(Omega,H)", v.to_string(), r.dim_g_omega_h.to_string(), r.dim_g_omega_h == *v),
            Check::GHalf(rel, v) => ("g_half", rel_str(*rel, *v), r.g_half.to_string(), relation_holds(*rel, r.g_half, *v)),
            Check::G1(v) => ("g1", v.to_string(), r.g1.to_string(), r.g1 == *v),
            Check::NotTransitive | Check::TransitiveOnSamples => {
                let v = verdict.as_ref().expect("computed when expected");
                let want_not = e.check == Check::NotTransitive;
                let exp = if want_not { "not_transitive" } else { "transitive_on_samples" };
                let act = if v.is_not_transitive() {
                    "not_transitive"
                } else if v.is_transitive_on_samples() {
                    "transitive_on_samples"
                } else {
                    "inconclusive"
                };
                ("transitivity", exp.to_string(), act.to_string(), exp == act)
            }
        };
        out.push(claim(format!("{q}: {what}"), e.source.clone(), exp, act, pass));
    }
    out.push(bounds_claim(&q, &r));
    out
}

fn bounds_claim(q: &str, r: &GradingReport) -> ClaimResult {
    let failed: Vec<&str> = r.bounds.iter().filter(|b| !b.holds).map(|b| b.name.as_str()).collect();
    claim(
        format!("{q}: bounds"),
        "g_1/2 <= 2(n-k), g_1 <= k, and the three upper bounds on d",
        "all hold",
        if failed.is_empty() { "all hold".to_string() } else { failed.join("; ") },
        failed.is_empty(),
    )
}

fn cone_claims() -> Vec<ClaimResult> {
    let mut out: Vec<ClaimResult> = [2, 3, 4, 4, 5, 7]
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let d = Cone::omega(i + 1).expect("catalog").algebra_dim();
            claim(format!("cone: dim g(Omega_{})", i + 1), format!("dim g(Omega_{}) = {v}", i + 1), v, d, d == v)
        })
        .collect();
    let d = Cone::Lorentz { k: 5 }.algebra_dim();
    out.push(claim("cone: dim g(C_5)", "dim g(C_5) = 11", 11, d, d == 11));
    out
}

fn case_claims() -> Vec<ClaimResult> {
    [(4, 5, "for d = n^2 - 4 there are five cases"), (5, 7, "for d = n^2 - 5 there are seven cases"), (6, 7, "for d = n^2 - 6 again the same seven cases")]
        .iter()
        .map(|&(off, fams, src)| {
            let t = case_exclusions(off, 4..=8).expect("valid range");
            let mut want: Vec<(usize, usize)> = vec![(3, 4), (4, 4), (3, 5), (5, 5)];
            if off > 4 {
                want.extend([(4, 5), (3, 6)]);
            }
            want.sort_unstable_by_key(|&(k, n)| (n, k));
            let got: Vec<(usize, usize)> = t.admitted.iter().filter(|a| a.k != 2).map(|a| (a.k, a.n)).collect();
            let k2 = (4..=8).all(|n| t.is_admitted(2, n));
            let pass = got == want && k2 && t.families.len() == fams;
            claim(format!("cases: offset {off}"), src, format!("k=2 and {want:?}"), format!("{:?}", t.families), pass)
        })
        .collect()
}

/// Draws from the `s = 1` family of `D₆` forms, keeping those that validate and
/// have `s = 1`.
pub fn s1_draws(count: usize, samples: usize, seed: u64) -> Vec<SiegelDomainSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 100 * count {
        attempts += 1;
        let a2 = GaussRational::new(rat(rng.gen_range(-3..=3), rng.gen_range(1..=3)), rat(rng.gen_range(-3..=3), rng.gen_range(1..=3)));
        let v1 = rat(rng.gen_range(2..=12), rng.gen_range(1..=2));
        let v2 = rat(rng.gen_range(-4..=4), rng.gen_range(1..=4));
        let form = d6_s1_form(&a2, &v1, &v2);
        let cone = Cone::Lorentz { k: 3 };
        if validate(&form, &cone, samples, seed) != Ok(Validation::Valid) {
            continue;
        }
        let d = SiegelDomainSpec::new(cone, form, format!("D6 (s=1, a2={a2}, v1={v1}, v2={v2})")).expect("shapes");
        if g0_solve(&d).s == 1 {
            out.push(d);
        }
    }
    out
}

fn s1_claims(samples: usize, seed: u64) -> Vec<ClaimResult> {
    let draws = s1_draws(20, samples, seed);
    let mut out = vec![claim("D6 s=1 family: draws", "twenty valid parameter draws", 20, draws.len(), draws.len() == 20)];
    out.extend(draws.par_iter().enumerate().map(|(i, d)| {
        let h = g_half_solve(d).dim;
        claim(format!("D6 s=1 family: draw {i:02}"), "dim g_1/2 <= 2 for D_6 with s = 1", "<= 2", format!("{h} ({})", d.label), h <= 2)
    }).collect::<Vec<_>>());
    out
}

/// The symmetric matrices of `a(x, x) = ((x₁−x₂)² + x₃², −(x₁−x₂)² + x₃², 2(x₁−x₂)x₃)`.
pub fn d6tilde_g1_direction() -> Vec<RatMatrix> {
    let sym = |e: &[(usize, usize, i64)]| {
        let mut m = RatMatrix::zeros(3, 3);
        for &(i, j, v) in e {
            m.set(i, j, int(v));
            m.set(j, i, int(v));
        }
        m
    };
    vec![
        sym(&[(0, 0, 1), (1, 1, 1), (2, 2, 1), (0, 1, -1)]),
        sym(&[(0, 0, -1), (1, 1, -1), (2, 2, 1), (0, 1, 1)]),
        sym(&[(0, 2, 1), (1, 2, -1)]),
    ]
}

/// Whether `p` has `b = 0` and `a` a nonzero multiple of [`d6tilde_g1_direction`].
pub fn is_d6tilde_g1_direction(p: &OneParameter) -> bool {
    if p.b.iter().any(|b| !b.is_zero()) {
        return false;
    }
    let want = d6tilde_g1_direction();
    let flat = |ms: &[RatMatrix]| -> Vec<Rational> { ms.iter().flat_map(|m| m.entries().to_vec()).collect() };
    let (got, want) = (flat(&p.a), flat(&want));
    let Some(i) = want.iter().position(|x| !x.is_zero()) else { return false };
    if got[i].is_zero() {
        return false;
    }
    let t = &got[i] / &want[i];
    got.iter().zip(&want).all(|(g, w)| *g == &t * w)
}

fn d6tilde_direction_claims() -> Vec<ClaimResult> {
    (1..=3)
        .map(|n| {
            let e = catalog_query(&format!("D6tilde?N={n}")).expect("catalog");
            let sol = g1_solve(&e.spec);
            let ok = sol.dim == 1 && is_d6tilde_g1_direction(&sol.basis[0]);
            claim(
                format!("D6tilde?N={n}: g1 direction"),
                "g_1 is spanned by a(x,x) = ((x1-x2)^2+x3^2, -(x1-x2)^2+x3^2, 2(x1-x2)x3), b = 0",
                "proportional",
                if ok { "proportional" } else { "different" },
                ok,
            )
        })
        .collect()
}

fn interior_claims() -> Vec<ClaimResult> {
    let ps = catalog_query("PS").expect("catalog");
    let v: Vec<Rational> = [1, 1, 0].iter().map(|&x| int(x)).collect();
    let boundary = ps.spec.cone.contains(&v, Membership::Closure).unwrap_or(false)
        && !ps.spec.cone.contains(&v, Membership::Interior).unwrap_or(true);
    vec![claim("PS: v on the boundary", "D is D_4 with v = (1,1,0), on the boundary of Omega_3", true, boundary, boundary)]
}

/// Runs every claim and returns the report sorted by claim name.
pub fn verify_paper(samples: usize, seed: u64) -> VerifyReport {
    let entries: Vec<CatalogEntry> = known_value_queries().iter().map(|q| catalog_query(q).expect("catalog query")).collect();
    let mut claims: Vec<ClaimResult> = entries.par_iter().flat_map_iter(|e| entry_claims(e, samples, seed)).collect();
    claims.extend(cone_claims());
    claims.extend(case_claims());
    claims.extend(s1_claims(samples, seed));
    claims.extend(d6tilde_direction_claims());
    claims.extend(interior_claims());
    claims.sort_by(|a, b| a.name.cmp(&b.name));
    let passed = claims.iter().filter(|c| c.pass).count();
    VerifyReport { passed, failed: claims.len() - passed, claims }
}
