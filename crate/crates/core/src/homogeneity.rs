//! Transitivity of `G(Ω, H)°` on `Ω`, decided by exact certificates when the
//! action is not transitive and by sampled orbit ranks otherwise.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cones::{ConeError, MatrixSubspace, Membership};
use crate::exact_linalg::{
    char_poly, rank, rank_and_nullspace, rat, rational_vec_string, RatMatrix, Rational,
};
use crate::grading::{g0_solve, SiegelDomainSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomogeneityError {
    #[error("point is not in the open cone")]
    NotInterior,
    #[error(transparent)]
    Cone(#[from] ConeError),
}

/// Dimension of the orbit through `x`: the rank of `[A₁x | … | A_r x]` over a
/// basis of the Lie algebra of `G(Ω, H)`.
pub fn orbit_dim_at(d: &SiegelDomainSpec, x: &[Rational]) -> Result<usize, HomogeneityError> {
    if !d.cone.contains(x, Membership::Interior)? {
        return Err(HomogeneityError::NotInterior);
    }
    Ok(orbit_rank(&g0_solve(d).a_projection, x))
}

fn orbit_rank(alg: &MatrixSubspace<Rational>, x: &[Rational]) -> usize {
    let k = x.len();
    let cols: Vec<Vec<Rational>> = alg.basis().iter().map(|a| a.mul_vec(x).expect("shape")).collect();
    rank(&RatMatrix::from_fn(k, cols.len(), |i, j| cols[j][i].clone()))
}

/// Result of testing a point as a common eigenvector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Eigenline {
    /// `v` is interior and every algebra element maps it into `span(v)`.
    Certified,
    NotCertified,
    /// `v` is not an interior point.
    NotApplicable,
}

/// Checks whether the interior point `v` is an eigenvector of every element
/// of the Lie algebra of `G(Ω, H)`, via the 2 × 2 minors of `[v, Av]`.
pub fn eigenline_certificate(d: &SiegelDomainSpec, v: &[Rational]) -> Result<Eigenline, HomogeneityError> {
    if !d.cone.contains(v, Membership::Interior)? {
        return Ok(Eigenline::NotApplicable);
    }
    Ok(if is_common_eigenvector(&g0_solve(d).a_projection, v) {
        Eigenline::Certified
    } else {
        Eigenline::NotCertified
    })
}

fn is_common_eigenvector(alg: &MatrixSubspace<Rational>, v: &[Rational]) -> bool {
    alg.basis().iter().all(|a| {
        let av = a.mul_vec(v).expect("shape");
        (0..v.len()).all(|i| (i + 1..v.len()).all(|j| (&v[i] * &av[j] - &v[j] * &av[i]).is_zero()))
    })
}

/// Subspaces on which every algebra element acts as a rational scalar,
/// each given by a basis of column vectors.
pub fn common_eigenspaces(alg: &MatrixSubspace<Rational>, k: usize) -> Vec<Vec<Vec<Rational>>> {
    let identity: Vec<Vec<Rational>> =
        (0..k).map(|i| (0..k).map(|j| rat((i == j) as i64, 1)).collect()).collect();
    let mut spaces = vec![identity];
    for a in alg.basis() {
        let Some(roots) = char_poly(a).rational_roots() else {
            return Vec::new();
        };
        let mut next = Vec::new();
        for space in &spaces {
            for (mu, _) in &roots {
                let shifted = a.try_sub(&RatMatrix::identity(k).scale(mu)).expect("square");
                let image: Vec<Vec<Rational>> =
                    space.iter().map(|b| shifted.mul_vec(b).expect("shape")).collect();
                let m = RatMatrix::from_fn(k, image.len(), |i, j| image[j][i].clone());
                let sub: Vec<Vec<Rational>> = rank_and_nullspace(&m)
                    .basis
                    .iter()
                    .map(|c| {
                        (0..k)
                            .map(|i| c.iter().zip(space).fold(Rational::zero(), |acc, (cj, b)| acc + cj * &b[i]))
                            .collect()
                    })
                    .collect();
                if !sub.is_empty() {
                    next.push(sub);
                }
            }
        }
        spaces = next;
    }
    spaces
}

/// A machine-checkable reason the action is not transitive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// An interior common eigenvector: its orbit lies in a ray.
    Eigenline {
        #[serde(with = "rational_vec_string")]
        point: Vec<Rational>,
    },
    /// An interior point whose orbit is not open.
    RankDeficit {
        #[serde(with = "rational_vec_string")]
        point: Vec<Rational>,
        rank: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitSample {
    #[serde(with = "rational_vec_string")]
    pub point: Vec<Rational>,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TransitivityStatus {
    NotTransitive { certificate: Certificate },
    /// Full orbit rank at every sampled point. Evidence, not proof.
    TransitiveOnSamples { points: usize },
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitivityVerdict {
    pub label: String,
    #[serde(flatten)]
    pub status: TransitivityStatus,
    pub orbit_dims: Vec<OrbitSample>,
}

impl TransitivityVerdict {
    pub fn is_not_transitive(&self) -> bool {
        matches!(self.status, TransitivityStatus::NotTransitive { .. })
    }

    pub fn is_transitive_on_samples(&self) -> bool {
        matches!(self.status, TransitivityStatus::TransitiveOnSamples { .. })
    }
}

fn eigen_candidates(space: &[Vec<Rational>], canonical: &[Rational]) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for b in space {
        out.push(b.clone());
        out.push(b.iter().map(|x| -x).collect());
    }
    let k = canonical.len();
    out.push((0..k).map(|i| space.iter().fold(Rational::zero(), |acc, b| acc + &b[i])).collect());
    let basis = RatMatrix::from_fn(k, space.len(), |i, j| space[j][i].clone());
    let with_point = RatMatrix::from_fn(k, space.len() + 1, |i, j| {
        if j < space.len() { basis.get(i, j).clone() } else { canonical[i].clone() }
    });
    if rank(&with_point) == space.len() {
        out.push(canonical.to_vec());
    }
    out
}

/// Dyadic perturbations of the canonical interior point, interior ones only.
pub fn sample_interior_points(d: &SiegelDomainSpec, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let base = d.cone.canonical_interior_point();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![base.clone()];
    let mut attempts = 0;
    while out.len() < count && attempts < 64 * count.max(1) {
        attempts += 1;
        let x: Vec<Rational> = base
            .iter()
            .map(|b| b + rat(rng.gen_range(-8..=8), 1 << rng.gen_range(1..=4)))
            .collect();
        if d.cone.contains(&x, Membership::Interior).unwrap_or(false) {
            out.push(x);
        }
    }
    out.truncate(count);
    out
}

/// Tries eigenline certificates on candidates drawn from common rational
/// eigenspaces, then orbit ranks at `sample_count` interior points.
pub fn transitivity_verdict(d: &SiegelDomainSpec, sample_count: usize, seed: u64) -> TransitivityVerdict {
    let alg = g0_solve(d).a_projection;
    let k = d.k;
    let canonical = d.cone.canonical_interior_point();
    let label = d.label.clone();
    for space in common_eigenspaces(&alg, k) {
        for v in eigen_candidates(&space, &canonical) {
            if d.cone.contains(&v, Membership::Interior).unwrap_or(false) && is_common_eigenvector(&alg, &v) {
                let orbit_dims = vec![OrbitSample { rank: orbit_rank(&alg, &v), point: v.clone() }];
                return TransitivityVerdict {
                    label,
                    status: TransitivityStatus::NotTransitive { certificate: Certificate::Eigenline { point: v } },
                    orbit_dims,
                };
            }
        }
    }
    let mut orbit_dims = Vec::new();
    for x in sample_interior_points(d, sample_count, seed) {
        let r = orbit_rank(&alg, &x);
        orbit_dims.push(OrbitSample { point: x.clone(), rank: r });
        if r < k {
            return TransitivityVerdict {
                label,
                status: TransitivityStatus::NotTransitive { certificate: Certificate::RankDeficit { point: x, rank: r } },
                orbit_dims,
            };
        }
    }
    let status = if orbit_dims.is_empty() {
        TransitivityStatus::Inconclusive
    } else {
        TransitivityStatus::TransitiveOnSamples { points: orbit_dims.len() }
    };
    TransitivityVerdict { label, status, orbit_dims }
}
