//! Vector-valued Hermitian forms `H = (H₁, …, H_k)` on `C^m`.
//!
//! `H(w, w')ⱼ = w* Hⱼ w'`, linear in `w'` and antilinear in `w`.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cones::{Cone, ConeError, MatrixSubspace, Membership};
use crate::exact_linalg::{
    char_poly_coeffs, int, rank_and_nullspace, rat, ComplexLinearForm, Field,
    GaussMatrix, GaussRational, Poly, Rational, RowReducer,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("component {0} is not Hermitian")]
    NotHermitian(usize),
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error(transparent)]
    Cone(#[from] ConeError),
}

/// The `k` Hermitian `m × m` components of a `C^k`-valued form.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianFormSystem {
    k: usize,
    m: usize,
    components: Vec<GaussMatrix>,
}

impl HermitianFormSystem {
    /// Checks shapes and exact Hermitian symmetry of every component.
    pub fn new(k: usize, m: usize, components: Vec<GaussMatrix>) -> Result<Self, FormError> {
        if components.len() != k {
            return Err(FormError::DimensionMismatch { expected: k, found: components.len() });
        }
        for (j, h) in components.iter().enumerate() {
            if h.rows() != m || h.cols() != m {
                return Err(FormError::DimensionMismatch { expected: m, found: h.rows() });
            }
            if !h.is_hermitian() {
                return Err(FormError::NotHermitian(j));
            }
        }
        Ok(HermitianFormSystem { k, m, components })
    }

    /// The form `v·‖w‖²` on `C^m`.
    pub fn scalar(v: &[Rational], m: usize) -> Self {
        let components = v.iter().map(|c| GaussMatrix::identity(m).scale(&c.clone().into())).collect();
        HermitianFormSystem { k: v.len(), m, components }
    }

    /// All-zero form, the tube-domain case when `m = 0`.
    pub fn zero(k: usize, m: usize) -> Self {
        HermitianFormSystem { k, m, components: vec![GaussMatrix::zeros(m, m); k] }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn components(&self) -> &[GaussMatrix] {
        &self.components
    }

    pub fn component(&self, j: usize) -> &GaussMatrix {
        &self.components[j]
    }

    fn check_len(&self, v: &[GaussRational]) -> Result<(), FormError> {
        if v.len() != self.m {
            return Err(FormError::DimensionMismatch { expected: self.m, found: v.len() });
        }
        Ok(())
    }

    /// `H(w, w')`.
    pub fn evaluate(
        &self,
        w: &[GaussRational],
        w2: &[GaussRational],
    ) -> Result<Vec<GaussRational>, FormError> {
        self.check_len(w)?;
        self.check_len(w2)?;
        Ok(self
            .components
            .iter()
            .map(|h| {
                let hw = h.mul_vec(w2).expect("checked");
                w.iter().zip(&hw).fold(GaussRational::default(), |acc, (a, b)| &acc + &(&a.conj() * b))
            })
            .collect())
    }

    /// `H(w, w)`, which is real.
    pub fn evaluate_real(&self, w: &[GaussRational]) -> Result<Vec<Rational>, FormError> {
        Ok(self.evaluate(w, w)?.into_iter().map(|z| z.re).collect())
    }

    /// `Σ λⱼ Hⱼ`.
    pub fn combination(&self, lambda: &[Rational]) -> GaussMatrix {
        let mut out = GaussMatrix::zeros(self.m, self.m);
        for (l, h) in lambda.iter().zip(&self.components) {
            if !Zero::is_zero(l) {
                out = out.try_add(&h.map(|z| z.scale(l))).expect("same shape");
            }
        }
        out
    }
}

impl Serialize for HermitianFormSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Vec<GaussRational>>> = self.components.iter().map(|h| h.to_rows()).collect();
        rows.serialize(s)
    }
}

/// Wire form of the components only; `k` and `m` come from the enclosing spec.
#[derive(Debug, Clone, Deserialize)]
#[serde(transparent)]
pub struct RawComponents(pub Vec<Vec<Vec<GaussRational>>>);

impl RawComponents {
    pub fn into_system(self, k: usize, m: usize) -> Result<HermitianFormSystem, FormError> {
        let mut comps = Vec::with_capacity(self.0.len());
        for rows in self.0 {
            if rows.len() != m {
                return Err(FormError::DimensionMismatch { expected: m, found: rows.len() });
            }
            if m == 0 {
                comps.push(GaussMatrix::zeros(0, 0));
                continue;
            }
            let mat = GaussMatrix::from_rows(rows)
                .map_err(|_| FormError::DimensionMismatch { expected: m, found: 0 })?;
            comps.push(mat);
        }
        HermitianFormSystem::new(k, m, comps)
    }
}

/// Exact positive-definiteness by leading principal minors.
pub fn is_positive_definite(h: &GaussMatrix) -> bool {
    h.is_hermitian() && (1..=h.rows()).all(|r| h.leading_block(r).determinant().re.is_positive())
}

/// A positive-definite combination `Σ λⱼ Hⱼ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositiveCombination {
    #[serde(with = "crate::exact_linalg::rational_vec_string")]
    pub lambda: Vec<Rational>,
    pub witness: GaussMatrix,
}

const GRID: [(i64, i64); 6] = [(1, 1), (2, 1), (1, 2), (3, 1), (-1, 2), (-1, 1)];
const GRID_LIMIT: usize = 4096;

/// Deterministic search for a positive-definite combination: unit vectors,
/// then 0/1 indicator vectors, then grid perturbations of the all-ones vector.
/// `None` means none was found, not that none exists.
pub fn positive_combination(h: &HermitianFormSystem) -> Option<PositiveCombination> {
    let k = h.k();
    if h.m() == 0 {
        return None;
    }
    let try_lambda = |lambda: Vec<Rational>| {
        let witness = h.combination(&lambda);
        is_positive_definite(&witness).then_some(PositiveCombination { lambda, witness })
    };
    let unit = |j: usize| (0..k).map(|i| if i == j { int(1) } else { int(0) }).collect::<Vec<_>>();
    for j in 0..k {
        if let Some(pc) = try_lambda(unit(j)) {
            return Some(pc);
        }
    }
    if k < 24 {
        for mask in 1u32..(1 << k) {
            if mask.count_ones() < 2 {
                continue;
            }
            let lambda = (0..k).map(|i| int(((mask >> i) & 1) as i64)).collect();
            if let Some(pc) = try_lambda(lambda) {
                return Some(pc);
            }
        }
    }
    let mut idx = vec![0usize; k];
    for _ in 0..GRID_LIMIT {
        let lambda = idx.iter().map(|&g| rat(GRID[g].0, GRID[g].1)).collect();
        if let Some(pc) = try_lambda(lambda) {
            return Some(pc);
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < GRID.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
    None
}

/// Linear forms with `Σ_r conj(B_ri)·H_rj + Σ_r H_ir·B_rj` as the `(i, j)`
/// entry, i.e. the entries of `B*H + HB`. `B` is the complex `m × m` unknown
/// whose `(r, c)` entry sits at real indices `offset + 2(r·m + c)` and `+1`.
pub(crate) fn skew_defect(h: &GaussMatrix, offset: usize, i: usize, j: usize) -> ComplexLinearForm {
    let m = h.rows();
    let var = |r: usize, c: usize| offset + 2 * (r * m + c);
    let mut f = ComplexLinearForm::new();
    for r in 0..m {
        f.add_conj(var(r, i), h.get(r, j));
        f.add_complex(var(r, j), h.get(i, r));
    }
    f
}

/// Reads the complex `m × m` matrix whose entries sit at `offset + 2(r·m + c)`.
pub(crate) fn complex_block(x: &[Rational], m: usize, offset: usize) -> GaussMatrix {
    GaussMatrix::from_fn(m, m, |r, c| {
        let v = offset + 2 * (r * m + c);
        GaussRational::new(x[v].clone(), x[v + 1].clone())
    })
}

/// The real space 𝓛 of complex matrices `B` with `B*Hⱼ + HⱼB = 0` for every
/// component, i.e. `H(Bw, w') + H(w, Bw') = 0`.
pub fn zero_associated_space(h: &HermitianFormSystem) -> MatrixSubspace<GaussRational> {
    let m = h.m();
    let mut red = RowReducer::new(2 * m * m);
    for hj in h.components() {
        for i in 0..m {
            for j in 0..m {
                skew_defect(hj, 0, i, j).impose(&mut red);
            }
        }
    }
    let basis = red.into_rref().null_basis().iter().map(|x| complex_block(x, m, 0)).collect();
    MatrixSubspace::new(m, m, basis)
}

/// Number of unordered pairs of eigenvalues that differ, read off the
/// square-free decomposition of the characteristic polynomial.
pub fn eigen_pair_count(m: &GaussMatrix) -> Result<usize, FormError> {
    if !m.is_hermitian() {
        return Err(FormError::NotHermitian(0));
    }
    let r = m.rows();
    let poly = hermitian_char_poly(m);
    let choose2 = |x: usize| x * x.saturating_sub(1) / 2;
    let equal: usize = poly.root_multiplicities().iter().map(|&(mult, count)| count * choose2(mult)).sum();
    Ok(choose2(r) - equal)
}

fn hermitian_char_poly(m: &GaussMatrix) -> Poly {
    Poly::new(char_poly_coeffs(m, GaussRational::from_int).into_iter().map(|z| z.re).collect())
}

/// Outcome of checking a form against a cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum Validation {
    Valid,
    Invalid(String),
    Unverified(String),
}

/// Checks that `H(w,w)` lies in the closed cone minus the origin, on the
/// standard basis and on `samples` pseudo-random vectors drawn from `seed`.
///
/// Failures of the sampling check are reported before a missing positive
/// combination, since they are definite.
pub fn validate(
    h: &HermitianFormSystem,
    cone: &Cone,
    samples: usize,
    seed: u64,
) -> Result<Validation, FormError> {
    if cone.ambient_dim() != h.k() {
        return Err(ConeError::DimensionMismatch { expected: cone.ambient_dim(), found: h.k() }.into());
    }
    for (j, c) in h.components().iter().enumerate() {
        if !c.is_hermitian() {
            return Ok(Validation::Invalid(format!("component {j} is not Hermitian")));
        }
    }
    let m = h.m();
    if m == 0 {
        return Ok(Validation::Valid);
    }
    let mut points: Vec<Vec<GaussRational>> = (0..m)
        .map(|a| (0..m).map(|i| GaussRational::from_int((i == a) as i64)).collect())
        .collect();
    points.extend(sample_vectors(m, samples, seed));
    for w in &points {
        let v = h.evaluate_real(w)?;
        if v.iter().all(Zero::is_zero) {
            return Ok(Validation::Invalid(format!("H(w,w) = 0 at w = {}", fmt_vec(w))));
        }
        if !cone.contains(&v, Membership::Closure)? {
            return Ok(Validation::Invalid(format!("H(w,w) outside the closed cone at w = {}", fmt_vec(w))));
        }
    }
    if positive_combination(h).is_none() {
        return Ok(Validation::Unverified("no positive-definite combination found".into()));
    }
    Ok(Validation::Valid)
}

fn fmt_vec(w: &[GaussRational]) -> String {
    let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Nonzero Gaussian-rational vectors with small numerators and denominators.
pub fn sample_vectors(m: usize, count: usize, seed: u64) -> Vec<Vec<GaussRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count && m > 0 {
        let w: Vec<GaussRational> = (0..m)
            .map(|_| {
                let den = rng.gen_range(1..=3);
                GaussRational::new(rat(rng.gen_range(-4..=4), den), rat(rng.gen_range(-4..=4), den))
            })
            .collect();
        if w.iter().any(|z| !Field::is_zero(z)) {
            out.push(w);
        }
    }
    out
}

/// A basis change `P` with `P*H₁P` and `P*H₂P` diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagonalization {
    /// Columns are the new basis vectors.
    pub p: GaussMatrix,
    /// Diagonal of `P*H₁P`, all positive.
    pub h1_diag: Vec<Rational>,
    /// Diagonal of `P*H₂P`.
    pub h2_diag: Vec<Rational>,
    /// Generalized eigenvalues `h2_diag[i] / h1_diag[i]`.
    pub eigenvalues: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SimultaneousDiagonalization {
    Diagonal(Diagonalization),
    /// `det(H₂ − t·H₁)` has an irrational root.
    NotRational,
}

/// Simultaneous diagonalization of a positive-definite `H₁` and a Hermitian
/// `H₂` with rational generalized spectrum.
///
/// Columns are the `H₁`-orthogonalized null bases of `H₂ − λH₁`, unnormalized
/// since unit length is generally irrational, ordered by first nonzero
/// coordinate and then by decreasing eigenvalue.
pub fn simultaneous_diagonalize(
    h1: &GaussMatrix,
    h2: &GaussMatrix,
) -> Result<SimultaneousDiagonalization, FormError> {
    let m = h1.rows();
    if h2.rows() != m || h2.cols() != m || h1.cols() != m {
        return Err(FormError::DimensionMismatch { expected: m, found: h2.rows() });
    }
    if !h2.is_hermitian() {
        return Err(FormError::NotHermitian(1));
    }
    if !is_positive_definite(h1) {
        return Err(FormError::NotPositiveDefinite);
    }
    let inv = h1.inverse().ok_or(FormError::NotPositiveDefinite)?;
    let pencil = inv.try_mul(h2).expect("square");
    let poly = Poly::new(char_poly_coeffs(&pencil, GaussRational::from_int).into_iter().map(|z| z.re).collect());
    let Some(roots) = poly.rational_roots() else {
        return Ok(SimultaneousDiagonalization::NotRational);
    };
    if roots.iter().map(|(_, mult)| mult).sum::<usize>() != m {
        return Ok(SimultaneousDiagonalization::NotRational);
    }
    let form = |a: &[GaussRational], b: &[GaussRational]| {
        let hb = h1.mul_vec(b).expect("square");
        a.iter().zip(&hb).fold(GaussRational::default(), |acc, (x, y)| &acc + &(&x.conj() * y))
    };
    let mut columns: Vec<(usize, Rational, Vec<GaussRational>)> = Vec::new();
    for (lambda, _) in &roots {
        let l: GaussRational = lambda.clone().into();
        let shifted = h2.try_sub(&h1.map(|z| z * &l)).expect("same shape");
        let mut block: Vec<Vec<GaussRational>> = Vec::new();
        for v in rank_and_nullspace(&shifted).basis {
            let mut u = v.clone();
            for b in &block {
                let coef = form(b, &v).div(&form(b, b));
                u = u.iter().zip(b).map(|(x, y)| x - &(&coef * y)).collect();
            }
            block.push(u);
        }
        for u in block {
            let lead = u.iter().position(|z| !Field::is_zero(z)).unwrap_or(m);
            columns.push((lead, lambda.clone(), u));
        }
    }
    columns.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));
    let p = GaussMatrix::from_fn(m, m, |i, j| columns[j].2[i].clone());
    let h1_diag: Vec<Rational> = columns.iter().map(|c| form(&c.2, &c.2).re).collect();
    let eigenvalues: Vec<Rational> = columns.iter().map(|c| c.1.clone()).collect();
    let h2_diag = h1_diag.iter().zip(&eigenvalues).map(|(d, l)| d * l).collect();
    Ok(SimultaneousDiagonalization::Diagonal(Diagonalization { p, h1_diag, h2_diag, eigenvalues }))
}
