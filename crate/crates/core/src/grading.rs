//! The graded pieces `g₋₁ ⊕ g₋₁/₂ ⊕ g₀ ⊕ g₁/₂ ⊕ g₁` of the Lie algebra of
//! complete holomorphic vector fields on `S(Ω, H)`, each computed as the
//! nullity of an exact real linear system.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cones::{Cone, ConeError, MatrixSubspace};
use crate::exact_linalg::{
    int, rat, ComplexLinearForm, GaussMatrix, GaussRational, RatMatrix, Rational,
    RowReducer,
};
use crate::forms::{
    complex_block, positive_combination, sample_vectors, skew_defect, zero_associated_space,
    FormError, HermitianFormSystem, RawComponents,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("cone lives in R^{cone} but k = {k}")]
    ConeDim { cone: usize, k: usize },
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("empty list of factors")]
    EmptyProduct,
}

/// `S(Ω, H) = {(z, w) ∈ C^k × C^m : Im z − H(w, w) ∈ Ω}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpecWire", into = "SpecWire")]
pub struct SiegelDomainSpec {
    pub k: usize,
    pub m: usize,
    pub cone: Cone,
    pub form: HermitianFormSystem,
    pub label: String,
}

#[derive(Serialize, Deserialize)]
struct SpecWire {
    k: usize,
    m: usize,
    cone: Cone,
    #[serde(rename = "H")]
    h: serde_json::Value,
    #[serde(default)]
    label: String,
}

impl TryFrom<SpecWire> for SiegelDomainSpec {
    type Error = String;
    fn try_from(w: SpecWire) -> Result<Self, String> {
        let raw: RawComponents = serde_json::from_value(w.h).map_err(|e| e.to_string())?;
        let form = raw.into_system(w.k, w.m).map_err(|e| e.to_string())?;
        SiegelDomainSpec::new(w.cone, form, w.label).map_err(|e| e.to_string())
    }
}

impl From<SiegelDomainSpec> for SpecWire {
    fn from(s: SiegelDomainSpec) -> Self {
        SpecWire {
            k: s.k,
            m: s.m,
            cone: s.cone,
            h: serde_json::to_value(&s.form).expect("serializable"),
            label: s.label,
        }
    }
}

impl SiegelDomainSpec {
    pub fn new(cone: Cone, form: HermitianFormSystem, label: impl Into<String>) -> Result<Self, SpecError> {
        if cone.ambient_dim() != form.k() {
            return Err(SpecError::ConeDim { cone: cone.ambient_dim(), k: form.k() });
        }
        Ok(SiegelDomainSpec { k: form.k(), m: form.m(), cone, form, label: label.into() })
    }

    /// The tube domain `R^k + iΩ`.
    pub fn tube(cone: Cone, label: impl Into<String>) -> Self {
        let k = cone.ambient_dim();
        SiegelDomainSpec { k, m: 0, cone, form: HermitianFormSystem::zero(k, 0), label: label.into() }
    }

    pub fn n(&self) -> usize {
        self.k + self.m
    }
}

fn pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|b| (b..m).map(move |d| (b, d))).collect()
}

fn pair_index(m: usize, b: usize, d: usize) -> usize {
    let (b, d) = if b <= d { (b, d) } else { (d, b) };
    b * m + d - b - b * b.saturating_sub(1) / 2
}

/// Pairs `(A, B)` with `B` associated to `A`.
#[derive(Debug, Clone)]
pub struct G0Solution {
    /// Basis of the solution space, `A` as a real `k × k` matrix.
    pub pair_basis: Vec<(RatMatrix, GaussMatrix)>,
    /// Span of the `A` components: the Lie algebra of `G(Ω, H)`.
    pub a_projection: MatrixSubspace<Rational>,
    pub dim_g0: usize,
    pub s: usize,
    pub dim_g_omega_h: usize,
}

/// Solves `A·H(w, w') = H(Bw, w') + H(w, Bw')` with `A ∈ g(Ω)`.
pub fn g0_solve(d: &SiegelDomainSpec) -> G0Solution {
    let (k, m) = (d.k, d.m);
    let gens = d.cone.algebra();
    let na = gens.dim();
    let mut red = RowReducer::new(na + 2 * m * m);
    for l in 0..k {
        for i in 0..m {
            for j in 0..m {
                let mut f = ComplexLinearForm::new();
                for (t, a) in gens.basis().iter().enumerate() {
                    let mut coef = GaussRational::default();
                    for (jj, hj) in d.form.components().iter().enumerate() {
                        if !a.get(l, jj).is_zero() {
                            coef = &coef + &hj.get(i, j).scale(a.get(l, jj));
                        }
                    }
                    f.add(t, &coef);
                }
                f.add_form(&skew_defect(d.form.component(l), na, i, j), &GaussRational::from_int(-1));
                f.impose(&mut red);
            }
        }
    }
    let null = red.into_rref().null_basis();
    let pair_basis: Vec<(RatMatrix, GaussMatrix)> = null
        .iter()
        .map(|x| (gens.combine(&x[..na]), complex_block(x, m, na)))
        .collect();
    let a_projection =
        MatrixSubspace::spanned_by(k, k, pair_basis.iter().map(|(a, _)| a.clone()).collect());
    let s = zero_associated_space(&d.form).dim();
    let dim_g0 = pair_basis.len();
    assert_eq!(dim_g0 - s, a_projection.dim(), "rank-nullity for the A-projection");
    G0Solution { dim_g_omega_h: a_projection.dim(), pair_basis, a_projection, dim_g0, s }
}

/// An element `(Φ, c)` of `g₁/₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfParameter {
    /// `Φ: C^k → C^m` as an `m × k` matrix.
    pub phi: GaussMatrix,
    /// `c(w, w')_l = Σ c[l][b][d]·w_b·w'_d`, each `c[l]` symmetric.
    pub c: Vec<GaussMatrix>,
}

#[derive(Debug, Clone)]
pub struct HalfSolution {
    pub dim: usize,
    pub basis: Vec<HalfParameter>,
    /// Dimension of the `Φ`-projection of the solution space.
    pub phi_rank: usize,
}

/// Solves for `(Φ, c)`: `x ↦ Im H(w, Φx)` lies in g(Ω), and
/// `H(w, c(w', w')) = 2i·H(Φ(H(w', w)), w')`.
pub fn g_half_solve(d: &SiegelDomainSpec) -> HalfSolution {
    let (k, m) = (d.k, d.m);
    if m == 0 {
        return HalfSolution { dim: 0, basis: Vec::new(), phi_rank: 0 };
    }
    let h = &d.form;
    let ann = d.cone.algebra_annihilator();
    let np = m * (m + 1) / 2;
    let phi = |r: usize, i: usize| 2 * (r * k + i);
    let c_off = 2 * k * m;
    let cvar = |l: usize, b: usize, dd: usize| c_off + 2 * (l * np + pair_index(m, b, dd));
    let mut red = RowReducer::new(c_off + 2 * m * np);

    for a in 0..m {
        // H(e_a, Φe_i)_l; the i·e_a direction contributes its real part.
        let entry = |l: usize, i: usize| {
            let mut f = ComplexLinearForm::new();
            for r in 0..m {
                f.add_complex(phi(r, i), h.component(l).get(a, r));
            }
            f
        };
        for n in &ann {
            let mut f = ComplexLinearForm::new();
            for l in 0..k {
                for i in 0..k {
                    if !n.get(l, i).is_zero() {
                        f.add_form(&entry(l, i), &n.get(l, i).clone().into());
                    }
                }
            }
            f.impose(&mut red);
        }
    }

    let i_unit = GaussRational::i();
    for a in 0..m {
        for &(b, dd) in &pairs(m) {
            for l in 0..k {
                let mut f = ComplexLinearForm::new();
                for s in 0..m {
                    f.add_complex(cvar(s, b, dd), h.component(l).get(a, s));
                }
                // minus i·(G(e_b, e_d) + G(e_d, e_b))
                for (u, v) in [(b, dd), (dd, b)] {
                    for r in 0..m {
                        for j in 0..k {
                            let coef = &h.component(j).get(u, a).conj() * h.component(l).get(r, v);
                            f.add_conj(phi(r, j), &-&(&coef * &i_unit));
                        }
                    }
                }
                f.impose(&mut red);
            }
        }
    }

    let null = red.into_rref().null_basis();
    let basis: Vec<HalfParameter> = null
        .iter()
        .map(|x| HalfParameter {
            phi: GaussMatrix::from_fn(m, k, |r, i| GaussRational::new(x[phi(r, i)].clone(), x[phi(r, i) + 1].clone())),
            c: (0..m)
                .map(|l| {
                    GaussMatrix::from_fn(m, m, |b, dd| {
                        let v = cvar(l, b, dd);
                        GaussRational::new(x[v].clone(), x[v + 1].clone())
                    })
                })
                .collect(),
        })
        .collect();
    let phi_rank = MatrixSubspace::spanned_by(m, k, basis.iter().map(|p| p.phi.clone()).collect()).dim();
    HalfSolution { dim: basis.len(), basis, phi_rank }
}

/// An element `(a, b)` of `g₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct OneParameter {
    /// `a(x, y)_l = xᵀ·a[l]·y`, each `a[l]` symmetric.
    pub a: Vec<RatMatrix>,
    /// `b(x, w) = Σ_p x_p·b[p]·w`.
    pub b: Vec<GaussMatrix>,
}

#[derive(Debug, Clone)]
pub struct OneSolution {
    pub dim: usize,
    pub basis: Vec<OneParameter>,
}

/// Solves for `(a, b)`: `A_x = a(x, ·) ∈ g(Ω)`, `b(x, ·)/2` associated to
/// `A_x` with `Im tr = 0`, `x ↦ Im H(w', b(x, w)) ∈ g(Ω)`, and
/// `H(w, b(H(w', w''), w'')) = H(b(H(w'', w), w'), w'')`.
pub fn g1_solve(d: &SiegelDomainSpec) -> OneSolution {
    let (k, m) = (d.k, d.m);
    let h = &d.form;
    let ann = d.cone.algebra_annihilator();
    let kp = k * (k + 1) / 2;
    let avar = |l: usize, p: usize, q: usize| l * kp + pair_index(k, p, q);
    let b_off = |p: usize| k * kp + p * 2 * m * m;
    let bvar = |p: usize, r: usize, c: usize| b_off(p) + 2 * (r * m + c);
    let mut red = RowReducer::new(k * kp + 2 * k * m * m);
    let half = GaussRational::new(rat(-1, 2), int(0));

    for p in 0..k {
        for n in &ann {
            let mut row = ComplexLinearForm::new();
            for l in 0..k {
                for q in 0..k {
                    row.add_real(avar(l, p, q), n.get(l, q));
                }
            }
            row.impose_re(&mut red);
        }
        for l in 0..k {
            for i in 0..m {
                for j in 0..m {
                    let mut f = ComplexLinearForm::new();
                    for q in 0..k {
                        f.add(avar(l, p, q), h.component(q).get(i, j));
                    }
                    f.add_form(&skew_defect(h.component(l), b_off(p), i, j), &half);
                    f.impose(&mut red);
                }
            }
        }
        if m > 0 {
            let mut tr = ComplexLinearForm::new();
            for r in 0..m {
                tr.add_complex(bvar(p, r, r), &GaussRational::from_int(1));
            }
            tr.impose_im(&mut red);
        }
    }

    for a in 0..m {
        for c in 0..m {
            for n in &ann {
                let mut f = ComplexLinearForm::new();
                for l in 0..k {
                    for p in 0..k {
                        if n.get(l, p).is_zero() {
                            continue;
                        }
                        let nl: GaussRational = n.get(l, p).clone().into();
                        for r in 0..m {
                            f.add_complex(bvar(p, r, c), &(&nl * h.component(l).get(a, r)));
                        }
                    }
                }
                f.impose(&mut red);
            }
        }
    }

    let left = |f: &mut ComplexLinearForm, l: usize, a: usize, b: usize, c: usize, dd: usize| {
        for r in 0..m {
            for p in 0..k {
                let coef = h.component(l).get(a, r) * h.component(p).get(b, c);
                f.add_complex(bvar(p, r, dd), &coef);
            }
        }
    };
    let right = |f: &mut ComplexLinearForm, l: usize, a: usize, b: usize, c: usize, dd: usize| {
        for r in 0..m {
            for p in 0..k {
                let coef = &h.component(p).get(c, a).conj() * h.component(l).get(r, dd);
                f.add_conj(bvar(p, r, b), &-&coef);
            }
        }
    };
    for a in 0..m {
        for b in 0..m {
            for &(c, dd) in &pairs(m) {
                for l in 0..k {
                    let mut f = ComplexLinearForm::new();
                    left(&mut f, l, a, b, c, dd);
                    right(&mut f, l, a, b, c, dd);
                    if c != dd {
                        left(&mut f, l, a, b, dd, c);
                        right(&mut f, l, a, b, dd, c);
                    }
                    f.impose(&mut red);
                }
            }
        }
    }

    let null = red.into_rref().null_basis();
    let basis = null
        .iter()
        .map(|x| OneParameter {
            a: (0..k).map(|l| RatMatrix::from_fn(k, k, |p, q| x[avar(l, p, q)].clone())).collect(),
            b: (0..k).map(|p| complex_block(x, m, b_off(p))).collect(),
        })
        .collect::<Vec<_>>();
    OneSolution { dim: basis.len(), basis }
}

/// One inequality checked against an engine output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: usize,
    #[serde(with = "crate::exact_linalg::rational_string")]
    pub rhs: Rational,
    pub holds: bool,
}

impl BoundCheck {
    fn new(name: &str, lhs: usize, rhs: Rational) -> Self {
        let holds = Rational::from_integer(lhs.into()) <= rhs;
        BoundCheck { name: name.into(), lhs, rhs, holds }
    }
}

/// Dimensions of all graded pieces plus the bound checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    pub label: String,
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub g_minus_1: usize,
    pub g_minus_half: usize,
    pub g0: usize,
    pub g_half: usize,
    pub g1: usize,
    pub s: usize,
    pub dim_g_omega_h: usize,
    pub dim_g_omega: usize,
    pub total: usize,
    pub bounds: Vec<BoundCheck>,
}

impl GradingReport {
    pub fn dims(&self) -> [usize; 5] {
        [self.g_minus_1, self.g_minus_half, self.g0, self.g_half, self.g1]
    }

    pub fn bounds_hold(&self) -> bool {
        self.bounds.iter().all(|b| b.holds)
    }
}

/// The three upper bounds on the total dimension in terms of `(n, k, s, dim g(Ω))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TotalBounds {
    /// `4n − 2k + s + dim g(Ω)`.
    #[serde(with = "crate::exact_linalg::rational_string")]
    pub with_s: Rational,
    /// `k² − 2(n+1)k + n² + 4n + dim g(Ω)`.
    #[serde(with = "crate::exact_linalg::rational_string")]
    pub with_algebra: Rational,
    /// `3k²/2 − (2n + 5/2)k + n² + 4n + 1`.
    #[serde(with = "crate::exact_linalg::rational_string")]
    pub universal: Rational,
}

pub fn total_bounds(n: usize, k: usize, s: usize, dim_g_omega: usize) -> TotalBounds {
    let (n, k, s, g) = (int(n as i64), int(k as i64), int(s as i64), int(dim_g_omega as i64));
    let with_s = int(4) * &n - int(2) * &k + &s + &g;
    let with_algebra = &k * &k - int(2) * (&n + int(1)) * &k + &n * &n + int(4) * &n + &g;
    let universal =
        rat(3, 2) * &k * &k - (int(2) * &n + rat(5, 2)) * &k + &n * &n + int(4) * &n + int(1);
    TotalBounds { with_s, with_algebra, universal }
}

/// Assembles all five graded dimensions.
pub fn grading(d: &SiegelDomainSpec) -> GradingReport {
    let (g0, (half, one)) = rayon::join(|| g0_solve(d), || rayon::join(|| g_half_solve(d), || g1_solve(d)));
    let (k, m, n) = (d.k, d.m, d.n());
    let dim_g_omega = d.cone.algebra_dim();
    let total = k + 2 * m + g0.dim_g0 + half.dim + one.dim;
    let tb = total_bounds(n, k, g0.s, dim_g_omega);
    let bounds = vec![
        BoundCheck::new("g_half <= 2(n-k)", half.dim, int(2 * m as i64)),
        BoundCheck::new("g1 <= k", one.dim, int(k as i64)),
        BoundCheck::new("s <= (n-k)^2", g0.s, int((m * m) as i64)),
        BoundCheck::new("total <= 4n-2k+s+dim g(Omega)", total, tb.with_s),
        BoundCheck::new("total <= k^2-2(n+1)k+n^2+4n+dim g(Omega)", total, tb.with_algebra),
        BoundCheck::new("total <= 3k^2/2-(2n+5/2)k+n^2+4n+1", total, tb.universal),
    ];
    GradingReport {
        label: d.label.clone(),
        n,
        k,
        m,
        g_minus_1: k,
        g_minus_half: 2 * m,
        g0: g0.dim_g0,
        g_half: half.dim,
        g1: one.dim,
        s: g0.s,
        dim_g_omega_h: g0.dim_g_omega_h,
        dim_g_omega,
        total,
        bounds,
    }
}

/// `Σ (ℓᵢ² + 2ℓᵢ)`, the dimension for a product of unit balls `B^ℓᵢ`.
pub fn ball_product_dim(lengths: &[usize]) -> Result<usize, SpecError> {
    if lengths.is_empty() || lengths.contains(&0) {
        return Err(SpecError::EmptyProduct);
    }
    Ok(lengths.iter().map(|l| l * l + 2 * l).sum())
}

/// Whether `c` is determined by `Φ` in every element of the solution, as
/// expected whenever `H` has a positive-definite combination.
pub fn half_determined_by_phi(d: &SiegelDomainSpec, sol: &HalfSolution) -> bool {
    positive_combination(&d.form).is_none() || sol.phi_rank == sol.dim
}

fn in_g_omega(cone: &Cone, m: &RatMatrix) -> bool {
    cone.in_algebra(m).unwrap_or(false)
}

/// Substitutes `(Φ, c)` into the defining identities at `points`
/// pseudo-random `(w, w')` and reports whether all hold exactly.
pub fn check_half(d: &SiegelDomainSpec, p: &HalfParameter, points: usize, seed: u64) -> bool {
    let (k, m) = (d.k, d.m);
    if m == 0 {
        return true;
    }
    let h = &d.form;
    let ws = sample_vectors(m, 2 * points, seed);
    let phi = |x: &[GaussRational]| p.phi.mul_vec(x).expect("shape");
    let c_of = |u: &[GaussRational]| -> Vec<GaussRational> {
        p.c.iter()
            .map(|cl| {
                let cu = cl.mul_vec(u).expect("shape");
                u.iter().zip(&cu).fold(GaussRational::default(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    };
    for pair in ws.chunks(2) {
        let (w, w2) = (&pair[0], &pair[1]);
        let im_map = RatMatrix::from_fn(k, k, |l, i| {
            let e: Vec<GaussRational> = (0..k).map(|j| GaussRational::from_int((i == j) as i64)).collect();
            h.evaluate(w, &phi(&e)).expect("shape")[l].im.clone()
        });
        if !in_g_omega(&d.cone, &im_map) {
            return false;
        }
        let lhs = h.evaluate(w, &c_of(w2)).expect("shape");
        let inner = h.evaluate(w2, w).expect("shape");
        let rhs = h.evaluate(&phi(&inner), w2).expect("shape");
        let two_i = GaussRational::new(int(0), int(2));
        if lhs.iter().zip(&rhs).any(|(a, b)| *a != &two_i * b) {
            return false;
        }
    }
    true
}

/// Substitutes `(a, b)` into the defining conditions at `points`
/// pseudo-random real `x` and complex `w, w', w''`.
pub fn check_one(d: &SiegelDomainSpec, p: &OneParameter, points: usize, seed: u64) -> bool {
    let (k, m) = (d.k, d.m);
    let h = &d.form;
    let xs = sample_vectors(k, points, seed ^ 0x5eed);
    let ws = sample_vectors(m, 3 * points, seed);
    let a_x = |x: &[Rational]| {
        RatMatrix::from_fn(k, k, |l, q| {
            (0..k).fold(Rational::zero(), |acc, pp| acc + &x[pp] * p.a[l].get(pp, q))
        })
    };
    let b_z = |z: &[GaussRational], w: &[GaussRational]| -> Vec<GaussRational> {
        let mut out = vec![GaussRational::default(); m];
        for (zp, bp) in z.iter().zip(&p.b) {
            for (o, v) in out.iter_mut().zip(bp.mul_vec(w).expect("shape")) {
                *o = &*o + &(zp * &v);
            }
        }
        out
    };
    for (t, xz) in xs.iter().enumerate() {
        let x: Vec<Rational> = xz.iter().map(|z| z.re.clone()).collect();
        let ax = a_x(&x);
        if !in_g_omega(&d.cone, &ax) {
            return false;
        }
        if m == 0 {
            continue;
        }
        let bx = GaussMatrix::from_fn(m, m, |r, c| {
            (0..k).fold(GaussRational::default(), |acc, pp| &acc + &p.b[pp].get(r, c).scale(&(&x[pp] / int(2))))
        });
        if !bx.trace().im.is_zero() {
            return false;
        }
        let (w, w2, w3) = (&ws[3 * t], &ws[3 * t + 1], &ws[3 * t + 2]);
        let lhs: Vec<GaussRational> = {
            let hv = h.evaluate(w, w2).expect("shape");
            (0..k)
                .map(|l| (0..k).fold(GaussRational::default(), |acc, q| &acc + &hv[q].scale(ax.get(l, q))))
                .collect()
        };
        let bw = bx.mul_vec(w).expect("shape");
        let bw2 = bx.mul_vec(w2).expect("shape");
        let r1 = h.evaluate(&bw, w2).expect("shape");
        let r2 = h.evaluate(w, &bw2).expect("shape");
        if lhs.iter().zip(r1.iter().zip(&r2)).any(|(a, (b, c))| *a != b + c) {
            return false;
        }
        let im_map = RatMatrix::from_fn(k, k, |l, pp| {
            let e: Vec<GaussRational> = (0..k).map(|j| GaussRational::from_int((pp == j) as i64)).collect();
            h.evaluate(w2, &b_z(&e, w)).expect("shape")[l].im.clone()
        });
        if !in_g_omega(&d.cone, &im_map) {
            return false;
        }
        let left = h.evaluate(w, &b_z(&h.evaluate(w2, w3).expect("shape"), w3)).expect("shape");
        let right = h.evaluate(&b_z(&h.evaluate(w3, w).expect("shape"), w2), w3).expect("shape");
        if left != right {
            return false;
        }
    }
    true
}
