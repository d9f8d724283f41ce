//! Homogeneous convex cones built from orthants and Lorentz cones, and their
//! linear automorphism algebras.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_linalg::{
    int, rank_and_nullspace, sparsify, Field, Matrix, RatMatrix, Rational, RowReducer,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("invalid cone: {0}")]
    InvalidShape(String),
    #[error("dimension mismatch: cone lives in R^{expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// An open convex cone containing no line, described structurally.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", try_from = "ConeWire")]
pub enum Cone {
    /// `{x : x_i > 0 for all i}` in `R^k`.
    Orthant { k: usize },
    /// `{x : x_1 > 0, x_1² − x_2² − … − x_k² > 0}` in `R^k`, `k ≥ 2`.
    Lorentz { k: usize },
    /// Cartesian product, coordinates concatenated in factor order.
    Product { factors: Vec<Cone> },
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum ConeWire {
    Orthant { k: usize },
    Lorentz { k: usize },
    Product { factors: Vec<Cone> },
}

impl TryFrom<ConeWire> for Cone {
    type Error = ConeError;
    fn try_from(w: ConeWire) -> Result<Self, ConeError> {
        match w {
            ConeWire::Orthant { k } => Cone::orthant(k),
            ConeWire::Lorentz { k } => Cone::lorentz(k),
            ConeWire::Product { factors } => Cone::product(factors),
        }
    }
}

/// Whether a membership test asks for the open cone or its closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Interior,
    Closure,
}

/// A real subspace of real or complex matrices, carried by an R-linearly
/// independent basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSubspace<F> {
    rows: usize,
    cols: usize,
    basis: Vec<Matrix<F>>,
}

/// Vectorization over the rationals (`re`, `im` interleaved for complex entries).
pub fn real_vectorize<F: Field>(m: &Matrix<F>) -> Vec<Rational> {
    m.entries().iter().flat_map(Field::real_coords).collect()
}

impl<F: Field> MatrixSubspace<F> {
    /// Wraps an independent family. Panics if shapes differ or the family is
    /// dependent over R.
    pub fn new(rows: usize, cols: usize, basis: Vec<Matrix<F>>) -> Self {
        assert!(basis.iter().all(|b| b.rows() == rows && b.cols() == cols), "shape mismatch");
        let mut red = RowReducer::new(Self::real_len(rows, cols));
        for b in &basis {
            assert!(red.push_dense(&real_vectorize(b)), "basis is linearly dependent");
        }
        MatrixSubspace { rows, cols, basis }
    }

    /// Keeps an R-independent subfamily spanning the same space.
    pub fn spanned_by(rows: usize, cols: usize, family: Vec<Matrix<F>>) -> Self {
        let mut red = RowReducer::new(Self::real_len(rows, cols));
        let basis = family.into_iter().filter(|b| red.push_dense(&real_vectorize(b))).collect();
        MatrixSubspace { rows, cols, basis }
    }

    fn real_len(rows: usize, cols: usize) -> usize {
        rows * cols * F::zero().real_coords().len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn basis(&self) -> &[Matrix<F>] {
        &self.basis
    }

    /// Membership in the real span, by rank comparison.
    pub fn contains(&self, m: &Matrix<F>) -> bool {
        if m.rows() != self.rows || m.cols() != self.cols {
            return false;
        }
        let mut red = RowReducer::new(Self::real_len(self.rows, self.cols));
        for b in &self.basis {
            red.push_dense(&real_vectorize(b));
        }
        red.in_span(sparsify(&real_vectorize(m)))
    }

    /// Real coordinates of `m` in this basis, if it lies in the span.
    pub fn coordinates(&self, m: &Matrix<F>) -> Option<Vec<Rational>> {
        let cols: Vec<Vec<Rational>> = self.basis.iter().map(real_vectorize).collect();
        let len = Self::real_len(self.rows, self.cols);
        let a = RatMatrix::from_fn(len, self.basis.len(), |i, j| cols[j][i].clone());
        crate::exact_linalg::solve(&a, &real_vectorize(m)).ok().flatten()
    }

    /// `Σ coeffs[i]·basis[i]` with real coefficients.
    pub fn combine(&self, coeffs: &[Rational]) -> Matrix<F> {
        let mut out = Matrix::zeros(self.rows, self.cols);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !Zero::is_zero(c) {
                out = out.try_add(&b.map(|x| x.scale_real(c))).expect("same shape");
            }
        }
        out
    }
}

impl Cone {
    pub fn orthant(k: usize) -> Result<Self, ConeError> {
        if k == 0 {
            return Err(ConeError::InvalidShape("orthant needs k >= 1".into()));
        }
        Ok(Cone::Orthant { k })
    }

    pub fn lorentz(k: usize) -> Result<Self, ConeError> {
        if k < 2 {
            return Err(ConeError::InvalidShape("lorentz cone needs k >= 2".into()));
        }
        Ok(Cone::Lorentz { k })
    }

    pub fn product(factors: Vec<Cone>) -> Result<Self, ConeError> {
        if factors.len() < 2 {
            return Err(ConeError::InvalidShape("product needs at least two factors".into()));
        }
        Ok(Cone::Product { factors })
    }

    /// The catalog cones Ω₁ … Ω₆ of dimensions 2, 3, 3, 4, 4, 4.
    pub fn omega(index: usize) -> Option<Self> {
        Some(match index {
            1 => Cone::Orthant { k: 2 },
            2 => Cone::Orthant { k: 3 },
            3 => Cone::Lorentz { k: 3 },
            4 => Cone::Orthant { k: 4 },
            5 => Cone::Product { factors: vec![Cone::Lorentz { k: 3 }, Cone::Orthant { k: 1 }] },
            6 => Cone::Lorentz { k: 4 },
            _ => return None,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            Cone::Orthant { k } | Cone::Lorentz { k } => *k,
            Cone::Product { factors } => factors.iter().map(Cone::ambient_dim).sum(),
        }
    }

    /// Factors with products flattened, in coordinate order.
    pub fn simple_factors(&self) -> Vec<&Cone> {
        match self {
            Cone::Product { factors } => factors.iter().flat_map(Cone::simple_factors).collect(),
            other => vec![other],
        }
    }

    fn check_dim(&self, found: usize) -> Result<(), ConeError> {
        let expected = self.ambient_dim();
        if expected != found {
            return Err(ConeError::DimensionMismatch { expected, found });
        }
        Ok(())
    }

    /// Exact membership in the open cone or in its closure.
    pub fn contains(&self, x: &[Rational], mode: Membership) -> Result<bool, ConeError> {
        self.check_dim(x.len())?;
        Ok(match self {
            Cone::Orthant { .. } => match mode {
                Membership::Interior => x.iter().all(Signed::is_positive),
                Membership::Closure => x.iter().all(|v| !v.is_negative()),
            },
            Cone::Lorentz { .. } => {
                let q = x[1..].iter().fold(&x[0] * &x[0], |acc, v| acc - v * v);
                match mode {
                    Membership::Interior => x[0].is_positive() && q.is_positive(),
                    Membership::Closure => !x[0].is_negative() && !q.is_negative(),
                }
            }
            Cone::Product { factors } => {
                let mut off = 0;
                for f in factors {
                    let d = f.ambient_dim();
                    if !f.contains(&x[off..off + d], mode)? {
                        return Ok(false);
                    }
                    off += d;
                }
                true
            }
        })
    }

    /// A deep interior point: all-ones on orthant factors, `(d, 1, …, 1)` on a
    /// Lorentz factor of dimension `d`.
    pub fn canonical_interior_point(&self) -> Vec<Rational> {
        match self {
            Cone::Orthant { k } => vec![int(1); *k],
            Cone::Lorentz { k } => {
                let mut v = vec![int(1); *k];
                v[0] = int(*k as i64);
                v
            }
            Cone::Product { factors } => {
                factors.iter().flat_map(Cone::canonical_interior_point).collect()
            }
        }
    }

    /// Basis of the Lie algebra g(Ω) as real `k × k` matrices.
    ///
    /// Orthant: diagonal units. Lorentz: identity, then `E₁ⱼ + Eⱼ₁` for `j ≥ 2`,
    /// then `Eᵢⱼ − Eⱼᵢ` for `2 ≤ i < j`. Products: block-diagonal sums.
    pub fn algebra(&self) -> MatrixSubspace<Rational> {
        let k = self.ambient_dim();
        MatrixSubspace::new(k, k, self.algebra_generators())
    }

    fn algebra_generators(&self) -> Vec<RatMatrix> {
        let unit = |k: usize, i: usize, j: usize| {
            let mut m = RatMatrix::zeros(k, k);
            m.set(i, j, int(1));
            m
        };
        match self {
            Cone::Orthant { k } => (0..*k).map(|i| unit(*k, i, i)).collect(),
            Cone::Lorentz { k } => {
                let k = *k;
                let mut out = vec![RatMatrix::identity(k)];
                for j in 1..k {
                    out.push(unit(k, 0, j).try_add(&unit(k, j, 0)).unwrap());
                }
                for i in 1..k {
                    for j in i + 1..k {
                        out.push(unit(k, i, j).try_sub(&unit(k, j, i)).unwrap());
                    }
                }
                out
            }
            Cone::Product { factors } => {
                let k = self.ambient_dim();
                let mut out = Vec::new();
                let mut off = 0;
                for f in factors {
                    let d = f.ambient_dim();
                    for g in f.algebra_generators() {
                        let mut m = RatMatrix::zeros(k, k);
                        for i in 0..d {
                            for j in 0..d {
                                m.set(off + i, off + j, g.get(i, j).clone());
                            }
                        }
                        out.push(m);
                    }
                    off += d;
                }
                out
            }
        }
    }

    pub fn algebra_dim(&self) -> usize {
        match self {
            Cone::Orthant { k } => *k,
            Cone::Lorentz { k } => k * (k - 1) / 2 + 1,
            Cone::Product { factors } => factors.iter().map(Cone::algebra_dim).sum(),
        }
    }

    /// Whether `m` lies in g(Ω).
    pub fn in_algebra(&self, m: &RatMatrix) -> Result<bool, ConeError> {
        let k = self.ambient_dim();
        if m.rows() != k || m.cols() != k {
            return Err(ConeError::DimensionMismatch { expected: k, found: m.rows().max(m.cols()) });
        }
        Ok(self.algebra().contains(m))
    }

    /// Basis of the Frobenius-orthogonal complement of g(Ω) in `k × k` real
    /// matrices: `M ∈ g(Ω)` iff `⟨N, M⟩ = 0` for every returned `N`.
    pub fn algebra_annihilator(&self) -> Vec<RatMatrix> {
        let k = self.ambient_dim();
        let gens = self.algebra_generators();
        let stacked = RatMatrix::from_fn(gens.len(), k * k, |i, j| gens[i].entries()[j].clone());
        rank_and_nullspace(&stacked)
            .basis
            .into_iter()
            .map(|v| RatMatrix::from_fn(k, k, |i, j| v[i * k + j].clone()))
            .collect()
    }
}

/// Upper bound `k²/2 − k/2 + 1` on dim g(Ω) for a line-free cone in `R^k`, and
/// the threshold `K = (k−2)(k−3)/2 + k + 1` (defined for `k ≥ 3`) above which
/// the cone must be circular.
pub fn algebra_dim_bounds(k: usize) -> (usize, Option<usize>) {
    let max_dim = k * k.saturating_sub(1) / 2 + 1;
    let threshold = (k >= 3).then(|| (k - 2) * (k - 3) / 2 + k + 1);
    (max_dim, threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::rat;

    fn v(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&a| int(a)).collect()
    }

    #[test]
    fn catalog_algebra_dims() {
        let dims: Vec<usize> = (1..=6).map(|i| Cone::omega(i).unwrap().algebra().dim()).collect();
        assert_eq!(dims, vec![2, 3, 4, 4, 5, 7]);
        assert_eq!(Cone::lorentz(5).unwrap().algebra().dim(), 11);
        for i in 1..=6 {
            let c = Cone::omega(i).unwrap();
            assert_eq!(c.algebra().dim(), c.algebra_dim());
        }
    }

    #[test]
    fn membership_examples() {
        let c3 = Cone::lorentz(3).unwrap();
        assert!(!c3.contains(&v(&[1, 1, 0]), Membership::Interior).unwrap());
        assert!(c3.contains(&v(&[1, 1, 0]), Membership::Closure).unwrap());
        assert!(Cone::orthant(2).unwrap().contains(&v(&[1, 1]), Membership::Interior).unwrap());
        assert!(Cone::lorentz(4).unwrap().contains(&v(&[2, 1, 1, 1]), Membership::Interior).unwrap());
        assert!(c3.contains(&v(&[1, 1]), Membership::Interior).is_err());
        assert!(!c3.contains(&v(&[-2, 0, 0]), Membership::Closure).unwrap());
    }

    #[test]
    fn algebra_membership_examples() {
        let c3 = Cone::omega(3).unwrap();
        assert!(c3.in_algebra(&RatMatrix::identity(3)).unwrap());
        let mut e12 = RatMatrix::zeros(2, 2);
        e12.set(0, 1, int(1));
        assert!(!Cone::omega(1).unwrap().in_algebra(&e12).unwrap());
        let mut sym = RatMatrix::zeros(3, 3);
        sym.set(0, 1, int(1));
        sym.set(1, 0, int(1));
        assert!(c3.in_algebra(&sym).unwrap());
        assert!(c3.in_algebra(&RatMatrix::identity(2)).is_err());
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(algebra_dim_bounds(5).0, 11);
        assert_eq!(algebra_dim_bounds(4), (7, Some(6)));
        assert_eq!(algebra_dim_bounds(2), (2, None));
    }

    #[test]
    fn invalid_shapes_rejected() {
        assert!(Cone::lorentz(1).is_err());
        assert!(Cone::orthant(0).is_err());
        assert!(Cone::product(vec![Cone::orthant(1).unwrap()]).is_err());
        let bad: Result<Cone, _> = serde_json::from_str(r#"{"type":"lorentz","k":1}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn json_shape() {
        let c = Cone::omega(5).unwrap();
        let js = serde_json::to_string(&c).unwrap();
        assert_eq!(
            js,
            r#"{"type":"product","factors":[{"type":"lorentz","k":3},{"type":"orthant","k":1}]}"#
        );
        assert_eq!(serde_json::from_str::<Cone>(&js).unwrap(), c);
    }

    #[test]
    fn annihilator_characterizes_algebra() {
        for i in 1..=6 {
            let c = Cone::omega(i).unwrap();
            let k = c.ambient_dim();
            let ann = c.algebra_annihilator();
            assert_eq!(ann.len() + c.algebra_dim(), k * k);
            for g in c.algebra().basis() {
                for n in &ann {
                    assert!(Zero::is_zero(&n.frobenius(g).unwrap()));
                }
            }
        }
    }

    #[test]
    fn subspace_coordinates() {
        let alg = Cone::omega(3).unwrap().algebra();
        let m = alg.combine(&[int(2), rat(1, 2), int(0), int(-1)]);
        assert_eq!(alg.coordinates(&m).unwrap(), vec![int(2), rat(1, 2), int(0), int(-1)]);
    }
}
