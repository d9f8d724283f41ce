//! Exact rational and Gaussian-rational linear algebra.
//!
//! Every dimension the rest of the crate reports is the nullity of some exact
//! linear system, so nothing here ever touches floating point.

mod linform;
mod matrix;
mod poly;
mod reduce;
mod scalar;

pub use linform::ComplexLinearForm;
pub use matrix::{GaussMatrix, Matrix, RatMatrix};
pub use poly::{char_poly, char_poly_coeffs, Poly};
pub use reduce::{sparsify, RowReducer, Rref, SparseRow};
pub use scalar::{
    format_rational, int, parse_rational, rat, rational_string, rational_vec_string, Field,
    GaussRational, Rational,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("rows of unequal length")]
    Ragged,
}

/// Rank and canonical null basis of a matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct NullSpace<F> {
    pub rank: usize,
    pub basis: Vec<Vec<F>>,
}

/// Rank plus a null basis in canonical form (free columns ascending, free
/// coordinate 1, pivot coordinates the negated reduced entries).
pub fn rank_and_nullspace<F: Field>(m: &Matrix<F>) -> NullSpace<F> {
    let mut red = RowReducer::new(m.cols());
    for i in 0..m.rows() {
        red.push_dense(m.row(i));
    }
    let rref = red.into_rref();
    NullSpace { rank: rref.rank(), basis: rref.null_basis() }
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut red = RowReducer::new(m.cols());
    for i in 0..m.rows() {
        red.push_dense(m.row(i));
    }
    red.rank()
}

/// Solves `m·x = rhs`; returns the solution with every free variable set to
/// zero, or `None` when the system is inconsistent.
pub fn solve<F: Field>(m: &Matrix<F>, rhs: &[F]) -> Result<Option<Vec<F>>, LinalgError> {
    if rhs.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch { expected: m.rows(), found: rhs.len() });
    }
    let n = m.cols();
    let mut red = RowReducer::new(n + 1);
    for (i, b) in rhs.iter().enumerate() {
        let mut row = m.row(i).to_vec();
        row.push(b.clone());
        red.push_dense(&row);
    }
    let rref = red.into_rref();
    let mut x = vec![F::zero(); n];
    for (p, row) in rref.pivot_rows() {
        if p == n {
            return Ok(None);
        }
        if let Some((_, v)) = row.iter().find(|(c, _)| *c == n) {
            x[p] = v.clone();
        }
    }
    Ok(Some(x))
}

/// The real `2r × 2c` matrix of the underlying real-linear map, in the basis
/// `(e₁, i·e₁, e₂, i·e₂, …)`.
pub fn realify(m: &GaussMatrix) -> RatMatrix {
    let mut out = RatMatrix::zeros(2 * m.rows(), 2 * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let z = m.get(i, j);
            out.set(2 * i, 2 * j, z.re.clone());
            out.set(2 * i, 2 * j + 1, -&z.im);
            out.set(2 * i + 1, 2 * j, z.im.clone());
            out.set(2 * i + 1, 2 * j + 1, z.re.clone());
        }
    }
    out
}

/// Inverse of [`realify`]: recovers the complex matrix when every 2×2 block has
/// the form `[[a, -b], [b, a]]`.
pub fn complexify(m: &RatMatrix) -> Option<GaussMatrix> {
    if !m.rows().is_multiple_of(2) || !m.cols().is_multiple_of(2) {
        return None;
    }
    let (r, c) = (m.rows() / 2, m.cols() / 2);
    let mut out = GaussMatrix::zeros(r, c);
    for i in 0..r {
        for j in 0..c {
            let a = m.get(2 * i, 2 * j);
            let b = m.get(2 * i + 1, 2 * j);
            if m.get(2 * i + 1, 2 * j + 1) != a || *m.get(2 * i, 2 * j + 1) != -b {
                return None;
            }
            out.set(i, j, GaussRational::new(a.clone(), b.clone()));
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let ns = rank_and_nullspace(&RatMatrix::identity(3));
        assert_eq!(ns.rank, 3);
        assert!(ns.basis.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_standard_basis() {
        let ns = rank_and_nullspace(&RatMatrix::zeros(2, 2));
        assert_eq!(ns.rank, 0);
        assert_eq!(ns.basis, vec![ints(&[1, 0]), ints(&[0, 1])]);
    }

    #[test]
    fn rank_one_kernel() {
        let ns = rank_and_nullspace(&r(&[&[1, 2], &[2, 4]]));
        assert_eq!(ns.rank, 1);
        assert_eq!(ns.basis, vec![ints(&[-2, 1])]);
    }

    #[test]
    fn empty_matrix() {
        let ns = rank_and_nullspace(&RatMatrix::zeros(0, 3));
        assert_eq!(ns.rank, 0);
        assert_eq!(ns.basis.len(), 3);
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve(&RatMatrix::identity(2), &ints(&[3, 5])).unwrap(), Some(ints(&[3, 5])));
        assert_eq!(solve(&r(&[&[1, 1]]), &ints(&[2])).unwrap(), Some(ints(&[2, 0])));
        assert_eq!(solve(&r(&[&[1], &[1]]), &ints(&[0, 1])).unwrap(), None);
        assert!(solve(&r(&[&[1], &[1]]), &ints(&[0])).is_err());
    }

    #[test]
    fn realify_examples() {
        let i = GaussMatrix::from_rows(vec![vec![GaussRational::i()]]).unwrap();
        assert_eq!(realify(&i), r(&[&[0, -1], &[1, 0]]));
        assert_eq!(realify(&GaussMatrix::identity(1)), RatMatrix::identity(2));
        let z = GaussMatrix::from_rows(vec![vec![GaussRational::new(int(1), int(2))]]).unwrap();
        assert_eq!(realify(&z), r(&[&[1, -2], &[2, 1]]));
        assert_eq!(complexify(&realify(&z)).unwrap(), z);
        assert!(complexify(&r(&[&[1, 0], &[0, 2]])).is_none());
    }
}
