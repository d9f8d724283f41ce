use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::Matrix;
use super::scalar::{self, Rational};

/// Dense univariate polynomial over the rationals, coefficients from degree 0 up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `t - root`.
    pub fn linear(root: Rational) -> Self {
        Poly::new(vec![-root, Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = l.recip();
                Poly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Rational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    /// Euclidean division. Panics when dividing by zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] * &lead_inv;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * d;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: returns `(i, g_i)` for every non-constant
    /// square-free factor `g_i` such that the monic part equals `Π g_i^i`.
    pub fn square_free_decomposition(&self) -> Vec<(usize, Poly)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((i, a.clone()));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Multiplicity of every root over an algebraic closure, grouped as
    /// `(multiplicity, number of distinct roots with that multiplicity)`.
    pub fn root_multiplicities(&self) -> Vec<(usize, usize)> {
        self.square_free_decomposition()
            .into_iter()
            .map(|(i, g)| (i, g.degree().unwrap_or(0)))
            .collect()
    }

    /// All rational roots with multiplicity, sorted descending.
    ///
    /// Uses the rational root theorem on the primitive integer form of each
    /// square-free factor. Returns `None` if a coefficient is too large for the
    /// divisor enumeration (beyond `u64`).
    pub fn rational_roots(&self) -> Option<Vec<(Rational, usize)>> {
        let mut roots = Vec::new();
        for (mult, g) in self.square_free_decomposition() {
            for r in square_free_rational_roots(&g)? {
                roots.push((r, mult));
            }
        }
        roots.sort_by(|a, b| b.0.cmp(&a.0));
        Some(roots)
    }
}

fn square_free_rational_roots(g: &Poly) -> Option<Vec<Rational>> {
    let mut coeffs = g.coeffs.clone();
    let mut roots = Vec::new();
    // factor out t^j
    if coeffs.first().is_some_and(Zero::is_zero) {
        roots.push(Rational::zero());
        while coeffs.first().is_some_and(Zero::is_zero) {
            coeffs.remove(0);
        }
    }
    if coeffs.len() <= 1 {
        return Some(roots);
    }
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let a0 = ints[0].abs().to_u64()?;
    let an = ints.last().unwrap().abs().to_u64()?;
    let poly = Poly::new(coeffs);
    for p in divisors(a0) {
        for q in divisors(an) {
            if p.gcd(&q) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = Rational::new(BigInt::from(p) * sign, BigInt::from(q));
                if poly.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    Some(roots)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Characteristic polynomial `det(t·I − M)` by the Faddeev–LeVerrier recursion,
/// returned as field coefficients from degree 0 up (monic, length `n + 1`).
pub fn char_poly_coeffs<F: scalar::Field>(m: &Matrix<F>, from_int: impl Fn(i64) -> F) -> Vec<F> {
    assert!(m.is_square(), "characteristic polynomial of non-square matrix");
    let n = m.rows();
    let mut coeffs = vec![F::zero(); n + 1];
    coeffs[n] = F::one();
    let mut mk = Matrix::<F>::zeros(n, n);
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I
        let mut next = m.try_mul(&mk).expect("square");
        let c_prev = coeffs[n - k + 1].clone();
        for i in 0..n {
            let v = next.get(i, i).add(&c_prev);
            next.set(i, i, v);
        }
        mk = next;
        let am = m.try_mul(&mk).expect("square");
        let c = am.trace().neg().div(&from_int(k as i64));
        coeffs[n - k] = c;
    }
    coeffs
}

/// Characteristic polynomial of a rational matrix.
pub fn char_poly(m: &Matrix<Rational>) -> Poly {
    Poly::new(char_poly_coeffs(m, |k| Rational::from_integer(BigInt::from(k))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::scalar::{int, rat};

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn gcd_and_division() {
        // (t-1)^2 (t+2) and (t-1)(t-3)
        let a = p(&[1, -2, 1]).mul(&p(&[2, 1]));
        let b = p(&[-1, 1]).mul(&p(&[-3, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).sub(&a.sub(&r)), Poly::zero());
    }

    #[test]
    fn square_free_multiplicities() {
        // (t-1)^3 (t^2-2) (t+5)^2
        let f = p(&[-1, 1])
            .mul(&p(&[-1, 1]))
            .mul(&p(&[-1, 1]))
            .mul(&p(&[-2, 0, 1]))
            .mul(&p(&[5, 1]))
            .mul(&p(&[5, 1]));
        let mut m = f.root_multiplicities();
        m.sort();
        assert_eq!(m, vec![(1, 2), (2, 1), (3, 1)]);
        let roots = f.rational_roots().unwrap();
        assert_eq!(roots, vec![(int(1), 3), (int(-5), 2)]);
    }

    #[test]
    fn rational_roots_with_fractions() {
        // (2t - 1)(3t + 4) t
        let f = p(&[-1, 2]).mul(&p(&[4, 3])).mul(&p(&[0, 1]));
        assert_eq!(f.rational_roots().unwrap(), vec![(rat(1, 2), 1), (int(0), 1), (rat(-4, 3), 1)]);
        assert!(p(&[-1, -1, 1]).rational_roots().unwrap().is_empty());
    }

    #[test]
    fn char_poly_of_companion_like_matrix() {
        let m = Matrix::from_rows(vec![
            vec![int(2), int(1), int(0)],
            vec![int(0), int(2), int(0)],
            vec![int(0), int(0), int(3)],
        ])
        .unwrap();
        // (t-2)^2 (t-3) = t^3 - 7t^2 + 16t - 12
        assert_eq!(char_poly(&m), p(&[-12, 16, -7, 1]));
    }
}
