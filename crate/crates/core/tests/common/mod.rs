#![allow(dead_code)]

use num_traits::{One, Zero};
use siegel_core::exact_linalg::{int, rat, GaussMatrix, GaussRational, Rational};

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn g(re: i64, im: i64) -> GaussRational {
    GaussRational::new(int(re), int(im))
}

/// Skew-Hermitian `S` from integer data, then `(I − S)(I + S)⁻¹`.
pub fn cayley_unitary(r: usize, data: &[(i64, i64)]) -> GaussMatrix {
    let mut s = GaussMatrix::zeros(r, r);
    let mut it = data.iter().cycle();
    for i in 0..r {
        let &(_, d) = it.next().expect("cycle");
        s.set(i, i, GaussRational::new(int(0), int(d)));
        for j in i + 1..r {
            let &(a, b) = it.next().expect("cycle");
            let z = GaussRational::new(rat(a, 2), rat(b, 3));
            s.set(i, j, z.clone());
            s.set(j, i, -&z.conj());
        }
    }
    let id = GaussMatrix::identity(r);
    let plus = id.try_add(&s).unwrap().inverse().expect("I + S invertible for skew-Hermitian S");
    id.try_sub(&s).unwrap().try_mul(&plus).unwrap()
}

/// `U·diag(eigs)·U*`.
pub fn planted_hermitian(u: &GaussMatrix, eigs: &[i64]) -> GaussMatrix {
    let d = GaussMatrix::diagonal(eigs.iter().map(|&e| GaussRational::from_int(e)).collect());
    u.try_mul(&d).unwrap().try_mul(&u.adjoint()).unwrap()
}

/// Characteristic polynomial by Faddeev–LeVerrier, ascending coefficients.
pub fn faddeev_char_poly(a: &GaussMatrix) -> Vec<GaussRational> {
    let n = a.rows();
    let mut c = vec![GaussRational::default(); n + 1];
    c[n] = GaussRational::from_int(1);
    let mut m = GaussMatrix::zeros(n, n);
    for k in 1..=n {
        let shifted = a.try_mul(&m).unwrap().try_add(&GaussMatrix::identity(n).scale(&c[n - k + 1])).unwrap();
        m = shifted;
        let t = a.try_mul(&m).unwrap().trace();
        c[n - k] = -&t.scale(&rat(1, k as i64));
    }
    c
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn deg(p: &[Rational]) -> usize {
    p.len().saturating_sub(1)
}

fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &f * bi;
        }
        q[shift] = f;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().cloned().unwrap_or_else(Rational::one);
    a.iter().map(|x| x / &lead).collect()
}

fn derivative(p: &[Rational]) -> Vec<Rational> {
    p.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect()
}

/// Yun's algorithm: `(multiplicity, number of distinct roots)`.
pub fn multiplicity_profile(p: &[Rational]) -> Vec<(usize, usize)> {
    let p = trim(p.to_vec());
    let mut out = Vec::new();
    let a0 = gcd(&p, &derivative(&p));
    let (mut b, _) = divrem(&p, &a0);
    let (c, _) = divrem(&derivative(&p), &a0);
    let mut d: Vec<Rational> = {
        let db = derivative(&b);
        let n = c.len().max(db.len());
        trim((0..n).map(|i| c.get(i).cloned().unwrap_or_default() - db.get(i).cloned().unwrap_or_default()).collect())
    };
    let mut i = 1;
    while deg(&b) > 0 {
        let a = gcd(&b, &d);
        if deg(&a) > 0 {
            out.push((i, deg(&a)));
        }
        b = divrem(&b, &a).0;
        let c = divrem(&d, &a).0;
        let db = derivative(&b);
        let n = c.len().max(db.len());
        d = trim((0..n).map(|j| c.get(j).cloned().unwrap_or_default() - db.get(j).cloned().unwrap_or_default()).collect());
        i += 1;
    }
    out
}

/// Pairs of eigenvalues that differ, from the Faddeev–LeVerrier polynomial.
pub fn oracle_pair_count(h: &GaussMatrix) -> usize {
    let r = h.rows();
    let p: Vec<Rational> = faddeev_char_poly(h).into_iter().map(|z| z.re).collect();
    let c2 = |x: usize| x * x.saturating_sub(1) / 2;
    c2(r) - multiplicity_profile(&p).iter().map(|&(m, n)| n * c2(m)).sum::<usize>()
}

/// `C(r,2) − Σ C(mᵢ,2)` from planted eigenvalues.
pub fn planted_pair_count(eigs: &[i64]) -> usize {
    let mut distinct = eigs.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let c2 = |x: usize| x * x.saturating_sub(1) / 2;
    c2(eigs.len()) - distinct.iter().map(|d| c2(eigs.iter().filter(|e| *e == d).count())).sum::<usize>()
}
