use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::cones::{Cone, Membership};
use crate::exact_linalg::{int, parse_rational, GaussMatrix, GaussRational, Rational};
use crate::forms::HermitianFormSystem;
use crate::grading::{ball_product_dim, SiegelDomainSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("invalid parameter `{key}`: {reason}")]
    InvalidParam { key: String, reason: String },
    #[error("malformed query `{0}`")]
    MalformedQuery(String),
}

pub type Params = BTreeMap<String, String>;

/// A relation between an engine output and a known value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
}

/// What a catalog entry is known to satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Total(Relation, usize),
    Dims([usize; 5]),
    G0(usize),
    S(usize),
    DimGOmegaH(usize),
    GHalf(Relation, usize),
    G1(usize),
    NotTransitive,
    TransitiveOnSamples,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub check: Check,
    /// The mathematical statement the value comes from.
    pub source: String,
}

fn expect(check: Check, source: impl Into<String>) -> Expectation {
    Expectation { check, source: source.into() }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Params,
    pub spec: SiegelDomainSpec,
    /// Set when the form is known to be Ω-Hermitian by construction.
    pub prevalidated: bool,
    pub expected: Vec<Expectation>,
}

impl CatalogEntry {
    /// `builtin:NAME?key=val&…` for this entry.
    pub fn query(&self) -> String {
        if self.params.is_empty() {
            return self.name.clone();
        }
        let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}?{}", self.name, ps.join("&"))
    }
}

/// Name and one-line description of every catalog entry.
pub const CATALOG: &[(&str, &str)] = &[
    ("ball", "unit ball B^n as a Siegel domain over the ray (n)"),
    ("ball_product", "product of unit balls over an orthant (lengths=l1,l2,...)"),
    ("T", "tube over the Lorentz cone C_k (k)"),
    ("orthant_tube", "tube over the orthant, (B^1)^k (k)"),
    ("tube", "tube over a catalog cone (cone=Omega1..Omega6)"),
    ("B1xT3", "B^1 x T_3 as a tube over a product cone"),
    ("D1", "k=2, H=(|w|^2, 0) on C^(n-2) (n)"),
    ("D2", "k=2, H=(|w|^2, |w|^2) on C^(n-2) (n)"),
    ("D3", "k=3 orthant, H=v|w|^2 on C (v)"),
    ("D4", "k=3 Lorentz, H=v|w|^2 on C (v)"),
    ("PS", "the non-symmetric homogeneous domain: D4 with v=(1,1,0)"),
    ("D5", "k=3 orthant, m=2 (variant=113|122)"),
    ("D6", "k=3 Lorentz, m=2 (variant=s4|v|form54|s1; v; a2, v1, v2)"),
    ("D6tilde", "k=3 Lorentz, H=(|w|^2, |w|^2, 0) on C^N (N)"),
    ("D7", "k=3 Lorentz, H=(|w|^2, |w|^2, 0) on C^3"),
    ("D8", "k=4 Lorentz, H=v|w|^2 on C (v)"),
    ("D8hat", "k=4 Lorentz, H=(|w|^2, |w|^2, 0, 0) on C^N (N)"),
];

/// Splits `builtin:NAME?key=val&…` (the `builtin:` prefix is optional).
pub fn parse_query(q: &str) -> Result<(String, Params), CatalogError> {
    let q = q.strip_prefix("builtin:").unwrap_or(q);
    let (name, rest) = q.split_once('?').unwrap_or((q, ""));
    if name.is_empty() {
        return Err(CatalogError::MalformedQuery(q.into()));
    }
    let mut params = Params::new();
    for kv in rest.split('&').filter(|s| !s.is_empty()) {
        let (k, v) = kv.split_once('=').ok_or_else(|| CatalogError::MalformedQuery(q.into()))?;
        params.insert(k.into(), v.into());
    }
    Ok((name.into(), params))
}

/// Looks up `builtin:NAME?key=val&…`.
pub fn catalog_query(q: &str) -> Result<CatalogEntry, CatalogError> {
    let (name, params) = parse_query(q)?;
    catalog(&name, &params)
}

fn bad(key: &str, reason: impl Into<String>) -> CatalogError {
    CatalogError::InvalidParam { key: key.into(), reason: reason.into() }
}

struct Reader<'a> {
    params: &'a Params,
    used: Params,
}

impl<'a> Reader<'a> {
    fn new(params: &'a Params) -> Self {
        Reader { params, used: Params::new() }
    }

    fn raw(&mut self, key: &str) -> Option<String> {
        let v = self.params.get(key)?.clone();
        self.used.insert(key.into(), v.clone());
        Some(v)
    }

    fn count(&mut self, key: &str, default: usize, min: usize) -> Result<usize, CatalogError> {
        let v = match self.raw(key) {
            Some(s) => s.parse().map_err(|_| bad(key, "expected a nonnegative integer"))?,
            None => default,
        };
        if v < min {
            return Err(bad(key, format!("must be at least {min}")));
        }
        Ok(v)
    }

    fn rationals(&mut self, key: &str, default: &[i64]) -> Result<Vec<Rational>, CatalogError> {
        match self.raw(key) {
            Some(s) => s
                .split(',')
                .map(|x| parse_rational(x).ok_or_else(|| bad(key, format!("bad rational `{x}`"))))
                .collect(),
            None => Ok(default.iter().map(|&x| int(x)).collect()),
        }
    }

    fn rational(&mut self, key: &str, default: i64) -> Result<Rational, CatalogError> {
        let v = self.rationals(key, &[default])?;
        if v.len() != 1 {
            return Err(bad(key, "expected one rational"));
        }
        Ok(v.into_iter().next().expect("one"))
    }

    /// `re` or `re,im`.
    fn gauss(&mut self, key: &str, default: i64) -> Result<GaussRational, CatalogError> {
        let v = self.rationals(key, &[default])?;
        match v.as_slice() {
            [re] => Ok(GaussRational::real(re.clone())),
            [re, im] => Ok(GaussRational::new(re.clone(), im.clone())),
            _ => Err(bad(key, "expected `re` or `re,im`")),
        }
    }

    fn text(&mut self, key: &str, default: &str) -> String {
        self.raw(key).unwrap_or_else(|| default.into())
    }

    fn finish(self) -> Result<Params, CatalogError> {
        if let Some(k) = self.params.keys().find(|k| !self.used.contains_key(*k)) {
            return Err(bad(k, "unknown parameter"));
        }
        Ok(self.used)
    }
}

fn g(x: i64) -> GaussRational {
    GaussRational::from_int(x)
}

fn gm(rows: &[&[i64]]) -> GaussMatrix {
    GaussMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| g(x)).collect()).collect()).expect("rectangular")
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn spec(cone: Cone, form: HermitianFormSystem, label: &str) -> SiegelDomainSpec {
    SiegelDomainSpec::new(cone, form, label).expect("catalog shapes agree")
}

/// The product-of-balls Siegel representation: one orthant coordinate per
/// factor, with `H_j` the identity on the `(ℓ_j − 1)`-dimensional block `j`.
pub fn ball_product_spec(lengths: &[usize]) -> Result<SiegelDomainSpec, CatalogError> {
    if lengths.is_empty() || lengths.contains(&0) {
        return Err(bad("lengths", "need positive lengths"));
    }
    let r = lengths.len();
    let m: usize = lengths.iter().map(|l| l - 1).sum();
    let mut comps = Vec::with_capacity(r);
    let mut off = 0;
    for l in lengths {
        let mut h = GaussMatrix::zeros(m, m);
        for i in off..off + l - 1 {
            h.set(i, i, g(1));
        }
        off += l - 1;
        comps.push(h);
    }
    let form = HermitianFormSystem::new(r, m, comps).expect("diagonal");
    let name: Vec<String> = lengths.iter().map(|l| format!("B^{l}")).collect();
    let cone = if r == 1 { Cone::Orthant { k: 1 } } else { Cone::Orthant { k: r } };
    Ok(spec(cone, form, &name.join(" x ")))
}

/// Known values for products of balls, keyed by sorted factor lengths.
const BALL_PRODUCT_VALUES: &[(&[usize], usize, &str)] = &[
    (&[1, 1, 1], 9, "d(B^1 x B^1 x B^1) = 9 = n^2"),
    (&[2, 2], 16, "d(B^2 x B^2) = 16 = n^2"),
    (&[1, 1, 2], 14, "d(B^1 x B^1 x B^2) = 14 = n^2 - 2"),
    (&[2, 3], 23, "d(B^2 x B^3) = 23 = n^2 - 2"),
    (&[1, 1, 1, 1], 12, "d(B^1 x B^1 x B^1 x B^1) = 12 = n^2 - 4"),
    (&[1, 1, 3], 21, "d(B^1 x B^1 x B^3) = 21 = n^2 - 4"),
    (&[2, 4], 32, "d(B^2 x B^4) = 32 = n^2 - 4"),
    (&[1, 2, 2], 19, "d(B^1 x B^2 x B^2) = 19 = n^2 - 6"),
    (&[3, 3], 30, "d(B^3 x B^3) = 30 = n^2 - 6"),
    (&[1, 1, 4], 30, "d(B^1 x B^1 x B^4) = 30 = n^2 - 6"),
    (&[2, 5], 43, "d(B^2 x B^5) = 43 = n^2 - 6"),
];

fn ball_product_expectations(lengths: &[usize]) -> Vec<Expectation> {
    let mut sorted = lengths.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    if let Some((_, v, src)) = BALL_PRODUCT_VALUES.iter().find(|(l, _, _)| *l == sorted.as_slice()) {
        out.push(expect(Check::Total(Relation::Eq, *v), *src));
    }
    if let [l, r] = lengths {
        let n = (l + r) as i64;
        let l = *l as i64;
        let v = 2 * l * l - 2 * n * l + n * n + 2 * n;
        out.push(expect(Check::Total(Relation::Eq, v as usize), "d(B^l x B^(n-l)) = 2l^2 - 2nl + n^2 + 2n"));
    } else if lengths.len() == 1 {
        let n = lengths[0];
        out.push(expect(Check::Total(Relation::Eq, n * n + 2 * n), "d(B^n) = n^2 + 2n"));
    }
    if lengths.len() > 2 {
        let v = ball_product_dim(lengths).expect("positive lengths");
        out.push(expect(Check::Total(Relation::Eq, v), "d is additive over products of balls"));
    }
    out
}

fn check_lorentz_closure(key: &str, v: &[Rational], k: usize) -> Result<(), CatalogError> {
    if v.len() != k {
        return Err(bad(key, format!("expected {k} entries")));
    }
    if !v[0].is_positive() || !(Cone::Lorentz { k }).contains(v, Membership::Closure).expect("length") {
        return Err(bad(key, "need v1 > 0 and v1^2 >= v2^2 + ... + vk^2"));
    }
    Ok(())
}

fn d6_like(cone_k: usize, n_w: usize, label: &str) -> SiegelDomainSpec {
    let mut v = vec![1, 1];
    v.resize(cone_k, 0);
    spec(Cone::Lorentz { k: cone_k }, HermitianFormSystem::scalar(&ints(&v), n_w), label)
}

/// The `s = 1` family with `u = (1, 0, 0)`, `a₁ = 0`, `v₃ = 0`, `a₃ = 1`:
/// `H₁ = diag(1, v₁)`, `H₂ = [[0, a₂], [ā₂, v₂]]`, `H₃ = [[0, 1], [1, 0]]`.
pub fn d6_s1_form(a2: &GaussRational, v1: &Rational, v2: &Rational) -> HermitianFormSystem {
    let h1 = GaussMatrix::diagonal(vec![g(1), v1.clone().into()]);
    let h2 = GaussMatrix::from_rows(vec![vec![g(0), a2.clone()], vec![a2.conj(), v2.clone().into()]]).expect("2x2");
    HermitianFormSystem::new(3, 2, vec![h1, h2, gm(&[&[0, 1], &[1, 0]])]).expect("Hermitian")
}

/// `(|w₁|² + |w₂|², |w₁|² − |w₂|², w̄₁w₂ + w̄₂w₁)`.
pub fn form54() -> HermitianFormSystem {
    HermitianFormSystem::new(3, 2, vec![gm(&[&[1, 0], &[0, 1]]), gm(&[&[1, 0], &[0, -1]]), gm(&[&[0, 1], &[1, 0]])])
        .expect("Hermitian")
}

/// Builds a catalog entry.
pub fn catalog(name: &str, params: &Params) -> Result<CatalogEntry, CatalogError> {
    let mut rd = Reader::new(params);
    let mut expected = Vec::new();
    let mut prevalidated = true;
    let spec = match name {
        "ball" => {
            let n = rd.count("n", 2, 1)?;
            expected = ball_product_expectations(&[n]);
            let mut s = ball_product_spec(&[n])?;
            s.label = format!("B^{n}");
            s
        }
        "ball_product" => {
            let raw = rd.text("lengths", "1,1,3");
            let lengths: Vec<usize> = raw
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| bad("lengths", format!("bad length `{x}`"))))
                .collect::<Result<_, _>>()?;
            expected = ball_product_expectations(&lengths);
            ball_product_spec(&lengths)?
        }
        "T" => {
            let k = rd.count("k", 3, 2)?;
            let known = [(3, 10, "d(T_3) = 10 = n^2 + 1"), (4, 15, "d(T_4) = 15 = n^2 - 1"), (5, 21, "d(T_5) = 21 = n^2 - 4")];
            if let Some((_, v, src)) = known.iter().find(|e| e.0 == k) {
                expected.push(expect(Check::Total(Relation::Eq, *v), *src));
            }
            if k == 5 {
                expected.push(expect(Check::G0(11), "dim g(C_5) = 11 = k^2/2 - k/2 + 1"));
            }
            SiegelDomainSpec::tube(Cone::Lorentz { k }, format!("T_{k}"))
        }
        "orthant_tube" => {
            let k = rd.count("k", 4, 1)?;
            if k == 4 {
                expected.push(expect(Check::Total(Relation::Eq, 12), "d(B^1 x B^1 x B^1 x B^1) = 12 = n^2 - 4"));
            }
            SiegelDomainSpec::tube(Cone::Orthant { k }, format!("(B^1)^{k}"))
        }
        "tube" => {
            let c = rd.text("cone", "Omega3");
            let idx: usize = c
                .strip_prefix("Omega")
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| bad("cone", "expected Omega1..Omega6"))?;
            let cone = Cone::omega(idx).ok_or_else(|| bad("cone", "expected Omega1..Omega6"))?;
            SiegelDomainSpec::tube(cone, format!("tube over Omega_{idx}"))
        }
        "B1xT3" => {
            expected.push(expect(Check::Total(Relation::Eq, 13), "d(B^1 x T_3) = 13 = n^2 - 3"));
            let cone = Cone::product(vec![Cone::Orthant { k: 1 }, Cone::Lorentz { k: 3 }]).expect("two factors");
            SiegelDomainSpec::tube(cone, "B^1 x T_3")
        }
        "D1" | "D2" => {
            let n = rd.count("n", 4, 3)?;
            let second = if name == "D1" { 0 } else { 1 };
            let form = HermitianFormSystem::scalar(&ints(&[1, second]), n - 2);
            if name == "D1" {
                expected.push(expect(Check::Total(Relation::Eq, n * n + 2), "D_1 is biholomorphic to B^1 x B^(n-1), d = n^2 + 2"));
                expected.push(expect(Check::TransitiveOnSamples, "D_1 is biholomorphic to B^1 x B^(n-1), a homogeneous domain"));
            } else {
                expected.push(expect(Check::NotTransitive, "G(Omega_1, (|w|^2, |w|^2)) consists of diag(a, a), so D_2 is not homogeneous"));
            }
            spec(Cone::Orthant { k: 2 }, form, &format!("{name} (n={n})"))
        }
        "D3" => {
            let v = rd.rationals("v", &[1, 0, 0])?;
            if v.len() != 3 || v.iter().any(Signed::is_negative) || v.iter().all(Zero::is_zero) {
                return Err(bad("v", "need three nonnegative entries, not all zero"));
            }
            if v.iter().filter(|x| !x.is_zero()).count() == 1 {
                expected.push(expect(Check::Total(Relation::Eq, 14), "D_3 with one nonzero weight is B^1 x B^1 x B^2, d = 14"));
            }
            spec(Cone::Orthant { k: 3 }, HermitianFormSystem::scalar(&v, 1), "D3")
        }
        "D4" | "PS" => {
            let v = if name == "PS" { ints(&[1, 1, 0]) } else { rd.rationals("v", &[1, 1, 0])? };
            check_lorentz_closure("v", &v, 3)?;
            let interior = Cone::Lorentz { k: 3 }.contains(&v, Membership::Interior).expect("length");
            if interior {
                expected.push(expect(Check::NotTransitive, "for v interior to Omega_3, v is an eigenvector of every element of G(Omega_3, v|w|^2)"));
            } else {
                expected.push(expect(Check::Total(Relation::Eq, 10), "for v on the boundary of Omega_3, D_4 is equivalent to D and d = 10 = n^2 - 6"));
                expected.push(expect(Check::TransitiveOnSamples, "D is a bounded non-symmetric homogeneous domain"));
            }
            let label = if name == "PS" { "PS".to_string() } else { "D4".to_string() };
            spec(Cone::Lorentz { k: 3 }, HermitianFormSystem::scalar(&v, 1), &label)
        }
        "D5" => {
            let variant = rd.text("variant", "113");
            let lengths: &[usize] = match variant.as_str() {
                "113" => &[3, 1, 1],
                "122" => &[2, 2, 1],
                _ => return Err(bad("variant", "expected 113 or 122")),
            };
            expected = ball_product_expectations(lengths);
            let mut s = ball_product_spec(lengths)?;
            s.label = format!("D5 ({})", s.label);
            s
        }
        "D6" => {
            let variant = rd.text("variant", "s4");
            match variant.as_str() {
                "s4" => {
                    expected.push(expect(Check::Total(Relation::Eq, 15), "d(D_6) = 15 for H = (|w|^2, |w|^2, 0)"));
                    expected.push(expect(Check::Dims([3, 4, 7, 0, 1]), "dim g_0 = 7, g_1/2 = 0, g_1 = 1 for H = (|w|^2, |w|^2, 0)"));
                    expected.push(expect(Check::S(4), "s = 4 for H = (|w|^2, |w|^2, 0)"));
                    expected.push(expect(Check::DimGOmegaH(3), "dim G(Omega_3, (|w|^2, |w|^2, 0)) = 3"));
                    expected.push(expect(Check::TransitiveOnSamples, "D_6 with H = (|w|^2, |w|^2, 0) is affinely homogeneous"));
                    d6_like(3, 2, "D6 (s=4)")
                }
                "v" => {
                    let v = rd.rationals("v", &[2, 1, 0])?;
                    check_lorentz_closure("v", &v, 3)?;
                    if (Cone::Lorentz { k: 3 }).contains(&v, Membership::Interior).expect("length") {
                        expected.push(expect(Check::NotTransitive, "for v interior to Omega_3, v is an eigenvector of every element of G(Omega_3, v||w||^2)"));
                    }
                    spec(Cone::Lorentz { k: 3 }, HermitianFormSystem::scalar(&v, 2), "D6 (v||w||^2)")
                }
                "form54" => {
                    expected.push(expect(Check::GHalf(Relation::Eq, 0), "g_1/2 = 0 for H = (|w1|^2+|w2|^2, |w1|^2-|w2|^2, w1'w2+w2'w1)"));
                    spec(Cone::Lorentz { k: 3 }, form54(), "D6 (form54)")
                }
                "s1" => {
                    let a2 = rd.gauss("a2", 0)?;
                    let v1 = rd.rational("v1", 2)?;
                    let v2 = rd.rational("v2", 0)?;
                    if !v1.is_positive() {
                        return Err(bad("v1", "must be positive"));
                    }
                    prevalidated = false;
                    expected.push(expect(Check::GHalf(Relation::Le, 2), "dim g_1/2 <= 2 for D_6 with s = 1"));
                    spec(Cone::Lorentz { k: 3 }, d6_s1_form(&a2, &v1, &v2), "D6 (s=1)")
                }
                _ => return Err(bad("variant", "expected s4, v, form54 or s1")),
            }
        }
        "D6tilde" => {
            let n = rd.count("N", 2, 1)?;
            expected.push(expect(Check::GHalf(Relation::Eq, 0), "g_1/2 = 0 for the domain D~_6"));
            expected.push(expect(Check::G1(1), "dim g_1 = 1 for the domain D~_6"));
            expected.push(expect(Check::DimGOmegaH(3), "dim G(Omega_3, (||w||^2, ||w||^2, 0)) = 3"));
            d6_like(3, n, &format!("D6tilde (N={n})"))
        }
        "D7" => {
            expected.push(expect(Check::Total(Relation::Eq, 22), "d(D_7) = 22 < 31 = n^2 - 5"));
            expected.push(expect(Check::Dims([3, 6, 12, 0, 1]), "dim g_0 = 12 with s = 9 for D_7"));
            expected.push(expect(Check::S(9), "s = 9 for D_7"));
            d6_like(3, 3, "D7")
        }
        "D8" => {
            let v = rd.rationals("v", &[1, 1, 0, 0])?;
            check_lorentz_closure("v", &v, 4)?;
            if v == ints(&[1, 1, 0, 0]) {
                expected.push(expect(Check::G0(6), "dim g_0 = 6 for D_8 with v = (1,1,0,0)"));
                expected.push(expect(Check::S(1), "s = 1 for D_8"));
                expected.push(expect(Check::DimGOmegaH(5), "dim G(Omega_6, v|w|^2) = 5 for v = (1,1,0,0)"));
                expected.push(expect(Check::GHalf(Relation::Eq, 0), "g_1/2 = 0 for the domain D^_8 with N = 1"));
                expected.push(expect(Check::Total(Relation::Le, 16), "d(D_8) <= 16"));
            }
            spec(Cone::Lorentz { k: 4 }, HermitianFormSystem::scalar(&v, 1), "D8")
        }
        "D8hat" => {
            let n = rd.count("N", 1, 1)?;
            if n == 1 {
                expected.push(expect(Check::GHalf(Relation::Eq, 0), "g_1/2 = 0 for the domain D^_8"));
            }
            d6_like(4, n, &format!("D8hat (N={n})"))
        }
        other => return Err(CatalogError::UnknownName(other.into())),
    };
    let params = rd.finish()?;
    Ok(CatalogEntry { name: name.into(), params, spec, prevalidated, expected })
}
