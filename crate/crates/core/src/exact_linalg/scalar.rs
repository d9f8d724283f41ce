use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Builds the rational `num / den`.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"p/q"` or `"-p/q"` with surrounding whitespace allowed.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).ok()?;
    let den = BigInt::from_str(den).ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The scalar operations the elimination routines need.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    fn from_int(n: i64) -> Self;
    /// Multiplication by a real scalar.
    fn scale_real(&self, r: &Rational) -> Self;
    /// Coordinates over the rationals: `[x]` for a rational, `[re, im]` for a
    /// Gaussian rational.
    fn real_coords(&self) -> Vec<Rational>;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_int(n: i64) -> Self {
        int(n)
    }
    fn scale_real(&self, r: &Rational) -> Self {
        self * r
    }
    fn real_coords(&self) -> Vec<Rational> {
        vec![self.clone()]
    }
}

/// A Gaussian rational `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussRational { re, im: Zero::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(int(n))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRational { re: Zero::zero(), im: One::one() }
    }

    pub fn conj(&self) -> Self {
        GaussRational { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|² = re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussRational { re: &self.re * r, im: &self.im * r }
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            write!(f, "{}", format_rational(&self.re))
        } else if Zero::is_zero(&self.re) {
            write!(f, "{}i", format_rational(&self.im))
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", format_rational(&self.re), format_rational(&-&self.im))
        } else {
            write!(f, "{}+{}i", format_rational(&self.re), format_rational(&self.im))
        }
    }
}

impl From<Rational> for GaussRational {
    fn from(re: Rational) -> Self {
        GaussRational::real(re)
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, o: &GaussRational) -> GaussRational {
        GaussRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, o: &GaussRational) -> GaussRational {
        GaussRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, o: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational { re: -&self.re, im: -&self.im }
    }
}

impl Field for GaussRational {
    fn zero() -> Self {
        GaussRational::default()
    }
    fn one() -> Self {
        GaussRational::from_int(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!Zero::is_zero(&n), "inverse of zero");
        GaussRational { re: &self.re / &n, im: -&self.im / &n }
    }
    fn from_int(n: i64) -> Self {
        GaussRational::from_int(n)
    }
    fn scale_real(&self, r: &Rational) -> Self {
        self.scale(r)
    }
    fn real_coords(&self) -> Vec<Rational> {
        vec![self.re.clone(), self.im.clone()]
    }
}

#[derive(Serialize, Deserialize)]
struct GaussWire {
    re: String,
    im: String,
}

impl Serialize for GaussRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GaussWire { re: format_rational(&self.re), im: format_rational(&self.im) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = GaussWire::deserialize(d)?;
        let re = parse_rational(&w.re)
            .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{}`", w.re)))?;
        let im = parse_rational(&w.im)
            .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{}`", w.im)))?;
        Ok(GaussRational { re, im })
    }
}

/// Serde helpers for rationals carried as `"p/q"` strings.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`")))
    }
}

/// Serde helpers for vectors of rationals carried as strings.
pub mod rational_vec_string {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(format_rational).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|s| {
                parse_rational(s)
                    .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`")))
            })
            .collect()
    }
}
