//! Exact arithmetic over the Gaussian rationals Q(i).
//!
//! Every quantity in this crate — group matrix entries, form coefficients,
//! change-of-basis tables — is a `GaussianRational`. There is no floating
//! point anywhere; both components are arbitrary-precision rationals kept in
//! lowest terms with positive denominator (`num::BigRational` guarantees the
//! normal form on construction).

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

/// An exact element a + b·i of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// Builds (a/b) + (c/d)·i. Panics if b or d is zero.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(a), BigInt::from(b)),
            BigRational::new(BigInt::from(c), BigInt::from(d)),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// |x|² = re² + im², an ordinary rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact reciprocal: conjugate over squared modulus.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self::new(&self.re / &n, -&self.im / &n))
    }

    /// True when the value is a rational integer divisible by 2.
    pub fn is_even_integer(&self) -> bool {
        self.im.is_zero() && self.re.is_integer() && self.re.numer().is_even()
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        &self + &rhs
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        &self - &rhs
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        &self * &rhs
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl Add<&GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        &self + rhs
    }
}

impl Sub<&GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        &self - rhs
    }
}

impl Mul<&GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        &self * rhs
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

fn ratio_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form: "2", "-3/4", "i", "-i/2", "1/2+1/2*i", "2-3*i".
///
/// A pure imaginary with numerator ±1 prints in the short "i/q" style; any
/// imaginary part accompanying a real part prints as an explicit "p/q*i"
/// coefficient. The parser accepts both styles everywhere, so round-trips
/// are exact.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", ratio_str(&self.re));
        }
        if self.re.is_zero() {
            if self.im.numer().abs().is_one() {
                let sign = if self.im.is_negative() { "-" } else { "" };
                if self.im.denom().is_one() {
                    return write!(f, "{sign}i");
                }
                return write!(f, "{sign}i/{}", self.im.denom());
            }
            return write!(f, "{}*i", ratio_str(&self.im));
        }
        let connector = if self.im.is_negative() { "" } else { "+" };
        write!(f, "{}{}{}*i", ratio_str(&self.re), connector, ratio_str(&self.im))
    }
}

fn parse_unsigned_ratio(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits_only = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits_only(numer) {
        return Err(bad());
    }
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = match denom {
        Some(d) => {
            if !digits_only(d) {
                return Err(bad());
            }
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            d
        }
        None => BigInt::one(),
    };
    Ok(BigRational::new(numer, denom))
}

enum Term {
    Real(BigRational),
    Imag(BigRational),
}

fn parse_term(term: &str) -> Result<Term> {
    let (negative, body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(Error::Parse(format!("empty term in `{term}`")));
    }
    let apply = |r: BigRational| if negative { -r } else { r };
    if body == "i" {
        return Ok(Term::Imag(apply(BigRational::one())));
    }
    if let Some(den) = body.strip_prefix("i/") {
        let r = parse_unsigned_ratio(den)?;
        if !r.is_integer() || r.is_zero() {
            return Err(Error::Parse(format!("invalid denominator in `{term}`")));
        }
        return Ok(Term::Imag(apply(BigRational::new(
            BigInt::one(),
            r.numer().clone(),
        ))));
    }
    if let Some(coeff) = body.strip_suffix("*i") {
        return Ok(Term::Imag(apply(parse_unsigned_ratio(coeff)?)));
    }
    Ok(Term::Real(apply(parse_unsigned_ratio(body)?)))
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        // Split into at most two signed terms; signs occur only at term starts.
        let mut split_at = None;
        for (idx, ch) in s.char_indices().skip(1) {
            if ch == '+' || ch == '-' {
                if split_at.is_some() {
                    return Err(Error::Parse(format!("too many terms in `{s}`")));
                }
                split_at = Some(idx);
            }
        }
        let terms: Vec<&str> = match split_at {
            Some(idx) => vec![&s[..idx], &s[idx..]],
            None => vec![s],
        };
        let mut re: Option<BigRational> = None;
        let mut im: Option<BigRational> = None;
        for t in terms {
            match parse_term(t)? {
                Term::Real(r) => {
                    if re.replace(r).is_some() {
                        return Err(Error::Parse(format!("duplicate real term in `{s}`")));
                    }
                }
                Term::Imag(r) => {
                    if im.replace(r).is_some() {
                        return Err(Error::Parse(format!("duplicate imaginary term in `{s}`")));
                    }
                }
            }
        }
        Ok(GaussianRational::new(
            re.unwrap_or_else(BigRational::zero),
            im.unwrap_or_else(BigRational::zero),
        ))
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
