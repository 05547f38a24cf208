//! Scalar abstraction shared by the matrix and polynomial code.
//!
//! Everything in this crate is written against [`Scalar`] so the same
//! elimination and basis-conversion routines run over exact rationals and
//! over `f64`/`f32`. Only the rational instantiation is used for anything
//! that ends up in a certificate; the float instantiations exist for
//! diagnostics.

use std::fmt::Debug;
use std::ops::{AddAssign, Neg, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always held in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Minimal ring interface used by the Chebyshev expansion kernel.
///
/// The kernel only adds, subtracts and scales by small integers, so it can
/// run over `BigInt` directly once denominators are cleared.
pub trait Ring:
    Clone + Debug + num_traits::Num + Neg<Output = Self> + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self>
{
    fn from_i64(v: i64) -> Self;
}

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl Ring for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Ring for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Ring for f32 {
    fn from_i64(v: i64) -> Self {
        v as f32
    }
}

/// A field element usable as a matrix or polynomial coefficient.
pub trait Scalar: Ring + PartialOrd + Signed + Send + Sync {
    /// `true` when arithmetic is exact; elimination then pivots on the
    /// first nonzero entry instead of the largest one.
    const EXACT: bool;

    fn from_bigint(v: &BigInt) -> Self;

    fn to_f64(&self) -> f64;

    /// Expand `Σ a_k T_k(y)` (dense, index = k) into monomial coefficients.
    ///
    /// The default runs the ring kernel over `Self`; the rational
    /// instantiation clears denominators and runs it over `BigInt`.
    fn chebyshev_to_monomial(coeffs: &[Self]) -> Vec<Self> {
        crate::cheb::expand_chebyshev(coeffs)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn chebyshev_to_monomial(coeffs: &[Self]) -> Vec<Self> {
        let denom = coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        crate::cheb::expand_chebyshev(&scaled)
            .into_iter()
            .map(|n| BigRational::new(n, denom.clone()))
            .collect()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_bigint(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_bigint(v: &BigInt) -> Self {
        v.to_f32().unwrap_or(f32::NAN)
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

/// Canonical text form `"num/den"`; zero is `"0/1"`, integers keep `/1`.
pub fn format_rational(v: &Rational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Parse `"num/den"` or a bare integer, reducing to lowest terms.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Parse a comma-separated list of rationals, e.g. `"1/2,3,-1/4"`.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_rational)
        .collect()
}

/// Serde adapter for `"num/den"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for vectors of `"num/den"` strings.
pub mod serde_rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&format_rational(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        items
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}
