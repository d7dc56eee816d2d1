//! Exact rational helpers.
//!
//! Values are carried as [`Rational`] (arbitrary precision). Hot loops work on
//! integer numerators over a shared denominator and only build a `Rational`
//! when a result leaves the loop.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Build `num/den` from machine integers.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_u128(num: u128, den: u128) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(q: &Rational) -> f64 {
    // Ratio::to_f64 handles big numerators/denominators without overflow.
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Round a real to the nearest multiple of `1/den`, ties away from zero.
pub fn from_f64_rounded(x: f64, den: u64) -> Result<Rational> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("cannot represent {x} as a rational")));
    }
    if den == 0 {
        return Err(Error::Domain("denominator must be positive".into()));
    }
    let scaled = x * den as f64;
    let num = scaled.round(); // f64::round is half-away-from-zero
    let num = BigInt::from(num as i128);
    Ok(Rational::new(num, BigInt::from(den)))
}

/// Parse `"a/b"`, `"a"`, or a decimal such as `"0.0709"`.
///
/// Decimals are exact unless `denominator` is given, in which case they are
/// rounded half away from zero onto that grid.
pub fn parse(s: &str, denominator: Option<u64>) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Input(format!("cannot parse rational {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Input(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let mut n: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            n = -n;
        }
        let exact = Rational::new(n, BigInt::from(10u32).pow(frac.len() as u32));
        return Ok(match denominator {
            Some(den) => round_to_grid(&exact, den),
            None => exact,
        });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Round an exact rational onto the grid `Z/den`, ties away from zero.
pub fn round_to_grid(q: &Rational, den: u64) -> Rational {
    let den = BigInt::from(den);
    let scaled = q * Rational::from_integer(den.clone());
    let twice: BigInt = scaled.numer() * 2;
    let d2: BigInt = scaled.denom() * 2;
    // floor((2p + q) / 2q) for positives, mirrored for negatives
    let num = if scaled.is_negative() {
        -((-twice + scaled.denom()).div_floor(&d2))
    } else {
        (twice + scaled.denom()).div_floor(&d2)
    };
    Rational::new(num, den)
}

pub fn display(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Serialized `{"num": .., "den": ..}` form used by the JSON file formats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: i128,
    pub den: i128,
}

impl RationalJson {
    pub fn from_rational(q: &Rational) -> Result<Self> {
        let num = q.numer().to_i128();
        let den = q.denom().to_i128();
        match (num, den) {
            (Some(num), Some(den)) => Ok(Self { num, den }),
            _ => Err(Error::Input(format!("{} does not fit the JSON rational form", display(q)))),
        }
    }

    pub fn to_rational(&self) -> Result<Rational> {
        if self.den == 0 {
            return Err(Error::Input("zero denominator".into()));
        }
        Ok(Rational::new(BigInt::from(self.num), BigInt::from(self.den)))
    }
}

/// Serde adapter writing a rational as the string `"num/den"`.
pub mod serde_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&display(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse(&raw, None).map_err(serde::de::Error::custom)
    }
}
