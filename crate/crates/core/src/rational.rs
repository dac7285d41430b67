//! Exact rational values.
//!
//! All invariants in this crate live in [`Rational`], a reduced fraction of
//! arbitrary-precision integers. Values cross text boundaries as `"p/q"`
//! strings (or `"p"` when the denominator is one).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn from_usize(value: usize) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Formats as `"p/q"`, or `"p"` for integers.
pub fn format(value: &Rational) -> String {
    value.to_string()
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.25"` exactly.
pub fn parse(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidParameters(format!("not a rational number: `{text}`"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !whole_digits.chars().all(|c| c.is_ascii_digit())
            || (whole_digits.is_empty() && frac.is_empty())
        {
            return Err(bad());
        }
        let digits = format!("{whole_digits}{frac}");
        let mut numer: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| bad())?
        };
        if negative {
            numer = -numer;
        }
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(numer, denom));
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn is_nonnegative(value: &Rational) -> bool {
    !value.is_negative()
}

pub(crate) mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod serde_opt_str {
    use super::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_some(&super::format(v)),
            None => s.serialize_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse("5/4").unwrap(), rat(5, 4));
        assert_eq!(parse("10/8").unwrap(), rat(5, 4));
        assert_eq!(parse("6").unwrap(), int(6));
        assert_eq!(parse("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse("1.0").unwrap(), int(1));
        assert_eq!(parse("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse(".5").unwrap(), rat(1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "a", "1.2.3", "1/x", "."] {
            assert!(parse(s).is_err(), "{s}");
        }
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format(&rat(10, 8)), "5/4");
        assert_eq!(format(&rat(12, 2)), "6");
        assert_eq!(format(&rat(-3, 6)), "-1/2");
    }

    #[test]
    fn lcm_of_denominators() {
        let v = [rat(1, 4), rat(1, 6), int(3)];
        assert_eq!(common_denominator(v.iter()), BigInt::from(12));
    }
}
