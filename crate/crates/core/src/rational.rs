//! Exact rational helpers shared by every module.
//!
//! All realizability arithmetic is done in [`Q`] (arbitrary precision). The
//! text form is `p/q` in lowest terms, or a bare integer when `q = 1`; the
//! parser also accepts terminating decimals such as `3.1`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision rational number.
pub type Q = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse rational from {0:?}")]
pub struct ParseRationalError(pub String);

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn half() -> Q {
    q(1, 2)
}

/// Formats as `p/q`, or `p` for integers.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(text: &str) -> Result<Q, ParseRationalError> {
    let s = text.trim();
    let err = || ParseRationalError(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        let int_val = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(int_digits).map_err(|_| err())?
        };
        let frac_val = BigInt::from_str(frac_part).map_err(|_| err())?;
        let scale = num_traits::pow(BigInt::from(10), frac_part.len());
        let mag = Q::new(int_val * &scale + frac_val, scale);
        return Ok(if negative { -mag } else { mag });
    }
    BigInt::from_str(s).map(Q::from_integer).map_err(|_| err())
}

/// Midpoint of two rationals.
pub fn midpoint(a: &Q, b: &Q) -> Q {
    (a + b) / qi(2)
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

/// Serde adapter storing a rational as its `p/q` string.
pub mod serde_q {
    use super::{format_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Q>`.
pub mod serde_q_vec {
    use super::{format_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        xs.iter().map(format_q).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_q(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse_q("9/2").unwrap(), q(9, 2));
        assert_eq!(parse_q("4").unwrap(), qi(4));
        assert_eq!(parse_q("3.1").unwrap(), q(31, 10));
        assert_eq!(parse_q("-0.5").unwrap(), q(-1, 2));
        assert_eq!(parse_q(" 13.3 ").unwrap(), q(133, 10));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
        assert!(parse_q("1.").is_err());
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format_q(&q(18, 4)), "9/2");
        assert_eq!(format_q(&q(8, 2)), "4");
        assert_eq!(format_q(&q(-3, 6)), "-1/2");
    }
}
