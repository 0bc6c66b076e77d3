//! Exact rational helpers shared by every module.
//!
//! All coordinates, lengths and tolerances are `BigRational`s. The textual
//! form is always `"p/q"` with `q > 0` and `gcd(p, q) = 1`; parsing is more
//! forgiving and also accepts plain integers and finite decimals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub type Q = BigRational;

/// Error raised when a string is not a rational number.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a rational number: {0:?}")]
pub struct ParseRationalError(pub String);

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(q))
}

pub fn half() -> Q {
    ratio(1, 2)
}

pub fn two() -> Q {
    int(2)
}

/// Parses `"p/q"`, `"p"`, or a finite decimal such as `"1.1"`.
pub fn parse(s: &str) -> Result<Q, ParseRationalError> {
    let t = s.trim();
    let err = || ParseRationalError(s.to_string());
    if t.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Q::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() && whole_digits.is_empty() {
            return Err(err());
        }
        if !whole_digits.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{}{}", whole_digits, frac);
        let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| err())? };
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let v = Q::new(numer, denom);
        return Ok(if negative { -v } else { v });
    }
    let p: BigInt = t.parse().map_err(|_| err())?;
    Ok(Q::from_integer(p))
}

/// Canonical `"p/q"` text, always with an explicit denominator.
pub fn format(q: &Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Smallest integer `>= q`.
pub fn ceil_to_u64(q: &Q) -> Option<u64> {
    let c = q.ceil().to_integer();
    u64::try_from(c).ok()
}

pub fn is_positive(q: &Q) -> bool {
    q.is_positive()
}

pub fn min(a: &Q, b: &Q) -> Q {
    if a <= b { a.clone() } else { b.clone() }
}

pub fn max(a: &Q, b: &Q) -> Q {
    if a >= b { a.clone() } else { b.clone() }
}

pub fn midpoint(a: &Q, b: &Q) -> Q {
    (a + b) / two()
}

pub fn one() -> Q {
    Q::one()
}

pub fn zero() -> Q {
    Q::zero()
}

/// Display wrapper producing the canonical text.
pub struct Show<'a>(pub &'a Q);

impl fmt::Display for Show<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_accepted_forms() {
        assert_eq!(parse("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse("7").unwrap(), int(7));
        assert_eq!(parse("1.1").unwrap(), ratio(11, 10));
        assert_eq!(parse("-0.25").unwrap(), ratio(-1, 4));
        assert_eq!(parse(".5").unwrap(), ratio(1, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
        assert!(parse("").is_err());
        assert!(parse(".").is_err());
    }

    #[test]
    fn formats_with_explicit_denominator() {
        assert_eq!(format(&int(1)), "1/1");
        assert_eq!(format(&ratio(-2, 4)), "-1/2");
        assert_eq!(Show(&ratio(3, 2)).to_string(), "3/2");
        assert_eq!(Show(&int(3)).to_string(), "3");
    }
}
