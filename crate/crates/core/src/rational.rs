//! Exact rationals.
//!
//! Values are `num_rational::BigRational`, which keeps every value reduced with a
//! positive denominator. The text form is `p/q`, or `p` when `q = 1`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Canonical text form: lowest terms, no whitespace.
pub fn format(value: &Rational) -> String {
    // BigRational's Display already omits a unit denominator.
    value.to_string()
}

/// Parses `p/q` or `p`. Whitespace and zero denominators are rejected.
pub fn parse(text: &str) -> Result<Rational> {
    let bad = |message: &str| Error::parse(0, "rational", format!("{message}: {text:?}"));
    if text.is_empty() || text.chars().any(char::is_whitespace) {
        return Err(bad("expected p/q without whitespace"));
    }
    let (numer, denom) = match text.split_once('/') {
        Some((p, q)) => (p, q),
        None => (text, "1"),
    };
    let numer = BigInt::from_str(numer).map_err(|_| bad("bad numerator"))?;
    let denom = BigInt::from_str(denom).map_err(|_| bad("bad denominator"))?;
    if denom.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(numer, denom))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_is_lowest_terms() {
        assert_eq!(format(&ratio(4, 10)), "2/5");
        assert_eq!(format(&ratio(-6, 3)), "-2");
        assert_eq!(format(&zero()), "0");
        assert_eq!(parse("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse("-7").unwrap(), int(-7));
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse("1 /2").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("").is_err());
        assert!(parse("a/b").is_err());
    }
}
