//! Shared helpers for exact rational arithmetic.
//!
//! All quantitative results in this crate are exact: probabilities, linear
//! program values, and dual multipliers are arbitrary-precision rationals,
//! never floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// The exact number type used throughout the crate.
pub type Rational = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Convenience constructor for small integers as rationals.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// 10^exp as a big integer.
pub fn pow10(exp: u32) -> BigInt {
    BigInt::from(10u8).pow(exp)
}

/// 10^-exp as a rational.
pub fn pow10_inv(exp: u32) -> Rational {
    Rational::new(BigInt::one(), pow10(exp))
}

/// Parses `"p/q"` or `"p"` into an exact rational. Whitespace around the
/// parts is tolerated; anything else is rejected.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let malformed = || Error::MalformedRational {
        input: s.to_string(),
    };
    let mut parts = s.splitn(2, '/');
    let numer: BigInt = parts
        .next()
        .ok_or_else(malformed)?
        .trim()
        .parse()
        .map_err(|_| malformed())?;
    let denom: BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| malformed())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(malformed());
    }
    Ok(Rational::new(numer, denom))
}

/// True iff `r` lies in the closed unit interval.
pub fn in_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

/// Rounds `r` to the nearest multiple of 10^-digits (ties toward +inf).
/// Used to keep long iterative computations from growing unbounded
/// denominators; the introduced error is at most 10^-digits / 2.
pub fn round_to_digits(r: &Rational, digits: u32) -> Rational {
    let scale = pow10(digits);
    let scaled = r * Rational::from_integer(scale.clone()) + rat(1, 2);
    Rational::new(scaled.floor().to_integer(), scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("5/2").unwrap(), rat(5, 2));
        assert_eq!(parse_rational("-3").unwrap(), rat_int(-3));
        assert_eq!(parse_rational(" 1 / 4 ").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/2/3").is_err());
    }

    #[test]
    fn rounding_is_within_half_ulp() {
        let r = rat(1, 3);
        let rounded = round_to_digits(&r, 4);
        assert_eq!(rounded, rat(3333, 10000));
        let diff = (&r - &rounded).abs();
        assert!(diff <= rat(1, 20000));
        // Exact multiples round to themselves.
        assert_eq!(round_to_digits(&rat(7, 10), 3), rat(7, 10));
    }
}
