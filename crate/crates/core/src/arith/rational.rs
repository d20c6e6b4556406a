use alloc::format;
use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// `num/den` as a rational.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Renders `r` as `"num/den"`; integers keep the `/1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"num/den"` or a bare integer `"num"`. The result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = || Error::ParseRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den == BigInt::from(0) {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_keeps_sign_and_unit_denominator() {
        assert_eq!(format_rational(&rat(-1, 720)), "-1/720");
        assert_eq!(format_rational(&rat(3, 1)), "3/1");
        assert_eq!(format_rational(&rat(0, 5)), "0/1");
        assert_eq!(format_rational(&rat(2, -4)), "-1/2");
    }

    #[test]
    fn parse_accepts_integers_and_reduces() {
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7, 1));
        assert_eq!(parse_rational(" 1/-2 ").unwrap(), rat(-1, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
