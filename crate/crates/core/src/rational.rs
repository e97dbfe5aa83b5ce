//! Exact rational scalars and small formatting helpers.
//!
//! Everything downstream works with [`Int`] (arbitrary-precision integer)
//! and [`Rational`] (always kept reduced, denominator positive). The helpers
//! here are deliberately dull: parsing `p/q` text, printing decimals by long
//! division, and locating the decimal magnitude of a positive rational —
//! all without ever touching floating point.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Int = BigInt;

/// Arbitrary-precision rational, reduced, with positive denominator.
pub type Rational = BigRational;

/// `10^e` as an [`Int`].
pub fn pow10(e: u32) -> Int {
    Int::from(10u32).pow(e)
}

/// Parses `"p/q"` or a bare integer `"p"` into a [`Rational`].
///
/// The denominator must be nonzero; the result is reduced and sign-normalized.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_err = || Error::Parse {
        input: s.to_string(),
        expected: "a rational `p/q` or integer `p`",
    };
    let (num_text, den_text) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = Int::from_str(num_text).map_err(|_| parse_err())?;
    let den = Int::from_str(den_text).map_err(|_| parse_err())?;
    if den.is_zero() {
        return Err(Error::Parse {
            input: s.to_string(),
            expected: "a rational with nonzero denominator",
        });
    }
    Ok(Rational::new(num, den))
}

/// Formats a rational as `"p/q"`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Exact decimal expansion of `r`, truncated toward zero to `digits`
/// fractional digits, computed by long division.
pub fn decimal_string(r: &Rational, digits: usize) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let abs = r.abs();
    let int_part = abs.numer() / abs.denom();
    let mut rem = abs.numer() - &int_part * abs.denom();
    let mut frac = String::with_capacity(digits);
    let ten = Int::from(10u32);
    for _ in 0..digits {
        rem *= &ten;
        let d = &rem / abs.denom();
        rem -= &d * abs.denom();
        frac.push(char::from(b'0' + d.to_u8().expect("long-division digit fits in u8")));
    }
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

/// Number of decimal digits of a positive integer.
fn digit_count(n: &Int) -> i64 {
    debug_assert!(n.is_positive());
    n.to_string().len() as i64
}

/// `floor(log10 r)` for a positive rational, computed exactly.
///
/// Errors if `r <= 0`.
pub fn floor_log10(r: &Rational) -> Result<i64> {
    if !r.is_positive() {
        return Err(Error::OutOfRange {
            what: "floor_log10 argument",
            range: "(0, \u{221e})",
            value: r.to_string(),
        });
    }
    let p = r.numer();
    let q = r.denom();
    // p/q lies in [10^(e0-1), 10^(e0+1)) for e0 = digits(p) - digits(q),
    // so the floor is e0 or e0 - 1; one exact comparison decides.
    let e0 = digit_count(p) - digit_count(q);
    let ge = if e0 >= 0 {
        *p >= q * pow10(e0 as u32)
    } else {
        p * pow10((-e0) as u32) >= *q
    };
    Ok(if ge { e0 } else { e0 - 1 })
}

/// Convenience: builds `p/q` from machine integers (test and CLI helper).
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(Int::from(p), Int::from(q))
}

/// True if `r` is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for text in ["34/55", "-3/7", "0/9", "17", "-1", "1/1000000000000000000000"] {
            let r = parse_rational(text).unwrap();
            let back = parse_rational(&format_rational(&r)).unwrap();
            assert_eq!(r, back, "round trip through {text}");
        }
        assert_eq!(parse_rational(" 6/4 ").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("7/-2").unwrap(), ratio(-7, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        for text in ["", "a/b", "1/0", "1/2/3", "3.5"] {
            assert!(parse_rational(text).is_err(), "{text:?} should not parse");
        }
    }

    #[test]
    fn decimal_truncates_toward_zero() {
        assert_eq!(decimal_string(&ratio(7, 12), 6), "0.583333");
        assert_eq!(decimal_string(&ratio(3, 5), 4), "0.6000");
        assert_eq!(decimal_string(&ratio(-7, 12), 3), "-0.583");
        assert_eq!(decimal_string(&ratio(22, 7), 5), "3.14285");
        assert_eq!(decimal_string(&ratio(5, 1), 0), "5");
    }

    #[test]
    fn floor_log10_exact_at_powers() {
        assert_eq!(floor_log10(&ratio(1, 1000)).unwrap(), -3);
        assert_eq!(floor_log10(&ratio(999, 1000)).unwrap(), -1);
        assert_eq!(floor_log10(&ratio(1, 1)).unwrap(), 0);
        assert_eq!(floor_log10(&ratio(9, 1)).unwrap(), 0);
        assert_eq!(floor_log10(&ratio(10, 1)).unwrap(), 1);
        assert_eq!(floor_log10(&ratio(1, 680625)).unwrap(), -6);
        assert!(floor_log10(&ratio(0, 1)).is_err());
        assert!(floor_log10(&ratio(-3, 1)).is_err());
    }
}
