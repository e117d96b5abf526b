//! Exact rational scalars.
//!
//! `Rational` is `num_rational::BigRational`, which is always kept in lowest
//! terms with a positive denominator. This module adds the text conventions
//! used by the golden files and a few helpers that the rest of the crate needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{usage, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `p/q`, always with an explicit denominator.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `p/q`, `p`, or a plain decimal integer with sign.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .or_else(|_| usage(format!("cannot parse integer {t:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return usage(format!("zero denominator in {s:?}"));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Comma-separated list of rationals, e.g. `"1,-2/3,0"`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

/// Exact `k`-th root of a rational, if it exists in Q.
pub fn rational_root(x: &Rational, k: u32) -> Option<Rational> {
    if k == 0 {
        return None;
    }
    if x.is_negative() {
        if k.is_multiple_of(2) {
            return None;
        }
        return rational_root(&-x, k).map(|r| -r);
    }
    let n = integer_root(x.numer(), k)?;
    let d = integer_root(x.denom(), k)?;
    Some(Rational::new(n, d))
}

fn integer_root(x: &BigInt, k: u32) -> Option<BigInt> {
    let r = x.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *x).then_some(r)
}

/// Least common multiple of a slice of positive integers.
pub fn lcm_all(xs: &[u64]) -> u64 {
    xs.iter().fold(1u64, |acc, &x| acc.lcm(&x))
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let x = rat(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&x), "-3/2");
        assert_eq!(format_rational(&Rational::zero()), "0/1");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3/16", "-27/16384", "5/1", "0/1"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn roots() {
        assert_eq!(rational_root(&rat(27, 8), 3), Some(rat(3, 2)));
        assert_eq!(rational_root(&rat(-27, 8), 3), Some(rat(-3, 2)));
        assert_eq!(rational_root(&rat(2, 1), 2), None);
        assert_eq!(rational_root(&rat(-4, 1), 2), None);
    }
}
