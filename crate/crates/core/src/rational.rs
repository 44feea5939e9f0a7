//! Exact integer and rational helpers shared across the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rational = BigRational;

/// Builds `numer / denom` in lowest terms. Panics on a zero denominator.
pub fn ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Rational {
    BigRational::new(numer.into(), denom.into())
}

pub fn from_int(value: impl Into<BigInt>) -> Rational {
    BigRational::from_integer(value.into())
}

/// Canonical `"p/q"` form: lowest terms, positive denominator, and the
/// denominator is always written, even when it is one.
pub fn format_ratio(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses the canonical `"p/q"` form. Plain integers are accepted as `q = 1`.
pub fn parse_ratio(text: &str) -> Option<Rational> {
    let (numer, denom) = match text.split_once('/') {
        Some((p, q)) => (
            p.trim().parse::<BigInt>().ok()?,
            q.trim().parse::<BigInt>().ok()?,
        ),
        None => (text.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if denom.is_zero() {
        return None;
    }
    Some(BigRational::new(numer, denom))
}

pub fn floor_div(numer: &BigInt, denom: &BigInt) -> BigInt {
    num_integer::Integer::div_floor(numer, denom)
}

/// Smallest integer `a` with `a >= value` (or `a > value` when `strict`).
pub fn ceil_bound(value: &Rational, strict: bool) -> BigInt {
    let ceil = value.ceil().to_integer();
    if strict && value.is_integer() {
        ceil + 1
    } else {
        ceil
    }
}

/// Largest integer `a` with `a <= value` (or `a < value` when `strict`).
pub fn floor_bound(value: &Rational, strict: bool) -> BigInt {
    let floor = value.floor().to_integer();
    if strict && value.is_integer() {
        floor - 1
    } else {
        floor
    }
}

pub fn is_negative(value: &BigInt) -> bool {
    value.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_always_has_denominator() {
        assert_eq!(format_ratio(&ratio(8, 18)), "4/9");
        assert_eq!(format_ratio(&ratio(-4, 2)), "-2/1");
        assert_eq!(format_ratio(&ratio(3, -6)), "-1/2");
        assert_eq!(format_ratio(&from_int(0)), "0/1");
    }

    #[test]
    fn parse_accepts_canonical_and_integers() {
        assert_eq!(parse_ratio("4/9"), Some(ratio(4, 9)));
        assert_eq!(parse_ratio("-2/1"), Some(from_int(-2)));
        assert_eq!(parse_ratio("7"), Some(from_int(7)));
        assert_eq!(parse_ratio("1/0"), None);
        assert_eq!(parse_ratio("x/2"), None);
    }

    #[test]
    fn integer_rounding_respects_strictness() {
        assert_eq!(ceil_bound(&ratio(1, 3), false), BigInt::from(1));
        assert_eq!(ceil_bound(&from_int(2), false), BigInt::from(2));
        assert_eq!(ceil_bound(&from_int(2), true), BigInt::from(3));
        assert_eq!(floor_bound(&ratio(-1, 3), false), BigInt::from(-1));
        assert_eq!(floor_bound(&from_int(-1), true), BigInt::from(-2));
    }
}
