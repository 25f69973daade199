//! Exact rational scalars. Everything in this crate is computed over
//! arbitrary-precision rationals; no floating point is used anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The coefficient field: rationals with arbitrary-precision integer parts.
pub type Rat = BigRational;

/// The integer `n` as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The fraction `p/q` (exact; panics on `q == 0`).
pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Exact factorial, as a rational (used by exponential/Todd expansions).
pub fn factorial(n: u32) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rat::from_integer(acc)
}

/// `true` when the rational is an integer.
pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// The rational as an `i64`, when it is an integer that fits.
pub fn to_i64(x: &Rat) -> Option<i64> {
    if !is_integer(x) {
        return None;
    }
    let n = x.numer();
    if n.abs() > BigInt::from(i64::MAX) {
        return None;
    }
    let (sign, digits) = n.to_u64_digits();
    let mag = *digits.first().unwrap_or(&0) as i64;
    match sign {
        num_bigint::Sign::Minus => Some(-mag),
        _ => Some(mag),
    }
}

/// `(-1)^k`.
pub fn sign_pow(k: u32) -> Rat {
    if k.is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    }
}

/// Renders a rational the way reports expect: `"p/q"`, or `"n"` when integral.
pub fn display(x: &Rat) -> String {
    if x.is_zero() {
        "0".to_string()
    } else {
        x.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), rat(1));
        assert_eq!(factorial(1), rat(1));
        assert_eq!(factorial(4), rat(24));
    }

    #[test]
    fn display_matches_report_convention() {
        assert_eq!(display(&rat(7)), "7");
        assert_eq!(display(&rat(-3)), "-3");
        assert_eq!(display(&frac(3, 2)), "3/2");
        assert_eq!(display(&frac(-1, 2)), "-1/2");
        assert_eq!(display(&frac(4, 2)), "2");
        assert_eq!(display(&rat(0)), "0");
    }

    #[test]
    fn i64_round_trip() {
        assert_eq!(to_i64(&rat(-42)), Some(-42));
        assert_eq!(to_i64(&frac(1, 2)), None);
    }
}
