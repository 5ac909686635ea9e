//! Exact rationals and the small combinatorial functions used everywhere else.
//!
//! [`Rational`] is `num_rational::BigRational`: always reduced, positive
//! denominator, and its `Display` already prints `p/q` or `p` when `q = 1`,
//! which is the serialization format used by the cache, the report and the CLI.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_biguint(n: BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact division that reports a zero divisor instead of panicking.
pub fn checked_div(num: &Rational, den: &Rational) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(num / den)
}

/// Canonical text form, `"p/q"` in lowest terms or `"p"` when `q = 1`.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let r = Rational::from_str(s).ok()?;
    Some(r)
}

pub fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// `(2d-1)!! = 1 * 3 * ... * (2d-1)`, with `(-1)!! = 1` at `d = 0`.
pub fn double_factorial_odd(d: u64) -> BigUint {
    (1..=d).fold(BigUint::one(), |acc, j| acc * (2 * j - 1))
}

/// `(sum parts)! / prod parts_i!`, built as a product of binomials so it
/// never leaves the integers.
pub fn multinomial(parts: &[u64]) -> BigUint {
    let mut acc = BigUint::one();
    let mut total = 0u64;
    for &p in parts {
        total += p;
        acc *= binomial(total, p);
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Rising factorial `x (x+1) ... (x+k-1)`.
pub fn rising(x: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (x + i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigUint::from(1u32));
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(factorial(9), BigUint::from(362880u32));
        // beyond u64
        assert_eq!(factorial(25).to_string(), "15511210043330985984000000");
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial_odd(0), BigUint::from(1u32));
        assert_eq!(double_factorial_odd(2), BigUint::from(3u32));
        assert_eq!(double_factorial_odd(4), BigUint::from(105u32));
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(&[2, 1]), BigUint::from(3u32));
        assert_eq!(multinomial(&[0, 0, 0]), BigUint::from(1u32));
        assert_eq!(multinomial(&[2, 2]), BigUint::from(6u32));
        assert_eq!(multinomial(&[]), BigUint::from(1u32));
    }

    #[test]
    fn multinomial_times_factorials_is_total_factorial() {
        // every composition with at most 3 parts and total <= 30
        for a in 0..=30u64 {
            for b in 0..=(30 - a) {
                for c in 0..=(30 - a - b) {
                    let lhs = multinomial(&[a, b, c]) * factorial(a) * factorial(b) * factorial(c);
                    assert_eq!(lhs, factorial(a + b + c));
                }
            }
        }
    }

    #[test]
    fn rational_text_format() {
        assert_eq!(format_rational(&ratio(-3, 2)), "-3/2");
        assert_eq!(format_rational(&ratio(8, 2)), "4");
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
        assert_eq!(parse_rational("-3/2"), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("4"), Some(rat(4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(checked_div(&rat(1), &rat(0)), Err(Error::DivisionByZero)));
        assert_eq!(checked_div(&rat(3), &rat(6)).unwrap(), ratio(1, 2));
    }
}
