//! Small helpers around exact integers and rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Render a rational as `p/q` (always with a denominator).
pub fn fmt_ratio(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parse `p/q` or a bare integer.
pub fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n! / ∏ parts_i!`.
pub fn multinomial(parts: &[u64]) -> BigInt {
    let n: u64 = parts.iter().sum();
    parts
        .iter()
        .fold(factorial(n), |acc, &p| acc / factorial(p))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    multinomial(&[k, n - k])
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    a.abs().gcd(&b.abs())
}

/// Convert an integral rational to `i64`, if it is one.
pub fn to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn sign(q: &BigRational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_round_trip() {
        let q = ratio(-6, 4);
        assert_eq!(fmt_ratio(&q), "-3/2");
        assert_eq!(parse_ratio("-3/2").unwrap(), q);
        assert_eq!(fmt_ratio(&int(5)), "5/1");
        assert_eq!(parse_ratio("7").unwrap(), int(7));
        assert!(parse_ratio("1/0").is_none());
    }

    #[test]
    fn combinatorial_numbers() {
        assert_eq!(multinomial(&[3, 0, 3]), BigInt::from(20));
        assert_eq!(multinomial(&[1, 1, 2]), BigInt::from(12));
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(factorial(6), BigInt::from(720));
    }
}
