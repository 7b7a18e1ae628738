//! Exact arithmetic helpers shared across modules.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication.
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rational_from_uint(value: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(value.clone()))
}

/// Renders a rational as `p/q`, always with an explicit denominator.
pub fn format_ratio(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_ratio(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Smallest integer `>= value`.
pub fn ceil_to_int(value: &BigRational) -> BigInt {
    value.ceil().to_integer()
}

pub fn gcd_slice(values: &[i64]) -> i64 {
    values.iter().fold(0i64, |acc, v| acc.gcd(v))
}

/// Divides out the content of an integer vector. The zero vector is
/// returned unchanged.
pub fn primitive(values: &[i64]) -> Vec<i64> {
    let g = gcd_slice(values);
    if g == 0 {
        return values.to_vec();
    }
    values.iter().map(|v| v / g).collect()
}

pub fn is_integer(value: &BigRational) -> bool {
    value.is_integer()
}

pub fn abs_big(value: &BigInt) -> BigInt {
    value.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(14, 4), BigUint::from(1001u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
    }

    #[test]
    fn binomial_matches_pascal() {
        for n in 1..40u64 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn ratio_round_trip() {
        let r = rational(-6, 4);
        assert_eq!(format_ratio(&r), "-3/2");
        assert_eq!(parse_ratio("-3/2"), Some(r));
        assert_eq!(parse_ratio("7"), Some(rational(7, 1)));
        assert_eq!(parse_ratio("1/0"), None);
    }

    #[test]
    fn primitive_divides_content() {
        assert_eq!(primitive(&[4, -6, 2]), vec![2, -3, 1]);
        assert_eq!(primitive(&[0, 0]), vec![0, 0]);
    }
}
