//! Exact rationals. `BigRational` keeps values in lowest terms with a
//! positive denominator; its `Display` prints `p/q`, or `p` when q = 1.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use num_rational::BigRational as Rational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn from_counts(num: usize, den: usize) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p/q`, `p`, or a signed integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| num_integer::Integer::lcm(&acc, v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_lowest_terms() {
        assert_eq!(ratio(105, 168).to_string(), "5/8");
        assert_eq!(ratio(4, 2).to_string(), "2");
        assert_eq!(ratio(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("149/212"), Some(ratio(149, 212)));
        assert_eq!(parse_rational(" 7 "), Some(int(7)));
        assert_eq!(parse_rational("2/4"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn lcm_of_denominators() {
        let v = [ratio(1, 4), ratio(1, 6), int(3)];
        assert_eq!(common_denominator(v.iter()), BigInt::from(12));
    }
}
