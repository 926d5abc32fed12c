//! Text encodings for exact values: `p/q` ratios, rounded decimals, and the
//! comma-separated q lists accepted on the command line.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("invalid integer {0:?}")]
    Integer(String),
    #[error("expected p/q, got {0:?}")]
    RatioShape(String),
    #[error("denominator must be positive in {0:?}")]
    Denominator(String),
    #[error("q must be at least 1, got {0}")]
    QBelowOne(u64),
}

/// `p/q` in lowest terms with a positive denominator; integers are written
/// `p/1`.
pub fn ratio(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

fn parse_int(s: &str) -> Result<BigInt, ParseError> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::Integer(s.to_owned()));
    }
    BigInt::from_str(s).map_err(|_| ParseError::Integer(s.to_owned()))
}

/// Inverse of [`ratio`]. Accepts any `p/q` with `q > 0` and normalizes it.
pub fn parse_ratio(s: &str) -> Result<BigRational, ParseError> {
    if s.is_empty() {
        return Err(ParseError::Empty);
    }
    let (numer, denom) = s
        .split_once('/')
        .ok_or_else(|| ParseError::RatioShape(s.to_owned()))?;
    let numer = parse_int(numer)?;
    let denom = parse_int(denom)?;
    if !denom.is_positive() {
        return Err(ParseError::Denominator(s.to_owned()));
    }
    Ok(BigRational::new(numer, denom))
}

/// Fixed-point rendering with `precision` fractional digits, rounding ties
/// to even.
pub fn decimal(value: &BigRational, precision: usize) -> String {
    let scale = BigInt::from(10u32).pow(precision as u32);
    let scaled = value * BigRational::from_integer(scale);
    let floor = scaled.floor();
    let rest = &scaled - &floor;
    let mut digits = floor.to_integer();
    let half = BigRational::new(One::one(), 2.into());
    if rest > half || (rest == half && digits.bit(0)) {
        digits += 1;
    }
    let negative = digits.is_negative();
    let mut text = digits.abs().to_string();
    if precision > 0 {
        if text.len() <= precision {
            text = format!("{}{}", "0".repeat(precision + 1 - text.len()), text);
        }
        text.insert(text.len() - precision, '.');
    }
    if negative {
        text.insert(0, '-');
    }
    text
}

/// Parses `2,5,7` into a list of q values, each at least 1.
pub fn parse_q_list(s: &str) -> Result<Vec<u64>, ParseError> {
    if s.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    s.split(',')
        .map(|item| {
            let item = item.trim();
            let q: u64 = item
                .parse()
                .map_err(|_| ParseError::Integer(item.to_owned()))?;
            if q.is_zero() {
                Err(ParseError::QBelowOne(q))
            } else {
                Ok(q)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ratio_rendering() {
        assert_eq!(ratio(&rat(4, 27)), "4/27");
        assert_eq!(ratio(&rat(18, 18)), "1/1");
        assert_eq!(ratio(&rat(-2, 4)), "-1/2");
    }

    #[test]
    fn ratio_parsing() {
        assert_eq!(parse_ratio("4/27"), Ok(rat(4, 27)));
        assert_eq!(parse_ratio("-6/4"), Ok(rat(-3, 2)));
        assert_eq!(parse_ratio(""), Err(ParseError::Empty));
        assert!(matches!(parse_ratio("4"), Err(ParseError::RatioShape(_))));
        assert!(matches!(
            parse_ratio("4/0"),
            Err(ParseError::Denominator(_))
        ));
        assert!(matches!(
            parse_ratio("4/-3"),
            Err(ParseError::Denominator(_))
        ));
        assert!(matches!(parse_ratio("+4/3"), Err(ParseError::Integer(_))));
        assert!(matches!(parse_ratio("4/3/2"), Err(ParseError::Integer(_))));
        assert!(matches!(parse_ratio("-/3"), Err(ParseError::Integer(_))));
    }

    #[test]
    fn decimal_rounds_half_even() {
        assert_eq!(decimal(&rat(4, 27), 6), "0.148148");
        assert_eq!(decimal(&rat(1, 27), 6), "0.037037");
        assert_eq!(decimal(&rat(1, 1), 6), "1.000000");
        assert_eq!(decimal(&rat(1, 8), 2), "0.12");
        assert_eq!(decimal(&rat(3, 8), 2), "0.38");
        assert_eq!(decimal(&rat(5, 2), 0), "2");
        assert_eq!(decimal(&rat(7, 2), 0), "4");
        assert_eq!(decimal(&rat(-1, 8), 2), "-0.12");
        assert_eq!(decimal(&rat(-1, 1_000_000_000), 6), "0.000000");
        assert_eq!(decimal(&rat(123_456, 1), 3), "123456.000");
    }

    #[test]
    fn q_lists() {
        assert_eq!(parse_q_list("2,5"), Ok(vec![2, 5]));
        assert_eq!(parse_q_list(" 3 , 1 "), Ok(vec![3, 1]));
        assert_eq!(parse_q_list("0"), Err(ParseError::QBelowOne(0)));
        assert_eq!(parse_q_list(""), Err(ParseError::Empty));
        assert!(parse_q_list("2,,3").is_err());
        assert!(parse_q_list("-1").is_err());
    }

    proptest! {
        #[test]
        fn ratio_round_trips(n in any::<i64>(), d in 1i64..) {
            let r = rat(n, d);
            prop_assert_eq!(parse_ratio(&ratio(&r)).unwrap(), r);
        }

        #[test]
        fn decimal_is_within_half_ulp(n in -1_000_000i64..1_000_000, d in 1i64..100_000, p in 0usize..8) {
            let r = rat(n, d);
            let shown = decimal(&r, p);
            let (int, frac) = shown.split_once('.').unwrap_or((&shown, ""));
            prop_assert_eq!(frac.len(), p);
            let back = parse_ratio(&format!("{int}{frac}/1{}", "0".repeat(p))).unwrap();
            let ulp = rat(1, 10i64.pow(p as u32));
            prop_assert!((back - &r).abs() * rat(2, 1) <= ulp);
        }
    }
}
