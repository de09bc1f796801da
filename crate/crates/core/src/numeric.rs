//! Exact rational arithmetic helpers.
//!
//! Similarities, weights and distances are kept as `Ratio<i64>`. Inputs are
//! decimals with a bounded number of fractional digits, so every value that
//! flows through the distance formulas has a denominator of the form
//! `2^a * 5^b` and prints as a finite decimal.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rational = Ratio<i64>;

/// Maximum number of fractional digits accepted by [`parse_decimal`].
pub const MAX_FRACTION_DIGITS: usize = 9;

/// Digits used when a value has no finite decimal expansion.
const FALLBACK_DIGITS: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid decimal `{0}`")]
pub struct DecimalError(pub String);

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

pub fn half() -> Rational {
    Rational::new(1, 2)
}

/// Parses a plain decimal (`-1`, `0.25`, `.5`, `3.`) into an exact rational.
/// Exponent notation is accepted when the result is still exact.
pub fn parse_decimal(text: &str) -> Result<Rational, DecimalError> {
    parse_decimal_with(text, MAX_FRACTION_DIGITS)
}

/// [`parse_decimal`] with a caller-chosen limit on fractional digits. Tree
/// and matrix files carry rounded values of up to twelve digits.
pub fn parse_decimal_with(text: &str, max_digits: usize) -> Result<Rational, DecimalError> {
    let err = || DecimalError(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(err());
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| err())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = match digits.find('.') {
        Some(pos) => (&digits[..pos], &digits[pos + 1..]),
        None => (digits, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let frac = frac.trim_end_matches('0');
    if frac.len() > max_digits {
        return Err(err());
    }
    let mut numer: i64 = 0;
    for b in whole.bytes().chain(frac.bytes()) {
        numer = numer
            .checked_mul(10)
            .and_then(|n| n.checked_add(i64::from(b - b'0')))
            .ok_or_else(err)?;
    }
    let mut denom: i64 = 10i64.pow(frac.len() as u32);
    if exponent > 0 {
        let scale = 10i64.checked_pow(exponent as u32).ok_or_else(err)?;
        numer = numer.checked_mul(scale).ok_or_else(err)?;
    } else if exponent < 0 {
        let scale = 10i64.checked_pow((-exponent) as u32).ok_or_else(err)?;
        denom = denom.checked_mul(scale).ok_or_else(err)?;
    }
    if negative {
        numer = -numer;
    }
    Ok(Rational::new(numer, denom))
}

/// True when the reduced denominator only has prime factors 2 and 5.
pub fn is_finite_decimal(r: &Rational) -> bool {
    let mut d = *r.denom();
    while d % 2 == 0 {
        d /= 2;
    }
    while d % 5 == 0 {
        d /= 5;
    }
    d == 1
}

/// Shortest exact decimal rendering: `5.1`, `3`, `-0.45`.
///
/// Values without a finite expansion (e.g. `1/3`) are rounded half away from
/// zero to twelve fractional digits and trailing zeros are trimmed.
pub fn format_decimal(r: &Rational) -> String {
    let negative = r.is_negative();
    let abs = r.abs();
    let numer = i128::from(*abs.numer());
    let denom = i128::from(*abs.denom());
    let (mut whole, mut rem) = numer.div_rem(&denom);
    let mut digits = String::new();
    if is_finite_decimal(&abs) {
        while rem != 0 {
            rem *= 10;
            let (d, r2) = rem.div_rem(&denom);
            digits.push(char::from(b'0' + d as u8));
            rem = r2;
        }
    } else {
        let scale = 10i128.pow(FALLBACK_DIGITS);
        let scaled = (rem * scale * 2 + denom) / (denom * 2);
        if scaled >= scale {
            whole += 1;
        } else {
            digits = format!("{:0width$}", scaled, width = FALLBACK_DIGITS as usize);
            while digits.ends_with('0') {
                digits.pop();
            }
        }
    }
    let sign = if negative && (whole != 0 || !digits.is_empty()) {
        "-"
    } else {
        ""
    };
    if digits.is_empty() {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{digits}")
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Least common multiple of the denominators, used to scale a rational
/// vector onto integers.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> i64 {
    values
        .into_iter()
        .filter(|v| !v.is_zero())
        .fold(1i64, |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_decimals() {
        assert_eq!(parse_decimal("0.6").unwrap(), Rational::new(3, 5));
        assert_eq!(parse_decimal("1").unwrap(), int(1));
        assert_eq!(parse_decimal("-2.50").unwrap(), Rational::new(-5, 2));
        assert_eq!(parse_decimal(".5").unwrap(), half());
        assert_eq!(parse_decimal("1e-3").unwrap(), Rational::new(1, 1000));
        assert_eq!(parse_decimal("0.999999").unwrap(), Rational::new(999_999, 1_000_000));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "-", ".", "1.2.3", "abc", "0x10", "1e", "0.0000000001"] {
            assert!(parse_decimal(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats_shortest() {
        assert_eq!(format_decimal(&Rational::new(51, 10)), "5.1");
        assert_eq!(format_decimal(&int(3)), "3");
        assert_eq!(format_decimal(&Rational::new(-9, 20)), "-0.45");
        assert_eq!(format_decimal(&int(0)), "0");
        assert_eq!(format_decimal(&Rational::new(1, 3)), "0.333333333333");
        assert_eq!(format_decimal(&Rational::new(2, 3)), "0.666666666667");
        assert_eq!(format_decimal(&Rational::new(-1, 8)), "-0.125");
    }

    #[test]
    fn format_parse_round_trip() {
        for (n, d) in [(1, 2), (97, 40), (-123_456, 1000), (7, 1), (1, 1_000_000)] {
            let r = Rational::new(n, d);
            assert_eq!(parse_decimal(&format_decimal(&r)).unwrap(), r);
        }
    }
}
