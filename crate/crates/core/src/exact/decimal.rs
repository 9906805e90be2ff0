use num_bigint::Sign;
use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use super::{Integer, Rational};

/// Renders `q` with exactly `digits` digits after the point, rounding half
/// to even. `digits == 0` renders an integer.
pub fn to_decimal(q: &Rational, digits: usize) -> String {
    let scale = Integer::from(10u32).pow(digits as u32);
    let scaled = q.abs() * Rational::from_integer(scale.clone());
    let (quot, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = rem * 2u32;
    let mut rounded = quot;
    match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Greater => rounded += 1u32,
        std::cmp::Ordering::Equal if rounded.is_odd() => rounded += 1u32,
        _ => {}
    }
    let negative = q.is_negative() && !rounded.is_zero();
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        let f = frac_part.to_string();
        out.push('.');
        out.extend(std::iter::repeat_n('0', digits - f.len()));
        out.push_str(&f);
    }
    out
}

/// Parses `"0.3"`, `"-12.5"`, `"3/10"` or `"7"` into an exact rational.
pub fn rational_from_decimal_str(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: Integer = n.trim().parse().ok()?;
        let d: Integer = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{ip}{fp}");
    let mag = Integer::parse_bytes(digits.as_bytes(), 10)?;
    let mag = if neg {
        Integer::from_biguint(Sign::Minus, mag.magnitude().clone())
    } else {
        mag
    };
    let den = Integer::from(10u32).pow(fp.len() as u32);
    Some(Rational::new(mag, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    #[test]
    fn renders_with_half_even() {
        assert_eq!(to_decimal(&frac(150, 11), 12), "13.636363636364");
        assert_eq!(to_decimal(&frac(0, 1), 3), "0.000");
        assert_eq!(to_decimal(&frac(5, 2), 0), "2");
        assert_eq!(to_decimal(&frac(7, 2), 0), "4");
        assert_eq!(to_decimal(&frac(1, 8), 2), "0.12");
        assert_eq!(to_decimal(&frac(3, 8), 2), "0.38");
        assert_eq!(to_decimal(&frac(-1, 3), 4), "-0.3333");
        assert_eq!(to_decimal(&frac(-1, 1000), 2), "0.00");
        assert_eq!(to_decimal(&frac(1, 100), 2), "0.01");
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(rational_from_decimal_str("0.3"), Some(frac(3, 10)));
        assert_eq!(rational_from_decimal_str("3/10"), Some(frac(3, 10)));
        assert_eq!(rational_from_decimal_str("-1.25"), Some(frac(-5, 4)));
        assert_eq!(rational_from_decimal_str(".5"), Some(frac(1, 2)));
        assert_eq!(rational_from_decimal_str("7"), Some(frac(7, 1)));
        assert_eq!(rational_from_decimal_str("1/0"), None);
        assert_eq!(rational_from_decimal_str("abc"), None);
        assert_eq!(rational_from_decimal_str("."), None);
    }
}
