//! Exact rational helpers built on `num-rational`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number.
pub type Q = BigRational;

/// Rational from a machine integer.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational `n/d`; panics on `d == 0` (used for literals only).
pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Integer power with a non-negative exponent; `x^0 = 1` also for `x = 0`.
pub fn qpow(x: &Q, e: u32) -> Q {
    let mut acc = Q::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Parses `"p/q"`, `"p"` or a decimal literal such as `"-1.25"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {t:?}")))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {t:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {t:?}")));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        let neg = ip.starts_with('-');
        let ip_digits = ip.trim_start_matches(['-', '+']);
        if !fp.chars().all(|c| c.is_ascii_digit()) || !ip_digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal {t:?}")));
        }
        let digits = format!("{}{}", if ip_digits.is_empty() { "0" } else { ip_digits }, fp);
        let n: BigInt = digits.parse().map_err(|_| Error::Parse(format!("bad decimal {t:?}")))?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let v = Q::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = t.parse().map_err(|_| Error::Parse(format!("bad integer {t:?}")))?;
    Ok(Q::from_integer(n))
}

/// Formats as `"p/q"`, or `"p"` for integers.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Nearest `f64`.
pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

/// Formats a float with 17 significant digits, the canonical output form.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{:.16e}", x)
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(x: &Q) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_q("3/6").unwrap(), qf(1, 2));
        assert_eq!(parse_q("-7").unwrap(), q(-7));
        assert_eq!(parse_q("-1.25").unwrap(), qf(-5, 4));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
    }

    #[test]
    fn format_round_trip() {
        for s in ["0", "5", "-3/7", "22/7"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
    }
}
