//! Exact rationals and their rendering.
//!
//! [`Rational`] is `num_rational::BigRational`: always in lowest terms with a
//! positive denominator.

use alloc::format;
use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `Rational` from a machine integer.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `num / den`, reduced. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"` (optionally signed, surrounding whitespace ignored).
pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::InvalidArgument(format!("not a rational: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::InvalidArgument(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"p/q"` form, or `"p"` for integers.
pub fn to_fraction_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with exactly `places` fractional digits, correctly
/// rounded (ties away from zero).
pub fn to_decimal_string(r: &Rational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u8), places);
    let scaled = r.abs() * Rational::from_integer(scale);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = rem * 2u8;
    let digits = if &twice >= scaled.denom() { q + 1u8 } else { q };

    let mut body = digits.to_string();
    if body.len() <= places {
        body = format!("{}{}", "0".repeat(places + 1 - body.len()), body);
    }
    let split = body.len() - places;
    let negative = r.is_negative() && digits_nonzero(&body);
    let mut out = String::with_capacity(body.len() + 2);
    if negative {
        out.push('-');
    }
    out.push_str(&body[..split]);
    if places > 0 {
        out.push('.');
        out.push_str(&body[split..]);
    }
    out
}

fn digits_nonzero(body: &str) -> bool {
    body.bytes().any(|b| b != b'0')
}

/// Nearest `f64` (via the numerator/denominator ratio).
pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // huge operands: shift both down until they fit
            let bits = r.numer().bits().max(r.denom().bits());
            let shift = bits.saturating_sub(1000) as usize;
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// `true` if `r` is an integer square of a rational, returning its root.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}
