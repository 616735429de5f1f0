use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

/// Parses `"p/q"` or `"p"` (optional sign, surrounding whitespace allowed).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).ok()?;
            let den = BigInt::from_str(den.trim()).ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Rational::new(num, den))
        }
        None => BigInt::from_str(text).ok().map(Rational::from_integer),
    }
}

/// Lowest-terms rendering: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub(crate) fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub(crate) fn sign(negative: bool) -> Rational {
    if negative {
        -Rational::one()
    } else {
        Rational::one()
    }
}
