//! Exact rational scalars.
//!
//! All arithmetic in this crate happens over arbitrary-precision
//! rationals. Scalars serialize as `"p/q"` (or `"p"` when the
//! denominator is 1) with the denominator always positive and the
//! fraction fully reduced; `BigRational` maintains exactly that normal
//! form, so its `Display` output is the wire format.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::str::FromStr;

pub type Rational = num_rational::BigRational;

/// Rational from an integer pair. Panics on a zero denominator; intended
/// for literals in code and tests, not for user input (use
/// [`parse_rational`] for that).
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from an integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` with arbitrary-precision integer parts.
///
/// Rejects empty input, malformed integers, and a zero denominator
/// (`BigRational::from_str` would panic on the latter).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = |reason: &str| Error::BadRational {
        literal: s.to_string(),
        reason: reason.to_string(),
    };
    let s = s.trim();
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s).map_err(|_| bad("not an integer"))?;
            Ok(Rational::from_integer(n))
        }
        Some((ns, ds)) => {
            let n = BigInt::from_str(ns.trim()).map_err(|_| bad("bad numerator"))?;
            let d = BigInt::from_str(ds.trim()).map_err(|_| bad("bad denominator"))?;
            if d == BigInt::from(0) {
                return Err(bad("zero denominator"));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Canonical string form: `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}
