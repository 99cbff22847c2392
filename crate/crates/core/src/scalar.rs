//! Field of scalars used by every tensor in the crate.
//!
//! The default is [`Rational`], an arbitrary precision fraction kept in lowest
//! terms, so every identity is checked by exact equality. `f64` implements the
//! same trait for interoperability; in that mode "zero" means an absolute value
//! at most [`FLOAT_TOLERANCE`].

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub const FLOAT_TOLERANCE: f64 = 1e-10;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    /// True for exact arithmetic.
    const EXACT: bool;

    fn from_int(value: i64) -> Self;

    fn from_frac(numer: i64, denom: i64) -> Self;

    fn abs_val(&self) -> Self;

    /// Exact zero test for rationals, tolerance test for floats.
    fn is_negligible(&self) -> bool;

    fn to_f64(&self) -> f64;

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other).is_negligible()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_int(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn from_frac(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(value: i64) -> Self {
        value as f64
    }

    fn from_frac(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn is_negligible(&self) -> bool {
        self.abs() <= FLOAT_TOLERANCE
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Largest absolute value in a sequence, zero when empty.
pub fn max_abs<'a, S: Scalar + 'a>(values: impl IntoIterator<Item = &'a S>) -> S {
    values.into_iter().fold(S::zero(), |acc, v| {
        let a = v.abs_val();
        if a > acc {
            a
        } else {
            acc
        }
    })
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. The unicode minus sign is accepted too.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    let (negative, body) = match trimmed.strip_prefix('-').or_else(|| trimmed.strip_prefix('\u{2212}')) {
        Some(rest) => (true, rest),
        None => (false, trimmed),
    };
    let bad = || Error::Parse(format!("invalid rational {text:?}"));
    if body.is_empty() || body.starts_with(['+', '-']) {
        return Err(bad());
    }
    let parse_int = |s: &str| -> Result<BigInt> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    let value = match body.split_once('/') {
        Some((n, d)) => {
            let denom = parse_int(d)?;
            if denom.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            BigRational::new(parse_int(n)?, denom)
        }
        None => BigRational::from_integer(parse_int(body)?),
    };
    Ok(if negative { -value } else { value })
}

pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}
