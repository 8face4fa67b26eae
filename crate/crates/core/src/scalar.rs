//! Number types the simulator can run on.
//!
//! Everything in the crate is generic over [`Scalar`]. Two implementations are
//! provided: `f64` for ordinary runs and [`Rational`] (arbitrary precision
//! fractions) for exact cross-validation runs. In rational mode every
//! zero test is exact, so measure-zero degeneracies (`sr = 0`, coincident
//! events) become decidable.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

/// Exact rational number used by the rational arithmetic mode.
pub type Rational = BigRational;

/// Relative tolerance used by every float-mode zero and equality test.
pub const REL_TOL: f64 = 1e-12;

/// Arithmetic mode selector, mostly used by front ends to pick a [`Scalar`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arithmetic {
    Float,
    Rational,
}

impl FromStr for Arithmetic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "float" => Ok(Arithmetic::Float),
            "rational" => Ok(Arithmetic::Rational),
            other => Err(format!(
                "unknown arithmetic mode `{other}` (expected float or rational)"
            )),
        }
    }
}

impl Display for Arithmetic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Arithmetic::Float => "float",
            Arithmetic::Rational => "rational",
        })
    }
}

/// A real number type the dynamics can be evaluated in.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// `true` when arithmetic is exact and tolerances collapse to equality.
    const EXACT: bool;

    /// Exact conversion from a finite double. Returns `None` for NaN or infinities.
    fn from_f64_exact(value: f64) -> Option<Self>;

    /// Lossy conversion to a double (nearest representable value).
    fn as_f64(&self) -> f64;

    /// Whether `self` is zero relative to `scale`: `|self| <= REL_TOL * |scale|` for
    /// floats, `self == 0` for exact types.
    fn negligible(&self, scale: &Self) -> bool;

    /// Parses a textual literal: decimal or scientific notation for every type,
    /// `p/q` fractions additionally for exact types.
    fn parse_literal(text: &str) -> Option<Self>;

    /// Text that [`Scalar::parse_literal`] reads back to the identical value.
    fn to_literal(&self) -> String;

    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("every i64 is representable")
    }

    /// `self` and `other` agree relative to `scale`.
    fn approx_eq(&self, other: &Self, scale: &Self) -> bool {
        (self.clone() - other.clone()).negligible(scale)
    }

    /// Strictly greater than zero. Unlike [`Signed::is_positive`], false for `+0.0`.
    fn positive(&self) -> bool {
        *self > Self::zero()
    }

    /// Strictly less than zero. Unlike [`Signed::is_negative`], false for `-0.0`.
    fn negative(&self) -> bool {
        *self < Self::zero()
    }

    fn two() -> Self {
        Self::from_int(2)
    }

    fn half(&self) -> Self {
        self.clone() / Self::two()
    }

    fn max_abs(&self, other: &Self) -> Self {
        let (a, b) = (self.abs(), other.abs());
        if a >= b {
            a
        } else {
            b
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_f64_exact(value: f64) -> Option<Self> {
        value.is_finite().then_some(value)
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn negligible(&self, scale: &Self) -> bool {
        self.abs() <= REL_TOL * scale.abs()
    }

    fn parse_literal(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let num: f64 = num.trim().parse().ok()?;
            let den: f64 = den.trim().parse().ok()?;
            let value = num / den;
            return value.is_finite().then_some(value);
        }
        text.parse::<f64>().ok().filter(|v| v.is_finite())
    }

    fn to_literal(&self) -> String {
        // Shortest representation that round-trips.
        format!("{self:e}")
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_f64_exact(value: f64) -> Option<Self> {
        BigRational::from_float(value)
    }

    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    fn negligible(&self, _scale: &Self) -> bool {
        self.is_zero()
    }

    fn parse_literal(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let num: BigInt = num.trim().parse().ok()?;
            let den: BigInt = den.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            return Some(BigRational::new(num, den));
        }
        parse_decimal(text)
    }

    fn to_literal(&self) -> String {
        if self.denom() == &BigInt::from(1) {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// Exact parse of `[-]digits[.digits][e[-]digits]`.
fn parse_decimal(text: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let scale = exponent - frac_part.len() as i32 - 1;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(digits);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -value } else { value })
}
