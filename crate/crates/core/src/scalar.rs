//! Numeric types shared by the solvers.
//!
//! Densities and thresholds are exact fractions over arbitrary-precision
//! integers. Flow capacities are generic over [`Capacity`] so a solve can run
//! on machine integers and escalate to big integers when a checked operation
//! overflows.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact density / threshold value.
pub type Rational = BigRational;

/// Integer type usable as an arc capacity.
///
/// Every arithmetic step in the flow engine goes through `checked_add` /
/// `checked_sub`, so a fixed-width implementation reports overflow instead of
/// wrapping.
pub trait Capacity: Clone + Ord + Debug + Zero + CheckedAdd + CheckedSub + Send + Sync {
    fn from_bigint(value: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;

    fn try_from_bigint(value: &BigInt) -> Result<Self> {
        Self::from_bigint(value).ok_or(Error::Overflow)
    }
}

macro_rules! impl_capacity_for_primitive {
    ($($t:ty => $conv:ident),*) => {
        $(
            impl Capacity for $t {
                fn from_bigint(value: &BigInt) -> Option<Self> {
                    value.$conv()
                }

                fn to_bigint(&self) -> BigInt {
                    BigInt::from(*self)
                }
            }
        )*
    };
}

impl_capacity_for_primitive!(i32 => to_i32, i64 => to_i64, i128 => to_i128);

impl Capacity for BigInt {
    fn from_bigint(value: &BigInt) -> Option<Self> {
        Some(value.clone())
    }

    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// `num / den` as a reduced rational.
pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Parses a non-negative decimal or fraction literal (`"0.1"`, `"3/2"`, `"2"`)
/// into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parameter(format!("not a rational number: {text:?}"));
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    let (int_part, frac_part) = text.split_once('.').unwrap_or((text, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    Ok(Rational::new(num, den))
}

/// Lossy conversion for display and report fields.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// `ceil(log2(value))` for a positive integer; 0 for `value <= 1`.
pub(crate) fn ceil_log2(value: &BigInt) -> u64 {
    if *value <= BigInt::one() {
        return 0;
    }
    let bits = value.bits();
    // exact power of two iff value - 1 has fewer bits
    let below: BigInt = value - 1;
    if below.bits() < bits {
        bits - 1
    } else {
        bits
    }
}

pub(crate) fn is_nonnegative(value: &Rational) -> bool {
    !value.is_negative()
}
