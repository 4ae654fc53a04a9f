//! The exact scalar abstraction shared by every geometric routine.
//!
//! All geometry in this crate is carried out over an ordered field with exact
//! arithmetic. The canonical choice is [`BigRational`](num_rational::BigRational)
//! (aliased as [`crate::Scalar`]); fixed-width rationals such as
//! `Ratio<i64>` also implement the trait and are useful for small, fast
//! computations where overflow is known not to occur.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// An exact ordered field.
///
/// Values are always in canonical form, so structural equality is numeric
/// equality. `Display` prints `p/q`, or `p` when the denominator is one, and
/// `FromStr` accepts the same syntax.
pub trait ExactField:
    Clone
    + Debug
    + Display
    + FromStr
    + Eq
    + Ord
    + Hash
    + Num
    + Signed
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer fits the scalar type")
    }

    fn from_frac(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Decimal string rounded half away from zero to `places` digits.
    fn to_decimal(&self, places: u32) -> String;
}

fn ratio_decimal<T>(r: &Ratio<T>, places: u32) -> String
where
    T: Clone + Integer + Signed + Display + FromPrimitive,
{
    let scale = T::from_u64(10u64.pow(places)).expect("scale fits the integer type");
    let scaled = (r.clone() * Ratio::from_integer(scale.clone())).round().to_integer();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let (whole, frac) = scaled.abs().div_rem(&scale);
    if places == 0 {
        return format!("{sign}{whole}");
    }
    format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = places as usize)
}

impl ExactField for Ratio<BigInt> {
    fn to_decimal(&self, places: u32) -> String {
        ratio_decimal(self, places)
    }
}

impl ExactField for Ratio<i64> {
    fn to_decimal(&self, places: u32) -> String {
        ratio_decimal(self, places)
    }
}

impl ExactField for Ratio<i128> {
    fn to_decimal(&self, places: u32) -> String {
        ratio_decimal(self, places)
    }
}

/// Parses a scalar from its `p/q` string form.
pub fn parse_scalar<F: ExactField>(s: &str) -> Result<F, crate::Error> {
    F::from_str(s.trim()).map_err(|_| crate::Error::Parse(format!("bad rational {s:?}")))
}

/// Dot product of two equally long coordinate slices.
pub fn dot<F: ExactField>(a: &[F], b: &[F]) -> F {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}
