//! Arbitrary-precision real scalar.
//!
//! [`Real`] wraps an MPFR float. Every value carries its own binary precision;
//! binary operations round to the larger precision of their two operands, so a
//! computation seeded from one [`PrecisionPolicy`] stays at that precision.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use rug::float::Round;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

/// Smallest precision accepted by [`PrecisionPolicy::new`].
pub const MIN_SIGNIFICAND_BITS: u32 = 64;

/// Default working precision.
pub const DEFAULT_SIGNIFICAND_BITS: u32 = 512;

#[derive(Clone, PartialEq, PartialOrd)]
pub struct Real(Float);

impl Real {
    pub fn from_i64(value: i64, bits: u32) -> Self {
        Real(Float::with_val(bits, value))
    }

    pub fn from_f64(value: f64, bits: u32) -> Self {
        Real(Float::with_val(bits, value))
    }

    /// Exact rational `num / den`, rounded once.
    pub fn ratio(num: i64, den: i64, bits: u32) -> Self {
        let mut x = Float::with_val(bits, num);
        x /= den;
        Real(x)
    }

    pub fn zero(bits: u32) -> Self {
        Real(Float::with_val(bits, 0))
    }

    pub fn one(bits: u32) -> Self {
        Real(Float::with_val(bits, 1))
    }

    /// Parses a decimal literal (`"0.955"`, `"-1.5e-3"`) at `bits` precision.
    pub fn parse(text: &str, bits: u32) -> Result<Self> {
        let trimmed = text.trim();
        let parsed = Float::parse(trimmed)
            .map_err(|e| Error::InvalidInput(format!("cannot parse number {trimmed:?}: {e}")))?;
        let value = Float::with_val(bits, parsed);
        if !value.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite number {trimmed:?}")));
        }
        Ok(Real(value))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_sign_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    pub fn abs(&self) -> Real {
        Real(self.0.clone().abs())
    }

    pub fn sqrt(&self) -> Real {
        Real(self.0.clone().sqrt())
    }

    pub fn square(&self) -> Real {
        Real(self.0.clone().square())
    }

    pub fn ln(&self) -> Real {
        Real(self.0.clone().ln())
    }

    pub fn exp(&self) -> Real {
        Real(self.0.clone().exp())
    }

    pub fn cos(&self) -> Real {
        Real(self.0.clone().cos())
    }

    pub fn sin(&self) -> Real {
        Real(self.0.clone().sin())
    }

    pub fn acos(&self) -> Real {
        Real(self.0.clone().acos())
    }

    /// Polar angle of the point `(x, y)`, in `(-pi, pi]`.
    pub fn atan2(y: &Real, x: &Real) -> Real {
        let bits = y.prec().max(x.prec());
        let mut out = Float::with_val(bits, &y.0);
        out.atan2_mut(&x.0);
        Real(out)
    }

    pub fn powi(&self, exponent: i32) -> Real {
        Real(Float::with_val(self.prec(), (&self.0).pow(exponent)))
    }

    pub fn powr(&self, exponent: &Real) -> Real {
        let bits = self.prec().max(exponent.prec());
        Real(Float::with_val(bits, (&self.0).pow(&exponent.0)))
    }

    /// `self * 2^exp`, exact.
    pub fn mul_pow2(&self, exp: i32) -> Real {
        let mut out = self.0.clone();
        out <<= exp;
        Real(out)
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Real) -> Real {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn recip(&self) -> Real {
        Real(self.0.clone().recip())
    }

    pub fn with_prec(&self, bits: u32) -> Real {
        Real(Float::with_val_round(bits, &self.0, Round::Nearest).0)
    }

    /// Scientific notation with `digits` significant decimal digits, e.g.
    /// `8.96000e0`. Deterministic for a fixed value and digit count.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.0.is_zero() {
            return format!("{:.*}e0", digits - 1, 0.0);
        }
        // rug counts significant digits here, not digits after the point.
        format!("{:.*e}", digits, self.0)
    }

    pub fn total_cmp(&self, other: &Real) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_decimal(24))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "{}", self.to_decimal(p + 1)),
            None => write!(f, "{}", self.to_decimal(20)),
        }
    }
}

fn widest(a: &Float, b: &Float) -> u32 {
    a.prec().max(b.prec())
}

macro_rules! real_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                Real(Float::with_val(widest(&self.0, &rhs.0), &self.0 $op &rhs.0))
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self $op &rhs
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                &self $op rhs
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                &self $op &rhs
            }
        }
        impl $trait<i32> for &Real {
            type Output = Real;
            fn $method(self, rhs: i32) -> Real {
                Real(Float::with_val(self.0.prec(), &self.0 $op rhs))
            }
        }
        impl $trait<i32> for Real {
            type Output = Real;
            fn $method(self, rhs: i32) -> Real {
                &self $op rhs
            }
        }
        impl $trait<&Real> for i32 {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                Real(Float::with_val(rhs.0.prec(), self $op &rhs.0))
            }
        }
        impl $trait<Real> for i32 {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self $op &rhs
            }
        }
    };
}

real_binop!(Add, add, +);
real_binop!(Sub, sub, -);
real_binop!(Mul, mul, *);
real_binop!(Div, div, /);

impl AddAssign<&Real> for Real {
    fn add_assign(&mut self, rhs: &Real) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Real> for Real {
    fn add_assign(&mut self, rhs: Real) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Real> for Real {
    fn sub_assign(&mut self, rhs: &Real) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Real> for Real {
    fn mul_assign(&mut self, rhs: &Real) {
        *self = &*self * rhs;
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0.clone())
    }
}

impl PartialEq<i32> for Real {
    fn eq(&self, other: &i32) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<i32> for Real {
    fn partial_cmp(&self, other: &i32) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

impl PartialEq<f64> for Real {
    fn eq(&self, other: &f64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<f64> for Real {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

impl<'a> Sum<&'a Real> for Real {
    /// Panics on an empty iterator: the precision of the result would be unknown.
    fn sum<I: Iterator<Item = &'a Real>>(mut iter: I) -> Real {
        let first = iter.next().expect("sum of an empty sequence of reals").clone();
        iter.fold(first, |acc, x| acc + x)
    }
}

impl Sum<Real> for Real {
    fn sum<I: Iterator<Item = Real>>(mut iter: I) -> Real {
        let first = iter.next().expect("sum of an empty sequence of reals");
        iter.fold(first, |acc, x| acc + x)
    }
}

/// Working precision plus the comparison tolerance derived from it.
///
/// The tolerance is `2^(-significand_bits / 2)`; for odd bit counts the half
/// exponent is honored exactly, so the tolerance strictly decreases with the
/// precision.
#[derive(Clone, Debug, PartialEq)]
pub struct PrecisionPolicy {
    significand_bits: u32,
    comparison_tolerance: Real,
}

impl PrecisionPolicy {
    pub fn new(significand_bits: u32) -> Result<Self> {
        if significand_bits < MIN_SIGNIFICAND_BITS {
            return Err(Error::InvalidInput(format!(
                "precision of {significand_bits} bits is below the minimum of {MIN_SIGNIFICAND_BITS}"
            )));
        }
        if significand_bits > 1 << 20 {
            return Err(Error::InvalidInput(format!(
                "precision of {significand_bits} bits is unreasonably large"
            )));
        }
        let half = (significand_bits / 2) as i32;
        let mut tol = Real::one(significand_bits).mul_pow2(-half);
        if significand_bits % 2 == 1 {
            tol = &tol / &Real::from_i64(2, significand_bits).sqrt();
        }
        Ok(PrecisionPolicy {
            significand_bits,
            comparison_tolerance: tol,
        })
    }

    pub fn bits(&self) -> u32 {
        self.significand_bits
    }

    pub fn tolerance(&self) -> &Real {
        &self.comparison_tolerance
    }

    /// `factor * tolerance`.
    pub fn tol_times(&self, factor: i32) -> Real {
        &self.comparison_tolerance * factor
    }

    /// `2^(-significand_bits + 16)`: values at or below this are treated as
    /// lost to rounding.
    pub fn underflow_floor(&self) -> Real {
        self.one().mul_pow2(-(self.significand_bits as i32) + 16)
    }

    pub fn zero(&self) -> Real {
        Real::zero(self.significand_bits)
    }

    pub fn one(&self) -> Real {
        Real::one(self.significand_bits)
    }

    pub fn int(&self, value: i64) -> Real {
        Real::from_i64(value, self.significand_bits)
    }

    pub fn ratio(&self, num: i64, den: i64) -> Real {
        Real::ratio(num, den, self.significand_bits)
    }

    pub fn from_f64(&self, value: f64) -> Real {
        Real::from_f64(value, self.significand_bits)
    }

    pub fn parse(&self, text: &str) -> Result<Real> {
        Real::parse(text, self.significand_bits)
    }

    /// Decimal digits used when serializing values at this precision.
    pub fn output_digits(&self) -> usize {
        (self.significand_bits / 3) as usize
    }

    /// `|a - b| <= tolerance`.
    pub fn approx_eq(&self, a: &Real, b: &Real) -> bool {
        (a - b).abs() <= self.comparison_tolerance
    }
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy::new(DEFAULT_SIGNIFICAND_BITS).expect("default precision is valid")
    }
}

impl FromStr for PrecisionPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits: u32 = s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("invalid precision {s:?}")))?;
        PrecisionPolicy::new(bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_tracks_half_precision() {
        let p = PrecisionPolicy::new(128).unwrap();
        assert_eq!(p.tolerance(), &Real::one(128).mul_pow2(-64));
        let q = PrecisionPolicy::new(129).unwrap();
        assert!(q.tolerance() < p.tolerance());
        assert!(q.tolerance() > &Real::one(129).mul_pow2(-65));
    }

    #[test]
    fn tolerance_is_strictly_decreasing() {
        let mut prev = PrecisionPolicy::new(64).unwrap().tolerance().clone();
        for bits in 65..200 {
            let tol = PrecisionPolicy::new(bits).unwrap().tolerance().clone();
            assert!(tol > 0);
            assert!(tol < prev, "bits = {bits}");
            prev = tol;
        }
    }

    #[test]
    fn rejects_low_precision() {
        assert!(matches!(PrecisionPolicy::new(53), Err(Error::InvalidInput(_))));
        assert_eq!(PrecisionPolicy::default().bits(), 512);
    }

    #[test]
    fn mixed_precision_rounds_to_wider() {
        let a = Real::from_i64(1, 64);
        let b = Real::ratio(1, 3, 256);
        assert_eq!((&a + &b).prec(), 256);
        assert_eq!((&b * 3).prec(), 256);
        assert_eq!((1 - &a).prec(), 64);
    }

    #[test]
    fn decimal_output_is_stable() {
        let x = Real::ratio(224, 25, 128);
        assert_eq!(x.to_decimal(6), "8.96000e0");
        assert_eq!(Real::zero(64).to_decimal(3), "0.00e0");
        let back = Real::parse(&x.to_decimal(40), 128).unwrap();
        assert!((back - &x).abs() < Real::one(128).mul_pow2(-120));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Real::parse("1.2.3", 64).is_err());
        assert!(Real::parse("nan", 64).is_err());
        assert_eq!(Real::parse(" -2.5e1 ", 64).unwrap(), -25);
    }
}
