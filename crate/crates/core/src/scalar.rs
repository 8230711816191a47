//! Scalar abstractions shared by every numeric routine in the crate.
//!
//! Closed-form quantities are written once against [`Scalar`] and evaluated
//! either in floating point (`f32`, `f64`) or exactly over [`BigRational`].
//! Optimization and root finding need transcendental functions and a total
//! notion of "small", so they require the stronger [`Real`] bound, which only
//! the float types satisfy.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, Num, One, Signed, ToPrimitive, Zero};

/// Field-like scalar with the handful of conversions the bound formulas need.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + Send + Sync + 'static
{
    /// Exact conversion from an unsigned integer (lossy above 2^53 for floats).
    fn from_u64(n: u64) -> Self;

    /// `num / den`. Panics if `den == 0`.
    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn from_i64(n: i64) -> Self {
        let mag = Self::from_u64(n.unsigned_abs());
        if n < 0 {
            -mag
        } else {
            mag
        }
    }

    /// Nearest representable value of `num / den`.
    fn from_big_ratio(num: &BigInt, den: &BigInt) -> Self;

    /// Nearest `f64`.
    fn to_f64(&self) -> f64;

    /// Base-2 logarithm when it is representable in this type.
    ///
    /// Float types always answer. Rationals answer only for exact powers of
    /// two, which is enough for every identity the crate checks exactly.
    fn log2_checked(&self) -> Option<Self>;

    /// Tolerance used when checking that coordinates sum to one.
    fn unit_tolerance() -> Self;

    fn powu(&self, exp: u32) -> Self {
        num_traits::pow(self.clone(), exp as usize)
    }
}

/// Floating-point scalar usable by the optimizers and root finders.
pub trait Real: Scalar + Float + Copy {
    fn from_f64(x: f64) -> Self;
}

impl Scalar for f64 {
    fn from_u64(n: u64) -> Self {
        n as f64
    }
    fn from_big_ratio(num: &BigInt, den: &BigInt) -> Self {
        big_ratio_to_f64(num, den)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn log2_checked(&self) -> Option<Self> {
        Some(self.log2())
    }
    fn unit_tolerance() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn from_u64(n: u64) -> Self {
        n as f32
    }
    fn from_big_ratio(num: &BigInt, den: &BigInt) -> Self {
        big_ratio_to_f64(num, den) as f32
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
    fn log2_checked(&self) -> Option<Self> {
        Some(self.log2())
    }
    fn unit_tolerance() -> Self {
        1e-5
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
}

impl Real for f32 {
    fn from_f64(x: f64) -> Self {
        x as f32
    }
}

impl Scalar for BigRational {
    fn from_u64(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_big_ratio(num: &BigInt, den: &BigInt) -> Self {
        BigRational::new(num.clone(), den.clone())
    }

    fn to_f64(&self) -> f64 {
        // Ratio::to_f64 handles huge numerators and denominators correctly.
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn log2_checked(&self) -> Option<Self> {
        if !self.is_positive() {
            return None;
        }
        let (num, den) = (self.numer(), self.denom());
        if den.is_one() {
            power_of_two(num).map(|e| Self::from_i64(e as i64))
        } else if num.is_one() {
            power_of_two(den).map(|e| -Self::from_i64(e as i64))
        } else {
            None
        }
    }

    fn unit_tolerance() -> Self {
        Self::zero()
    }
}

fn big_ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    ToPrimitive::to_f64(&BigRational::new(num.clone(), den.clone())).unwrap_or(f64::NAN)
}

fn power_of_two(n: &BigInt) -> Option<u64> {
    if !n.is_positive() {
        return None;
    }
    let tz = n.trailing_zeros()?;
    if (n >> tz).is_one() {
        Some(tz)
    } else {
        None
    }
}

/// `n!` as a scalar, built by repeated multiplication so rationals stay exact.
pub fn factorial<T: Scalar>(n: u32) -> T {
    (1..=n as u64).fold(T::one(), |acc, i| acc * T::from_u64(i))
}
