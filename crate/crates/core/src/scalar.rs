//! Scalar abstraction shared by every numeric routine.
//!
//! Numeric code is written once against [`Real`] and instantiated with
//! `f64` for quick evaluation or [`BigFloat`](crate::BigFloat) for the
//! high-precision checks.

use std::fmt;
use std::ops::Neg;

use num_traits::{Num, ToPrimitive};

use crate::exact::ExactRational;

/// A real scalar with the elementary functions the engine needs.
pub trait Real:
    Num + Neg<Output = Self> + Clone + PartialOrd + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Rounds an exact rational into this type at the working precision.
    fn from_rational(q: &ExactRational) -> Self;
    fn from_i64(n: i64) -> Self;
    fn sqrt(&self) -> Self;
    fn ln(&self) -> Self;
    fn exp(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn abs(&self) -> Self;
    fn pi() -> Self;
    fn to_f64(&self) -> f64;
    /// Binary precision carried by this value.
    fn precision_bits(&self) -> u32;
    /// Unit roundoff `2^-p` at the working precision.
    fn epsilon() -> Self;
    /// ζ′(−1), the derivative of the Riemann zeta function at −1.
    fn zeta_prime_minus_one() -> Self;

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }

    fn powi(&self, n: i32) -> Self {
        let mut base = if n < 0 { Self::one() / self.clone() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    /// `self -= a·b`; types with in-place arithmetic override this to skip allocations.
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.clone() - a.clone() * b.clone();
    }

    /// `self += a·b`.
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.clone() + a.clone() * b.clone();
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

macro_rules! impl_real_prim {
    ($t:ty, $zeta:expr) => {
        impl Real for $t {
            fn from_rational(q: &ExactRational) -> Self {
                q.to_f64().unwrap_or(f64::NAN) as $t
            }
            fn from_i64(n: i64) -> Self {
                n as $t
            }
            fn sqrt(&self) -> Self {
                <$t>::sqrt(*self)
            }
            fn ln(&self) -> Self {
                <$t>::ln(*self)
            }
            fn exp(&self) -> Self {
                <$t>::exp(*self)
            }
            fn sin(&self) -> Self {
                <$t>::sin(*self)
            }
            fn cos(&self) -> Self {
                <$t>::cos(*self)
            }
            fn abs(&self) -> Self {
                <$t>::abs(*self)
            }
            fn pi() -> Self {
                std::f64::consts::PI as $t
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
            fn precision_bits(&self) -> u32 {
                <$t>::MANTISSA_DIGITS
            }
            fn epsilon() -> Self {
                <$t>::EPSILON / 2.0
            }
            fn zeta_prime_minus_one() -> Self {
                $zeta
            }
        }
    };
}

impl_real_prim!(f64, -0.165_421_143_700_450_93_f64);
impl_real_prim!(f32, -0.165_421_14_f32);
