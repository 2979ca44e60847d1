//! Multiple-precision floating point backed by MPFR.
//!
//! Every value records its own precision. Binary operations round to the
//! larger of the two operand precisions, so mixing values never silently
//! narrows a result. Constructors (`zero`, `from_rational`, `pi`, ...) use the
//! thread's working precision, which defaults to [`DEFAULT_PRECISION`].

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::Sign;
use num_traits::{Num, One, Zero};
use rug::float::{Constant, Round};
use rug::integer::Order;
use rug::{Float, Integer, Rational};

use crate::error::EfpError;
use crate::exact::ExactRational;
use crate::scalar::Real;

pub const DEFAULT_PRECISION: u32 = 512;

thread_local! {
    static WORKING_PRECISION: Cell<u32> = const { Cell::new(DEFAULT_PRECISION) };
}

/// Precision in bits used by constructors on the current thread.
pub fn working_precision() -> u32 {
    WORKING_PRECISION.with(Cell::get)
}

/// Sets the working precision of the current thread.
pub fn set_working_precision(bits: u32) {
    WORKING_PRECISION.with(|p| p.set(bits.max(rug::float::prec_min())));
}

/// Runs `f` with a temporary working precision, restoring the previous one.
pub fn with_precision<R>(bits: u32, f: impl FnOnce() -> R) -> R {
    struct Restore(u32);
    impl Drop for Restore {
        fn drop(&mut self) {
            set_working_precision(self.0);
        }
    }
    let _restore = Restore(working_precision());
    set_working_precision(bits);
    f()
}

#[derive(Clone)]
pub struct BigFloat(Float);

impl BigFloat {
    pub fn from_float(f: Float) -> Self {
        BigFloat(f)
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    /// Re-rounds to `bits` of precision.
    pub fn with_prec(&self, bits: u32) -> Self {
        BigFloat(Float::with_val(bits, &self.0))
    }

    pub fn from_rug_rational(q: &Rational) -> Self {
        BigFloat(Float::with_val(working_precision(), q))
    }

    /// Decimal digits faithfully representable at this precision.
    pub fn decimal_digits(&self) -> usize {
        ((self.prec() as f64) * std::f64::consts::LOG10_2).floor() as usize
    }

    /// Scientific notation with `digits` significant decimal digits.
    pub fn to_sci_string(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        if !self.0.is_finite() {
            return self.0.to_string();
        }
        let s = self.0.to_string_radix(10, Some(digits.max(1)));
        normalize_sci(&s)
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
}

/// Rewrites MPFR output such as `-1.2500e-3` or `125.0` into a fixed
/// `d.ddde±x` layout so reports are stable across platforms.
fn normalize_sci(s: &str) -> String {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (mant, exp) = match body.find(['e', '@']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    let digits: String = format!("{int_part}{frac_part}");
    let lead = digits.find(|c: char| c != '0');
    let Some(lead) = lead else {
        return "0".to_string();
    };
    let exp10 = exp + int_part.len() as i64 - 1 - lead as i64;
    let sig = &digits[lead..];
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&sig[..1]);
    if sig.len() > 1 {
        out.push('.');
        out.push_str(&sig[1..]);
    }
    out.push_str(&format!("e{exp10}"));
    out
}

pub(crate) fn bigint_to_integer(n: &num_bigint::BigInt) -> Integer {
    let (sign, digits) = n.to_u32_digits();
    let mut out = Integer::from_digits(&digits, Order::Lsf);
    if sign == Sign::Minus {
        out = -out;
    }
    out
}

pub(crate) fn rational_to_rug(q: &ExactRational) -> Rational {
    Rational::from((bigint_to_integer(q.numer()), bigint_to_integer(q.denom())))
}

fn binary_prec(a: &BigFloat, b: &BigFloat) -> u32 {
    a.0.prec().max(b.0.prec())
}

macro_rules! bin_op {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                let p = binary_prec(&self, &rhs);
                BigFloat(Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
        impl<'a> $tr<&'a BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &'a BigFloat) -> BigFloat {
                let p = binary_prec(self, rhs);
                BigFloat(Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
    };
}

bin_op!(Add, add, +);
bin_op!(Sub, sub, -);
bin_op!(Mul, mul, *);
bin_op!(Div, div, /);

impl Rem for BigFloat {
    type Output = BigFloat;
    fn rem(self, rhs: BigFloat) -> BigFloat {
        let p = binary_prec(&self, &rhs);
        let q = Float::with_val(p, &self.0 / &rhs.0).trunc();
        BigFloat(Float::with_val(p, &self.0 - Float::with_val(p, &q * &rhs.0)))
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(-self.0)
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(Float::with_val(self.0.prec(), -&self.0))
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl Zero for BigFloat {
    fn zero() -> Self {
        BigFloat(Float::with_val(working_precision(), 0))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for BigFloat {
    fn one() -> Self {
        BigFloat(Float::with_val(working_precision(), 1))
    }
}

impl Num for BigFloat {
    type FromStrRadixErr = EfpError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, EfpError> {
        let parsed = Float::parse_radix(s, radix as i32).map_err(|e| EfpError::Parse {
            input: s.to_string(),
            reason: e.to_string(),
        })?;
        Ok(BigFloat(Float::with_val(working_precision(), parsed)))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or_else(|| self.decimal_digits());
        f.write_str(&self.to_sci_string(digits))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({}, {} bits)", self.to_sci_string(20), self.prec())
    }
}

impl Real for BigFloat {
    fn from_rational(q: &ExactRational) -> Self {
        BigFloat(Float::with_val(working_precision(), rational_to_rug(q)))
    }
    fn from_i64(n: i64) -> Self {
        BigFloat(Float::with_val(working_precision(), n))
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        BigFloat(Float::with_val(working_precision(), Rational::from((n, d))))
    }
    fn sqrt(&self) -> Self {
        BigFloat(Float::with_val(self.prec(), self.0.sqrt_ref()))
    }
    fn ln(&self) -> Self {
        BigFloat(Float::with_val(self.prec(), self.0.ln_ref()))
    }
    fn exp(&self) -> Self {
        BigFloat(Float::with_val(self.prec(), self.0.exp_ref()))
    }
    fn sin(&self) -> Self {
        BigFloat(Float::with_val(self.prec(), self.0.sin_ref()))
    }
    fn cos(&self) -> Self {
        BigFloat(Float::with_val(self.prec(), self.0.cos_ref()))
    }
    fn abs(&self) -> Self {
        BigFloat(Float::with_val(self.prec(), self.0.abs_ref()))
    }
    fn pi() -> Self {
        BigFloat(Float::with_val(working_precision(), Constant::Pi))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64_round(Round::Nearest)
    }
    fn precision_bits(&self) -> u32 {
        self.prec()
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        self.0 -= &a.0 * &b.0;
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        self.0 += &a.0 * &b.0;
    }
    fn epsilon() -> Self {
        let p = working_precision();
        BigFloat(Float::with_val(p, Float::i_exp(1, -(p as i32))))
    }
    fn zeta_prime_minus_one() -> Self {
        static CACHE: OnceLock<Mutex<HashMap<u32, Float>>> = OnceLock::new();
        let p = working_precision();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(v) = cache.lock().expect("constant cache poisoned").get(&p) {
            return BigFloat(v.clone());
        }
        let value = with_precision(p + 64, crate::constants::zeta_prime_minus_one_series::<BigFloat>)
            .with_prec(p);
        cache
            .lock()
            .expect("constant cache poisoned")
            .insert(p, value.0.clone());
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operations_keep_the_wider_precision() {
        let a = with_precision(128, || BigFloat::from_i64(1));
        let b = with_precision(256, || BigFloat::from_ratio(1, 3));
        assert_eq!((a.clone() + b.clone()).prec(), 256);
        assert_eq!((&a * &b).prec(), 256);
    }

    #[test]
    fn with_precision_restores() {
        let before = working_precision();
        with_precision(100, || assert_eq!(working_precision(), 100));
        assert_eq!(working_precision(), before);
    }

    #[test]
    fn display_is_normalized() {
        let x = with_precision(64, || BigFloat::from_ratio(-1, 800));
        assert_eq!(x.to_sci_string(5), "-1.2500e-3");
        let y = with_precision(64, || BigFloat::from_i64(125));
        assert_eq!(y.to_sci_string(3), "1.25e2");
        assert_eq!(BigFloat::zero().to_sci_string(3), "0");
    }

    #[test]
    fn rational_conversion_is_exact_for_dyadics() {
        let q = ExactRational::new((-3).into(), 8.into());
        assert_eq!(BigFloat::from_rational(&q).to_f64(), -0.375);
        let big = ExactRational::from_integer(num_bigint::BigInt::from(10).pow(40));
        assert_eq!(BigFloat::from_rational(&big).to_sci_string(3), "1.00e40");
    }
}
