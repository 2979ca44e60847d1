//! Exact arithmetic: rationals, polynomials in α, rational functions and
//! fraction-free determinants.

mod linalg;
mod poly;
mod ratfun;

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{EfpError, Result};

pub use linalg::{bareiss_det, ExactRing};
pub use poly::Polynomial;
pub use ratfun::{poly_gcd, ratfun_equal_zero, RationalFunction};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type ExactRational = BigRational;

pub fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `C(n, k)` as an integer; zero when `k < 0` or `k > n`.
pub fn binomial_int(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `C(n, k)` with `n ≥ 0`; zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: u64, k: i64) -> ExactRational {
    ExactRational::from_integer(binomial_int(n, k))
}

/// Generalized binomial `C(x, k)` for rational `x` and `k ≥ 0`.
pub fn binomial_general(x: &ExactRational, k: u64) -> ExactRational {
    let mut acc = ExactRational::one();
    for i in 0..k {
        acc = acc * (x - ExactRational::from_integer(BigInt::from(i)))
            / ExactRational::from_integer(BigInt::from(i + 1));
    }
    acc
}

/// Bernoulli number `B_n` with `B_1 = −1/2`.
pub fn bernoulli(n: usize) -> ExactRational {
    static TABLE: OnceLock<Mutex<Vec<ExactRational>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(vec![ExactRational::one()]));
    let mut b = table.lock().expect("bernoulli table poisoned");
    while b.len() <= n {
        // Σ_{k=0}^{m} C(m+1, k) B_k = 0
        let m = b.len();
        let mut sum = ExactRational::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                sum += binomial(m as u64 + 1, k as i64) * bk;
            }
        }
        let next = -sum / binomial(m as u64 + 1, m as i64);
        b.push(next);
    }
    b[n].clone()
}

/// Parses `"p/q"` or an integer. Decimal notation is rejected so that
/// inputs never pass through binary floating point.
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let t = text.trim();
    let err = |reason: &str| EfpError::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    if t.contains(['.', 'e', 'E']) {
        return Err(err("decimal input is not accepted; write the value as a fraction such as 1/2"));
    }
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err("numerator is not an integer"))?;
    let d: BigInt = d.parse().map_err(|_| err("denominator is not an integer"))?;
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(ExactRational::new(n, d))
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &ExactRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rational_sqrt(q: &ExactRational) -> Option<ExactRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(ExactRational::new(n, d))
    } else {
        None
    }
}

/// Integer power of a rational.
pub fn rational_pow(q: &ExactRational, e: u32) -> ExactRational {
    num_traits::pow(q.clone(), e as usize)
}

pub(crate) fn lcm_denominators<'a>(it: impl Iterator<Item = &'a ExactRational>) -> BigInt {
    it.fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(2, 0), int(1));
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(3, 5), int(0));
        assert_eq!(binomial(3, -1), int(0));
        let direct = factorial(30) / (factorial(12) * factorial(18));
        assert_eq!(binomial_int(30, 12), direct);
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(7), int(0));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&int(-2)), "-2");
    }

    #[test]
    fn sqrt_of_squares() {
        assert_eq!(rational_sqrt(&rat(9, 16)), Some(rat(3, 4)));
        assert_eq!(rational_sqrt(&rat(1, 2)), None);
    }
}
