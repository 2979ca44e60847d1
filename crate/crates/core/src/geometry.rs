//! Regime geometry in the `(α, v)` plane and truncated large-`s` series.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{EfpError, Result};
use crate::exact::{rational_sqrt, ExactRational};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `v > u`, equivalently `α > β`: `F` decays like `e^{−φ s²}`.
    Disordered,
    /// `v < u`, equivalently `α < β`: `1 − F` decays like `e^{−χ s}`.
    Ordered,
    /// `v = u`.
    Critical,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Disordered => "disordered",
            Regime::Ordered => "ordered",
            Regime::Critical => "critical",
        })
    }
}

/// `u = (1 − √α)/(1 + √α)`.
pub fn u_of_alpha<T: Real>(alpha: &T) -> T {
    let sa = alpha.sqrt();
    (T::one() - sa.clone()) / (T::one() + sa)
}

/// Inverse of [`u_of_alpha`]: `α = ((1 − u)/(1 + u))²`.
pub fn alpha_of_u<T: Real>(u: &T) -> T {
    ((T::one() - u.clone()) / (T::one() + u.clone())).square()
}

/// `β = ((1 − v)/(1 + v))²`, the critical α for a given `v`.
pub fn beta_of_v<T: Real>(v: &T) -> T {
    alpha_of_u(v)
}

pub fn exact_beta(v: &ExactRational) -> ExactRational {
    let one = ExactRational::one();
    let b = (&one - v) / (&one + v);
    &b * &b
}

/// Regime of `(α, v)` decided in exact arithmetic by comparing α with β.
pub fn exact_regime(alpha: &ExactRational, v: &ExactRational) -> Regime {
    match alpha.cmp(&exact_beta(v)) {
        Ordering::Greater => Regime::Disordered,
        Ordering::Less => Regime::Ordered,
        Ordering::Equal => Regime::Critical,
    }
}

/// Point of the `(α, v)` plane with its derived coordinates `u` and `β`.
#[derive(Clone, Debug)]
pub struct GeometryParams<T> {
    pub alpha: T,
    pub v: T,
    pub u: T,
    pub beta: T,
    pub regime: Regime,
}

impl<T: Real> GeometryParams<T> {
    pub fn new(alpha: T, v: T) -> Result<Self> {
        check_open_unit("α", &alpha)?;
        if v <= T::zero() || v > T::one() {
            return Err(EfpError::Domain {
                what: "v",
                detail: format!("v = {v} must lie in (0, 1]"),
            });
        }
        let u = u_of_alpha(&alpha);
        let beta = beta_of_v(&v);
        let regime = match v.partial_cmp(&u) {
            Some(Ordering::Greater) => Regime::Disordered,
            Some(Ordering::Less) => Regime::Ordered,
            _ => Regime::Critical,
        };
        Ok(GeometryParams { alpha, v, u, beta, regime })
    }

    /// Builds from exact inputs; the regime is decided exactly.
    pub fn from_exact(alpha: &ExactRational, v: &ExactRational) -> Result<Self> {
        let mut g = Self::new(T::from_rational(alpha), T::from_rational(v))?;
        g.regime = exact_regime(alpha, v);
        if let Some(sa) = rational_sqrt(alpha) {
            let one = ExactRational::one();
            g.u = T::from_rational(&((&one - &sa) / (&one + &sa)));
        }
        g.beta = T::from_rational(&exact_beta(v));
        Ok(g)
    }

    pub fn require(&self, regime: Regime, what: &str) -> Result<()> {
        if self.regime != regime {
            return Err(EfpError::Regime(format!(
                "{what} needs the {regime} regime, but α = {}, v = {} is {}",
                self.alpha, self.v, self.regime
            )));
        }
        Ok(())
    }
}

pub(crate) fn check_open_unit<T: Real>(what: &'static str, x: &T) -> Result<()> {
    if *x <= T::zero() || *x >= T::one() {
        return Err(EfpError::Domain {
            what,
            detail: format!("{x} must lie strictly between 0 and 1"),
        });
    }
    Ok(())
}

/// Natural logarithm of a positive big integer without overflowing `T`.
pub fn ln_bigint<T: Real>(n: &BigInt) -> T {
    let keep = u64::from(T::one().precision_bits()) + 32;
    let bits = n.bits();
    if bits <= keep {
        return T::from_rational(&ExactRational::from_integer(n.clone())).ln();
    }
    let k = bits - keep;
    let head: BigInt = n >> k;
    T::from_rational(&ExactRational::from_integer(head)).ln()
        + T::from_i64(k as i64) * T::from_i64(2).ln()
}

/// Natural logarithm of a positive rational.
pub fn ln_rational<T: Real>(q: &ExactRational) -> Result<T> {
    if !q.is_positive() {
        return Err(EfpError::Domain {
            what: "logarithm",
            detail: format!("argument {q} is not positive"),
        });
    }
    Ok(ln_bigint::<T>(q.numer()) - ln_bigint::<T>(q.denom()))
}

/// Value of a truncated expansion with the exponent of its first omitted term.
#[derive(Clone, Debug)]
pub struct AsymValue<T> {
    pub value: T,
    /// The remainder is `O(s^{error_exponent})`.
    pub error_exponent: i32,
}

/// Truncated large-`s` expansion
/// `−rate·s^{rate_power} + log_coefficient·log s + constant + Σ c_k s^{−k}`.
#[derive(Clone, Debug)]
pub struct AsymSeries<T> {
    pub regime: Regime,
    pub rate: T,
    pub rate_power: u32,
    pub log_coefficient: T,
    pub constant: T,
    /// `(k, c_k)` pairs for the terms `c_k / s^k`.
    pub corrections: Vec<(u32, T)>,
    pub order: usize,
    pub error_exponent: i32,
}

impl<T: Real> AsymSeries<T> {
    pub fn eval(&self, s: &T) -> AsymValue<T> {
        let mut value = -self.rate.clone() * s.powi(self.rate_power as i32)
            + self.log_coefficient.clone() * s.ln()
            + self.constant.clone();
        for (k, c) in &self.corrections {
            value = value + c.clone() / s.powi(*k as i32);
        }
        AsymValue { value, error_exponent: self.error_exponent }
    }
}
