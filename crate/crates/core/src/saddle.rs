//! Saddle-point asymptotics of `Tr K` in the ordered regime.

use crate::efp::EfpParams;
use crate::error::{EfpError, Result};
use crate::exact::ExactRational;
use crate::geometry::{u_of_alpha, GeometryParams, Regime};
use crate::scalar::Real;

fn check_saddle_domain<T: Real>(alpha: &T, v: &T) -> Result<()> {
    let u = u_of_alpha(alpha);
    if !(*alpha > T::zero() && *alpha < T::one() && *v > T::zero() && *v < u) {
        return Err(EfpError::Domain {
            what: "saddle points",
            detail: format!("requires 0 < v < u, got u = {u}, v = {v}"),
        });
    }
    Ok(())
}

/// The two negative saddles `(ν₋, ν₊)` of the action, with `ν₊ν₋ = 1/α`.
pub fn saddle_points<T: Real>(alpha: &T, v: &T) -> Result<(T, T)> {
    check_saddle_domain(alpha, v)?;
    let one = T::one();
    let sa = alpha.sqrt();
    let a = (one.clone() - v.clone() * (one.clone() + sa.clone()) / (one.clone() - sa.clone())).sqrt();
    let b = (one.clone() - v.clone() * (one.clone() - sa.clone()) / (one.clone() + sa)).sqrt();
    let c = -(one - alpha.clone()) / (T::from_i64(4) * alpha.clone() * v.clone());
    Ok((c.clone() * (a.clone() - b.clone()).square(), c * (a + b).square()))
}

/// `S(ν) = (1/v) log((1−ν)/(1−αν)) − log(−ν)` for `ν < 0`.
pub fn action_s<T: Real>(nu: &T, alpha: &T, v: &T) -> Result<T> {
    if *nu >= T::zero() {
        return Err(EfpError::Domain { what: "action", detail: format!("ν = {nu} must be negative") });
    }
    let one = T::one();
    Ok(((one.clone() - nu.clone()) / (one - alpha.clone() * nu.clone())).ln() / v.clone() - (-nu.clone()).ln())
}

/// `dᵏS/dνᵏ` for `1 ≤ k ≤ 6`.
pub fn action_derivative<T: Real>(k: u32, nu: &T, alpha: &T, v: &T) -> Result<T> {
    if !(1..=6).contains(&k) {
        return Err(EfpError::Domain { what: "action derivative", detail: format!("order {k} outside 1..=6") });
    }
    if *nu >= T::zero() {
        return Err(EfpError::Domain { what: "action", detail: format!("ν = {nu} must be negative") });
    }
    let one = T::one();
    let f = T::from_i64((1..k as i64).product());
    let ki = k as i32;
    let log_part = (-f.clone() / (one.clone() - nu.clone()).powi(ki)
        + f.clone() * alpha.powi(ki) / (one - alpha.clone() * nu.clone()).powi(ki))
        / v.clone();
    let sign = if k % 2 == 1 { T::one() } else { -T::one() };
    Ok(log_part - sign * f / nu.powi(ki))
}

fn w_of<T: Real>(alpha: &T, v: &T) -> T {
    let one = T::one();
    (one.clone() - v.clone()).square() - (one + v.clone()).square() * alpha.clone()
}

/// Correction coefficients `b̂₁, b̂₂` of the saddle-point series for `Tr K`.
pub fn b_hat_coeffs<T: Real>(alpha: &T, v: &T) -> Result<(T, T)> {
    check_saddle_domain(alpha, v)?;
    let one = T::one();
    let a = alpha.clone();
    let w = w_of(alpha, v);
    let om = one.clone() - a.clone();
    let b1 = -(om.square() * (v.powi(4) + one.clone())
        + T::from_i64(9) * (one.clone() - a.square()) * (v.powi(3) + v.clone())
        - T::from_i64(2) * (T::from_i64(10) * a.square() - T::from_i64(11) * a.clone() + T::from_i64(10)) * v.square())
        / (T::from_i64(6) * om.sqrt() * w.clone() * w.sqrt());
    let n = |k: i64| T::from_i64(k);
    let b2 = (om.powi(4) * (v.powi(8) + one.clone())
        + n(18) * (one.clone() + a.clone()) * om.powi(3) * (v.powi(7) + v.clone())
        + (n(113) * a.square() + n(782) * a.clone() + n(113)) * om.square() * (v.powi(6) + v.square())
        - n(18) * (one.clone() - a.square()) * (n(35) * a.square() - n(36) * a.clone() + n(35)) * (v.powi(5) + v.powi(3))
        + n(12) * (n(83) * (a.powi(4) + one.clone()) - n(194) * (a.powi(3) + a.clone()) + n(321) * a.square()) * v.powi(4))
        / (n(72) * om * w.powi(3));
    Ok((b1, b2))
}

/// Saddles, action values and correction coefficients at one geometry.
#[derive(Clone, Debug)]
pub struct SaddleData<T> {
    pub nu_minus: T,
    pub nu_plus: T,
    pub s_minus: T,
    pub s_plus: T,
    /// `S′(ν₋), …, S⁽⁶⁾(ν₋)`.
    pub derivatives: Vec<T>,
    pub b_hat1: T,
    pub b_hat2: T,
}

impl<T: Real> SaddleData<T> {
    pub fn new(alpha: &T, v: &T) -> Result<Self> {
        let (nu_minus, nu_plus) = saddle_points(alpha, v)?;
        let s_minus = action_s(&nu_minus, alpha, v)?;
        let s_plus = action_s(&nu_plus, alpha, v)?;
        let derivatives = (1..=6)
            .map(|k| action_derivative(k, &nu_minus, alpha, v))
            .collect::<Result<Vec<_>>>()?;
        let (b_hat1, b_hat2) = b_hat_coeffs(alpha, v)?;
        Ok(Self { nu_minus, nu_plus, s_minus, s_plus, derivatives, b_hat1, b_hat2 })
    }

    /// `S″(ν₋)` from its closed form `((1−v)ν₋ + 1 + v)/(ν₋²(1−ν₋))`.
    pub fn second_derivative_closed(&self, v: &T) -> T {
        let one = T::one();
        let n = self.nu_minus.clone();
        ((one.clone() - v.clone()) * n.clone() + one.clone() + v.clone()) / (n.square() * (one - n))
    }

    /// Decay rate `2S(ν₋) + ((1−v)/v) log α` of `Tr K` in `s`; negative in the ordered regime.
    pub fn rate(&self, alpha: &T, v: &T) -> T {
        T::from_i64(2) * self.s_minus.clone() + (T::one() - v.clone()) / v.clone() * alpha.ln()
    }
}

/// Saddle-point value of `Tr K` for `(r, s, 0)` with `r = s/v`, through `s^{−order}`.
pub fn tr_k_saddle<T: Real>(p: &EfpParams, alpha: &ExactRational, order: usize) -> Result<T> {
    p.require_q_zero("saddle-point trace")?;
    p.require_nonempty("saddle-point trace")?;
    if order > 2 {
        return Err(EfpError::Domain { what: "saddle-point order", detail: format!("order {order} exceeds 2") });
    }
    let g = GeometryParams::<T>::from_exact(alpha, &p.v())?;
    g.require(Regime::Ordered, "the saddle-point trace")?;
    let d = SaddleData::new(&g.alpha, &g.v)?;
    let s = T::from_i64(p.s as i64);
    let one = T::one();
    let nm = d.nu_minus.clone();
    let f = one.clone() / (one.clone() - g.alpha.clone() * nm.square()).square();
    let mut corr = one;
    if order >= 1 {
        corr = corr + d.b_hat1.clone() / s.clone();
    }
    if order >= 2 {
        corr = corr + d.b_hat2.clone() / s.square();
    }
    let expo = s.clone() * d.rate(&g.alpha, &g.v) - s.ln();
    Ok(g.alpha.clone() / (T::from_i64(2) * T::pi()) * f / d.derivatives[1].clone() * expo.exp() * corr)
}
