//! Large-`s` expansion of `log(1 − F_{r,s,0})` in the ordered regime `v < u`.

use crate::disordered::check_dual;
use crate::efp::{efp_eval, EfpParams};
use crate::error::{EfpError, Result};
use crate::exact::{bernoulli, binomial_int, ExactRational};
use crate::geometry::{alpha_of_u, beta_of_v, ln_bigint, ln_rational, u_of_alpha, AsymSeries, GeometryParams, Regime};
use crate::quadrature::integrate_doubling;
use crate::scalar::Real;
use num_traits::{One, Signed};

fn two<T: Real>() -> T {
    T::from_i64(2)
}

fn check_ordered<T: Real>(u: &T, v: &T, what: &'static str) -> Result<()> {
    if !(*v > T::zero() && *v < *u && *u < T::one()) {
        return Err(EfpError::Domain {
            what,
            detail: format!("requires 0 < v < u < 1, got u = {u}, v = {v}"),
        });
    }
    Ok(())
}

fn check_alpha<T: Real>(alpha: &T, v: &T, what: &'static str) -> Result<T> {
    let beta = beta_of_v(v);
    if !(*alpha > T::zero() && *alpha < beta && *v > T::zero() && *v < T::one()) {
        return Err(EfpError::Domain {
            what,
            detail: format!("requires 0 < α < β, got α = {alpha}, β = {beta}"),
        });
    }
    Ok(beta)
}

/// Rate `χ(u, v)` of the exponential decay `1 − F ≈ e^{−χ s}`:
/// `(4/v) log((√(1−vu) + √(u(u−v)))/√(1−u²)) − 4 log((√(u(1−vu)) + √(u−v))/√((1−u²)v))`.
pub fn chi<T: Real>(u: &T, v: &T) -> Result<T> {
    if u == v && *u > T::zero() && *u < T::one() {
        return Ok(T::zero());
    }
    check_ordered(u, v, "χ")?;
    let one = T::one();
    let four = T::from_i64(4);
    let w = one.clone() - v.clone() * u.clone();
    let d = one.clone() - u.square();
    let first = ((w.sqrt() + (u.clone() * (u.clone() - v.clone())).sqrt()) / d.sqrt()).ln();
    let second = (((u.clone() * w).sqrt() + (u.clone() - v.clone()).sqrt()) / (d * v.clone()).sqrt()).ln();
    Ok(four.clone() / v.clone() * first - four * second)
}

/// `χ` in `(α, β)` variables, first logarithmic form.
pub fn chi_long<T: Real>(alpha: &T, v: &T) -> Result<T> {
    let beta = check_alpha(alpha, v, "χ")?;
    let one = T::one();
    let sb = beta.sqrt();
    let sa = alpha.sqrt();
    let sq = ((one.clone() - alpha.clone()) * (beta - alpha.clone())).sqrt();
    let k = (one.clone() + sb.clone()) / (one.clone() - sb.clone());
    Ok(two::<T>() * k
        * ((sb.clone() + alpha.clone() + sq.clone()) / ((one.clone() + sb.clone()) * sa.clone())).ln()
        - two::<T>() * ((sb.clone() - alpha.clone() + sq) / ((one - sb) * sa)).ln())
}

/// `χ` in `(α, β)` variables, second logarithmic form.
pub fn chi_long2<T: Real>(alpha: &T, v: &T) -> Result<T> {
    let beta = check_alpha(alpha, v, "χ")?;
    let one = T::one();
    let four = T::from_i64(4);
    let sb = beta.sqrt();
    let sa = alpha.sqrt();
    let p = one.clone() + sa.clone();
    let m = one.clone() - sa.clone();
    let bp = sb.clone() + sa.clone();
    let bm = sb.clone() - sa.clone();
    let first = (((p.clone() * bp.clone()).sqrt() + (m.clone() * bm.clone()).sqrt())
        / (two::<T>() * (one.clone() + sb.clone()) * sa.clone()).sqrt())
    .ln();
    let second = (((m * bp).sqrt() + (p * bm).sqrt()) / (two::<T>() * (one.clone() - sb.clone()) * sa).sqrt()).ln();
    Ok(four.clone() * (one.clone() + sb.clone()) / (one - sb) * first - four * second)
}

/// `χ = (2/(1−√β)) ∫_α^β √((β−t)/(1−t)) dt/t`, evaluated after `t = β − x²`
/// to remove the square-root endpoint singularity.
pub fn chi_integral<T: Real>(alpha: &T, v: &T, tol: &T) -> Result<T> {
    let beta = check_alpha(alpha, v, "χ")?;
    let one = T::one();
    let top = (beta.clone() - alpha.clone()).sqrt();
    let q = integrate_doubling(&T::zero(), &top, tol, 16, 4096, |x| {
        let x2 = x.square();
        two::<T>() * x2.clone() / ((beta.clone() - x2.clone()) * (one.clone() - beta.clone() + x2).sqrt())
    })?;
    Ok(two::<T>() / (one - beta.sqrt()) * q.value)
}

/// `χ′(α) = −(1/vα)√(((1−v)² − (1+v)²α)/(1−α))`.
pub fn chi_prime<T: Real>(alpha: &T, v: &T) -> Result<T> {
    check_alpha(alpha, v, "χ′")?;
    let one = T::one();
    let w = (one.clone() - v.clone()).square() - (one.clone() + v.clone()).square() * alpha.clone();
    Ok(-(w / (one - alpha.clone())).sqrt() / (v.clone() * alpha.clone()))
}

/// Residual of `α²(α−1)χ′² = ((1+v)²α − (1−v)²)/v²` on the closed form of `χ′`.
pub fn chi_ode_residual<T: Real>(alpha: &T, v: &T) -> Result<T> {
    let d = chi_prime(alpha, v)?;
    let one = T::one();
    let rhs = ((one.clone() + v.clone()).square() * alpha.clone() - (one.clone() - v.clone()).square()) / v.square();
    Ok(alpha.square() * (alpha.clone() - one) * d.square() - rhs)
}

/// Coefficients `b₀, b₁, b₂` of the ordered expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderedCoefficients<T> {
    pub b0: T,
    pub b1: T,
    pub b2: T,
}

fn w_of<T: Real>(alpha: &T, v: &T) -> T {
    let one = T::one();
    (one.clone() - v.clone()).square() - alpha.clone() * (one + v.clone()).square()
}

/// `b₀, b₁, b₂` in `(α, v)` variables.
pub fn b_coeffs_alpha_v<T: Real>(alpha: &T, v: &T) -> Result<OrderedCoefficients<T>> {
    check_alpha(alpha, v, "b-coefficients")?;
    let one = T::one();
    let w = w_of(alpha, v);
    let w32 = w.clone() * w.sqrt();
    let om = one.clone() - alpha.clone();
    let v2 = v.square();
    let b0 = (alpha.clone() * v2.clone() / (two::<T>() * T::pi() * om.sqrt() * w32.clone())).ln();
    let b1 = -((one.clone() + v2.square()) * om.square()
        + T::from_i64(9) * (v.clone() + v.powi(3)) * (one.clone() - alpha.square())
        - two::<T>() * v2.clone() * (T::from_i64(10) * alpha.square() - T::from_i64(11) * alpha.clone() + T::from_i64(10)))
        / (T::from_i64(6) * om.sqrt() * w32);
    let a = alpha.clone();
    let b2 = v2.clone() / (om.clone() * w.powi(3))
        * ((a.square() + T::from_i64(8) * a.clone() + one.clone()) * om.square() * (v2.square() + one.clone())
            - T::from_i64(4) * om.clone() * (a.powi(3) + one.clone()) * (v.powi(3) + v.clone())
            + T::from_i64(6) * om.powi(4) * v2.clone()
            + T::from_i64(4) * a.clone() * (a.square() + a + one) * v2);
    Ok(OrderedCoefficients { b0, b1, b2 })
}

/// `b₀, b₁, b₂` in `(u, v)` variables.
pub fn b_coeffs_uv<T: Real>(u: &T, v: &T) -> Result<OrderedCoefficients<T>> {
    check_ordered(u, v, "b-coefficients")?;
    let one = T::one();
    let uv = (u.clone() - v.clone()) * (one.clone() - u.clone() * v.clone());
    let uv32 = uv.clone() * uv.sqrt();
    let v2 = v.square();
    let u2 = u.square();
    let su = u.sqrt();
    let b0 = (v2.clone() * (one.clone() - u2.clone()).square()
        / (T::from_i64(32) * T::pi() * su.clone() * uv32.clone()))
    .ln();
    let b1 = (T::from_i64(9) * v2.clone() * (one.clone() + u2.square())
        - T::from_i64(36) * v.clone() * u.clone() * (one.clone() + v2.clone()) * (one.clone() + u2.clone())
        - (T::from_i64(8) - T::from_i64(142) * v2.clone() + T::from_i64(8) * v2.square()) * u2.clone())
        / (T::from_i64(48) * su * uv32);
    let b2 = v2.clone() / (T::from_i64(64) * u.clone() * uv.powi(3))
        * (T::from_i64(3) * v2.clone() * (u.powi(8) + one.clone())
            - T::from_i64(8) * v.clone() * u.clone() * (v2.clone() + one.clone()) * (u.powi(6) + one.clone())
            + T::from_i64(4)
                * u2.clone()
                * (T::from_i64(10) * v2.square() + v2.clone() + T::from_i64(10))
                * (u2.square() + one.clone())
            - T::from_i64(120) * v.clone() * u.powi(3) * (v2.clone() + one.clone()) * (u2.clone() + one)
            - (T::from_i64(16) * v2.square() - T::from_i64(370) * v2 + T::from_i64(16)) * u2.square());
    Ok(OrderedCoefficients { b0, b1, b2 })
}

/// `b₀, b₁, b₂` at `(α, v)`, cross-checked between the `(α, v)` and `(u, v)` forms.
pub fn b_coeffs<T: Real>(alpha: &T, v: &T) -> Result<OrderedCoefficients<T>> {
    let av = b_coeffs_alpha_v(alpha, v)?;
    let uv = b_coeffs_uv(&u_of_alpha(alpha), v)?;
    check_dual("b₀", &av.b0, &uv.b0)?;
    check_dual("b₁", &av.b1, &uv.b1)?;
    check_dual("b₂", &av.b2, &uv.b2)?;
    Ok(av)
}

/// Rate and coefficients of the ordered expansion at one geometry.
#[derive(Clone, Debug)]
pub struct OrderedExpansion<T> {
    pub chi: T,
    pub b: [T; 3],
    pub geometry: GeometryParams<T>,
}

impl<T: Real> OrderedExpansion<T> {
    pub fn new(geometry: GeometryParams<T>) -> Result<Self> {
        geometry.require(Regime::Ordered, "the ordered expansion")?;
        let chi = chi(&geometry.u, &geometry.v)?;
        let c = b_coeffs(&geometry.alpha, &geometry.v)?;
        Ok(Self { chi, b: [c.b0, c.b1, c.b2], geometry })
    }

    pub fn series(&self, n: usize) -> Result<AsymSeries<T>> {
        if n > 2 {
            return Err(EfpError::Domain {
                what: "ordered expansion order",
                detail: format!("n = {n} exceeds the available order 2"),
            });
        }
        let corrections = (1..=n).map(|k| (k as u32, self.b[k].clone())).collect();
        Ok(AsymSeries {
            regime: Regime::Ordered,
            rate: self.chi.clone(),
            rate_power: 1,
            log_coefficient: -T::one(),
            constant: self.b[0].clone(),
            corrections,
            order: n,
            error_exponent: -(n as i32 + 1),
        })
    }
}

/// Ordered expansion of `log(1 − F_{r,s,0})` through `s^{−n}`.
pub fn ordered_series<T: Real>(p: &EfpParams, alpha: &ExactRational, n: usize) -> Result<AsymSeries<T>> {
    p.require_q_zero("ordered expansion")?;
    p.require_nonempty("ordered expansion")?;
    let g = GeometryParams::<T>::from_exact(alpha, &p.v())?;
    OrderedExpansion::new(g)?.series(n)
}

/// `log(1 − F_{r,s,0})` predicted by the ordered expansion at order `n ≤ 2`.
pub fn log1m_f_ordered<T: Real>(p: &EfpParams, alpha: &ExactRational, n: usize) -> Result<T> {
    let series = ordered_series::<T>(p, alpha, n)?;
    Ok(series.eval(&T::from_i64(p.s as i64)).value)
}

/// `log(1 − F)` with `1 − F` formed exactly before the logarithm.
pub fn log1m_f_exact<T: Real>(p: &EfpParams, alpha: &ExactRational) -> Result<T> {
    let f = efp_eval(p, alpha)?;
    let d = ExactRational::one() - f;
    if !d.is_positive() {
        return Err(EfpError::Domain {
            what: "log(1 − F)",
            detail: format!("1 − F = {d} is not positive"),
        });
    }
    ln_rational(&d)
}

/// Large-`s` expansion of `2 log C(r, s−1)` with `r = s/v`, truncated after `m` Bernoulli terms.
pub fn log_binom_asym<T: Real>(s: &T, v: &T, m: usize) -> Result<T> {
    if !(*v > T::zero() && *v < T::one()) || *s <= T::zero() {
        return Err(EfpError::Domain {
            what: "log-binomial expansion",
            detail: format!("requires s > 0 and 0 < v < 1, got s = {s}, v = {v}"),
        });
    }
    let one = T::one();
    let w = one.clone() - v.clone();
    let x = v.clone() / w.clone();
    let mut acc = -two::<T>() * (v.ln() + w.clone() / v.clone() * w.ln()) * s.clone() - s.ln()
        + (v.square() / (two::<T>() * T::pi() * w.powi(3))).ln();
    for n in 1..=m {
        let b2n = bernoulli(2 * n);
        let bn = T::from_rational(&b2n);
        let k = 2 * n as i32 - 1;
        let num = bn.clone() * v.powi(k) - (bn.clone() + T::from_i64(2 * n as i64)) * x.powi(k) - bn;
        acc = acc + num / (T::from_i64((n * (2 * n - 1)) as i64) * s.powi(k));
    }
    for k in 1..=m {
        acc = acc + x.powi(2 * k as i32) / (T::from_i64(k as i64) * s.powi(2 * k as i32));
    }
    Ok(acc)
}

/// Exact `2 log C(r, s−1)`.
pub fn log_binom_exact<T: Real>(r: u32, s: u32) -> Result<T> {
    if s == 0 || s - 1 > r {
        return Err(EfpError::Domain {
            what: "log-binomial",
            detail: format!("C({r}, {}) is zero", s as i64 - 1),
        });
    }
    Ok(two::<T>() * ln_bigint::<T>(&binomial_int(r as u64, s as i64 - 1)))
}

/// `log(1−F) − (r−s+1) log α` at small exact `α`, which tends to `2 log C(r, s−1)`.
pub fn alpha0_anchor<T: Real>(p: &EfpParams, alpha: &ExactRational) -> Result<T> {
    let lf: T = log1m_f_exact(p, alpha)?;
    let la: T = ln_rational(alpha)?;
    Ok(lf - T::from_i64((p.r - p.s + 1) as i64) * la)
}

/// `α` where the ordered and disordered regimes meet for `v`: `u = v`.
pub fn transition_alpha<T: Real>(v: &T) -> T {
    alpha_of_u(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::BigFloat;
    use crate::exact::rat;
    use num_traits::Zero;

    fn tiny() -> BigFloat {
        BigFloat::from_ratio(1, 10).powi(30)
    }

    #[test]
    fn chi_forms_agree() {
        let alpha = BigFloat::from_ratio(1, 16);
        let v = BigFloat::from_ratio(1, 2);
        let u = u_of_alpha(&alpha);
        let a = chi(&u, &v).unwrap();
        let reference = <BigFloat as num_traits::Num>::from_str_radix("0.2792815309424665053750063681898139132526", 10).unwrap();
        assert!((a.clone() - reference).abs() < BigFloat::from_ratio(1, 10).powi(38));
        for b in [
            chi_long(&alpha, &v).unwrap(),
            chi_long2(&alpha, &v).unwrap(),
            chi_integral(&alpha, &v, &BigFloat::from_ratio(1, 10).powi(40)).unwrap(),
        ] {
            assert!((a.clone() - b).abs() < tiny());
        }
    }

    #[test]
    fn chi_boundary_and_small_alpha() {
        let v = BigFloat::from_ratio(1, 2);
        assert!(chi(&v, &v).unwrap().is_zero());
        let alpha = BigFloat::from_ratio(1, 10).powi(10);
        let u = u_of_alpha(&alpha);
        let one = BigFloat::from_i64(1);
        let lim = BigFloat::from_i64(2) * (v.ln() + (one.clone() - v.clone()) / v.clone() * (one - v.clone()).ln());
        let got = chi(&u, &v).unwrap() + alpha.ln();
        assert!((got - lim).abs() < BigFloat::from_ratio(1, 10).powi(8));
        assert!(chi(&BigFloat::from_ratio(1, 3), &v).is_err());
    }

    #[test]
    fn chi_ode() {
        for (a, v) in [((1, 16), (1, 2)), ((1, 10), (1, 3))] {
            let alpha = BigFloat::from_ratio(a.0, a.1);
            let v = BigFloat::from_ratio(v.0, v.1);
            assert!(chi_ode_residual(&alpha, &v).unwrap().abs() < tiny());
            assert!(chi_prime(&alpha, &v).unwrap() < BigFloat::from_i64(0));
        }
    }

    #[test]
    fn b_dual_forms() {
        for (a, v) in [((1, 16), (1, 2)), ((1, 10), (1, 4)), ((1, 100), (2, 3))] {
            let alpha = BigFloat::from_ratio(a.0, a.1);
            let v = BigFloat::from_ratio(v.0, v.1);
            let x = b_coeffs_alpha_v(&alpha, &v).unwrap();
            let y = b_coeffs_uv(&u_of_alpha(&alpha), &v).unwrap();
            assert!((x.b0 - y.b0).abs() < tiny());
            assert!((x.b1 - y.b1).abs() < tiny());
            assert!((x.b2 - y.b2).abs() < tiny());
        }
        // b₂(1/16, 1/2) is rational
        let b = b_coeffs(&BigFloat::from_ratio(1, 16), &BigFloat::from_ratio(1, 2)).unwrap();
        assert!((b.b2 - BigFloat::from_ratio(14253, 245)).abs() < tiny());
    }

    #[test]
    fn expansion_against_exact() {
        let alpha = rat(1, 16);
        let err = |s: u32| {
            let p = EfpParams::new(2 * s, s, 0).unwrap();
            let pred: BigFloat = log1m_f_ordered(&p, &alpha, 2).unwrap();
            (pred - log1m_f_exact::<BigFloat>(&p, &alpha).unwrap()).abs().to_f64()
        };
        let e4 = err(4);
        let e8 = err(8);
        assert!(e4 * 64.0 < 200.0);
        let ratio = e4 / e8;
        assert!((4.0..=16.0).contains(&ratio), "ratio {ratio}");
        let p = EfpParams::new(8, 4, 0).unwrap();
        assert!(log1m_f_ordered::<f64>(&p, &rat(1, 2), 2).is_err());
    }

    #[test]
    fn alpha0_anchor_limit() {
        let p = EfpParams::new(6, 3, 0).unwrap();
        let alpha = rat(1, 1_000_000_000_000);
        let got: BigFloat = alpha0_anchor(&p, &alpha).unwrap();
        let want: BigFloat = log_binom_exact(6, 3).unwrap();
        assert!((got - want).abs() < BigFloat::from_ratio(1, 10).powi(9));
    }

    #[test]
    fn log_binomial() {
        let v = BigFloat::from_ratio(1, 2);
        let err = |s: u32| {
            let a = log_binom_asym(&BigFloat::from_i64(s as i64), &v, 2).unwrap();
            (a - log_binom_exact::<BigFloat>(2 * s, s).unwrap()).abs().to_f64()
        };
        let (e8, e16) = (err(8), err(16));
        assert!(e8 < 8f64.powi(-3));
        assert!(e8 / e16 >= 8.0, "{}", e8 / e16);
        // leading rate at v = 1/2 is 4 log 2
        let one = BigFloat::from_i64(1);
        let lead = -BigFloat::from_i64(2) * (v.ln() + (one.clone() - v.clone()) / v.clone() * (one - v).ln());
        assert!((lead - BigFloat::from_i64(4) * BigFloat::from_i64(2).ln()).abs() < tiny());
    }
}
