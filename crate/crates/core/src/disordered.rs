//! Large-`s` expansion of `log F_{r,s,0}` in the disordered regime `v > u`.

use crate::efp::EfpParams;
use crate::error::{EfpError, Result};
use crate::exact::ExactRational;
use crate::geometry::{beta_of_v, u_of_alpha, AsymSeries, GeometryParams, Regime};
use crate::quadrature::integrate_doubling;
use crate::scalar::Real;

fn two<T: Real>() -> T {
    T::from_i64(2)
}

fn check_disordered<T: Real>(u: &T, v: &T, what: &'static str) -> Result<()> {
    if !(*u > T::zero() && *u < *v && *v <= T::one()) {
        return Err(EfpError::Domain {
            what,
            detail: format!("requires 0 < u < v ≤ 1, got u = {u}, v = {v}"),
        });
    }
    Ok(())
}

/// `x log x`, extended by zero at `x = 0`.
fn xlogx_like<T: Real>(coef: T, x: &T) -> T {
    if x.is_zero() {
        T::zero()
    } else {
        coef * x.ln()
    }
}

/// Rate `φ(u, v)` of the Gaussian decay `F ≈ e^{−φ s²}`:
/// `log(v/u) − ((1−v)²/2v²) log((1−v)/(1−u)) − ((1+v)²/2v²) log((1+v)/(1+u))`.
///
/// Returns exactly zero at the transition `v = u`.
pub fn phi<T: Real>(u: &T, v: &T) -> Result<T> {
    if u == v && *u > T::zero() && *u < T::one() {
        return Ok(T::zero());
    }
    check_disordered(u, v, "φ")?;
    let one = T::one();
    let two_v2 = two::<T>() * v.square();
    let a = (one.clone() - v.clone()).square() / two_v2.clone();
    let b = (one.clone() + v.clone()).square() / two_v2;
    let first = if *v == one {
        T::zero()
    } else {
        a * ((one.clone() - v.clone()) / (one.clone() - u.clone())).ln()
    };
    Ok((v.clone() / u.clone()).ln() - first
        - b * ((one.clone() + v.clone()) / (one + u.clone())).ln())
}

/// `φ` in `(α, v)` variables.
pub fn phi_alpha_v<T: Real>(alpha: &T, v: &T) -> Result<T> {
    let u = u_of_alpha(alpha);
    if u == *v {
        return Ok(T::zero());
    }
    check_disordered(&u, v, "φ")?;
    let one = T::one();
    let sa = alpha.sqrt();
    let v2 = v.square();
    let two_v2 = two::<T>() * v2.clone();
    Ok(-((one.clone() - sa.clone()) / two::<T>()).ln()
        - ((one.clone() + sa) / two::<T>()).ln() / v2.clone()
        + (one.clone() - v.clone()).square() / (T::from_i64(4) * v2) * alpha.ln()
        + v.ln()
        - (one.clone() + v.clone()).square() / two_v2.clone() * (one.clone() + v.clone()).ln()
        - xlogx_like((one.clone() - v.clone()).square() / two_v2, &(one - v.clone())))
}

/// `φ = ∫_β^α ((1−v)/2v − ((1+v)/2v)√t)² dt/(t(1−t))` by Gauss–Legendre.
pub fn phi_integral<T: Real>(alpha: &T, v: &T, tol: &T) -> Result<T> {
    let beta = beta_of_v(v);
    if *alpha <= beta {
        return Err(EfpError::Domain {
            what: "φ",
            detail: format!("requires α > β, got α = {alpha}, β = {beta}"),
        });
    }
    let one = T::one();
    let c1 = (one.clone() - v.clone()) / (two::<T>() * v.clone());
    let c2 = (one.clone() + v.clone()) / (two::<T>() * v.clone());
    let q = integrate_doubling(&beta, alpha, tol, 16, 4096, |t| {
        (c1.clone() - c2.clone() * t.sqrt()).square() / (t.clone() * (one.clone() - t.clone()))
    })?;
    Ok(q.value)
}

/// Constant and correction coefficients `a₀, a₂, a₄` of the disordered expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct DisorderedCoefficients<T> {
    pub a0: T,
    pub a2: T,
    pub a4: T,
}

fn log_c_constant<T: Real>(v: &T) -> T {
    -((T::one() - v.square()) / two::<T>()).ln() / T::from_i64(12) + T::zeta_prime_minus_one()
}

fn b2_block<T: Real>(v: &T) -> T {
    let one = T::one();
    let v2 = v.square();
    -(T::from_ratio(1, 8) - (one.clone() + v2.clone()) / T::from_i64(15)
        + v2.clone() * (one.clone() + v2.clone()) / (T::from_i64(15) * (one - v2).square()))
        / T::from_i64(8)
}

fn b4_block<T: Real>(v: &T) -> T {
    let v2 = v.square();
    let v4 = v2.square();
    let v6 = v4.clone() * v2.clone();
    -(v6.clone() * (v6 - T::from_i64(4) * v4 + T::from_i64(5) * v2.clone() - T::from_i64(10)))
        / (T::from_i64(504) * (T::one() - v2).powi(4))
        + T::from_ratio(31, 16128)
}

/// `a₀, a₂, a₄` from the closed forms in `(u, v)`.
pub fn a_coeffs_uv<T: Real>(u: &T, v: &T) -> Result<DisorderedCoefficients<T>> {
    check_disordered(u, v, "a-coefficients")?;
    if *v == T::one() {
        return Err(EfpError::Domain {
            what: "a-coefficients",
            detail: "pole at v = 1".into(),
        });
    }
    let one = T::one();
    let u2 = u.square();
    let v2 = v.square();
    let d = v2.clone() - u2.clone();
    let a0 = ((one.clone() - u2.clone()) * v2.clone() / d.clone()).ln() / T::from_i64(8)
        + log_c_constant(v);
    let a2 = u2.clone()
        * (one.clone() - v2.clone())
        * (two::<T>() * v2.square() + T::from_i64(5) * u2.clone() * v2.clone() - u2.square())
        / (T::from_i64(64) * d.clone().powi(3))
        - (one.clone() + v2.clone()) * (v2.clone() - (one.clone() - v2.clone()).square())
            / (T::from_i64(120) * (one.clone() - v2.clone()).square())
        - T::from_ratio(1, 64);
    let p = |x: &T, k: i32| x.powi(k);
    let bracket = T::from_i64(10) * p(v, 10) * u2.clone() - two::<T>() * p(v, 10)
        - T::from_i64(90) * p(v, 8) * u2.clone()
        + T::from_i64(140) * p(v, 8) * p(u, 4)
        + T::from_i64(105) * p(v, 6) * p(u, 6)
        - T::from_i64(160) * p(v, 6) * p(u, 4)
        - T::from_i64(4) * p(v, 4) * p(u, 8)
        + T::from_i64(5) * p(v, 4) * p(u, 6)
        - T::from_i64(6) * v2.clone() * p(u, 8)
        + v2.clone() * p(u, 10)
        + p(u, 10);
    let a4 = -u2 * (one - v2) / (T::from_i64(256) * d.powi(6)) * bracket
        - p(v, 6) * (p(v, 6) - T::from_i64(4) * p(v, 4) + T::from_i64(5) * v.square() - T::from_i64(10))
            / (T::from_i64(504) * (T::one() - v.square()).powi(4))
        + T::from_ratio(31, 16128);
    Ok(DisorderedCoefficients { a0, a2, a4 })
}

/// `a₀, a₂, a₄` from the closed forms in `(α, v)`.
pub fn a_coeffs_alpha_v<T: Real>(alpha: &T, v: &T) -> Result<DisorderedCoefficients<T>> {
    let u = u_of_alpha(alpha);
    check_disordered(&u, v, "a-coefficients")?;
    let one = T::one();
    let sa = alpha.sqrt();
    let v2 = v.square();
    let d = two::<T>() * (one.clone() + v2.clone()) * sa.clone()
        - (one.clone() - v2.clone()) * (one.clone() + alpha.clone());
    let a0 = (T::from_i64(4) * v2.clone() * sa.clone() / d.clone()).ln() / T::from_i64(8)
        + log_c_constant(v);
    let om = one.clone() - sa.clone();
    let op = one.clone() + sa.clone();
    let a2 = (one.clone() - v2.clone())
        * om.square()
        * (two::<T>() * op.powi(4) * v2.square()
            + T::from_i64(5) * (one.clone() - alpha.clone()).square() * v2.clone()
            - om.powi(4))
        / (T::from_i64(64) * d.powi(3))
        + b2_block(v);
    let p = |x: &T, k: i32| x.powi(k);
    let bracket = T::from_i64(8) * p(&op, 8) * (one.clone() - T::from_i64(3) * sa.clone() + alpha.clone()) * p(v, 10)
        + T::from_i64(10)
            * om.square()
            * p(&op, 6)
            * (T::from_i64(5) - T::from_i64(46) * sa.clone() + T::from_i64(5) * alpha.clone())
            * p(v, 8)
        - T::from_i64(5)
            * p(&(one.clone() - alpha.clone()), 4)
            * (T::from_i64(11) + T::from_i64(106) * sa.clone() + T::from_i64(11) * alpha.clone())
            * p(v, 6)
        + p(&om, 6) * op.square() * (one.clone() + T::from_i64(18) * sa.clone() + alpha.clone()) * p(v, 4)
        - p(&om, 8) * (T::from_i64(5) + T::from_i64(14) * sa.clone() + T::from_i64(5) * alpha.clone()) * v2.clone()
        + p(&om, 10);
    let a4 = -(one - v2) * om.square() / (T::from_i64(256) * d.powi(6)) * bracket + b4_block(v);
    Ok(DisorderedCoefficients { a0, a2, a4 })
}

/// Relative agreement required between two closed forms of the same coefficient.
pub(crate) fn dual_tolerance<T: Real>() -> T {
    // half the working precision leaves room for cancellation near poles
    let p = T::one().precision_bits() as i32;
    T::from_i64(2).powi(-(p / 2))
}

pub(crate) fn check_dual<T: Real>(what: &'static str, a: &T, b: &T) -> Result<()> {
    let scale = a.abs().max_of(b.abs()).max_of(T::one());
    if (a.clone() - b.clone()).abs() > dual_tolerance::<T>() * scale {
        return Err(EfpError::Mismatch {
            what,
            detail: format!("{a} vs {b}"),
        });
    }
    Ok(())
}

/// `a₀, a₂, a₄` at `(u, v)`, cross-checked between the two closed forms.
pub fn a_coeffs<T: Real>(u: &T, v: &T) -> Result<DisorderedCoefficients<T>> {
    let uv = a_coeffs_uv(u, v)?;
    let alpha = crate::geometry::alpha_of_u(u);
    let av = a_coeffs_alpha_v(&alpha, v)?;
    check_dual("a₀", &uv.a0, &av.a0)?;
    check_dual("a₂", &uv.a2, &av.a2)?;
    check_dual("a₄", &uv.a4, &av.a4)?;
    Ok(uv)
}

/// Disordered expansion of `log F_{r,s,0}` as a series in `s` through `s^{−2n}`.
pub fn disordered_series<T: Real>(p: &EfpParams, alpha: &ExactRational, n: usize) -> Result<AsymSeries<T>> {
    p.require_q_zero("disordered expansion")?;
    p.require_nonempty("disordered expansion")?;
    if n > 2 {
        return Err(EfpError::Domain {
            what: "disordered expansion order",
            detail: format!("n = {n} exceeds the available order 2"),
        });
    }
    let g = GeometryParams::<T>::from_exact(alpha, &p.v())?;
    g.require(Regime::Disordered, "the disordered expansion")?;
    let c = a_coeffs(&g.u, &g.v)?;
    let mut corrections = Vec::new();
    if n >= 1 {
        corrections.push((2, c.a2));
    }
    if n >= 2 {
        corrections.push((4, c.a4));
    }
    Ok(AsymSeries {
        regime: Regime::Disordered,
        rate: phi(&g.u, &g.v)?,
        rate_power: 2,
        log_coefficient: -T::from_ratio(1, 12),
        constant: c.a0,
        corrections,
        order: n,
        error_exponent: -(2 * n as i32 + 2),
    })
}

/// `log F_{r,s,0}` predicted by the disordered expansion at order `n ≤ 2`.
pub fn log_f_disordered<T: Real>(p: &EfpParams, alpha: &ExactRational, n: usize) -> Result<T> {
    let series = disordered_series::<T>(p, alpha, n)?;
    Ok(series.eval(&T::from_i64(p.s as i64)).value)
}

/// Residuals of the reduced equation for the `s²` coefficient of σ.
#[derive(Clone, Debug)]
pub struct Sigma2Residuals<T> {
    /// Second factor evaluated on `(σ₂)₋`.
    pub minus: T,
    /// Second factor evaluated on `(σ₂)₊`.
    pub plus: T,
    /// First (linear) factor on the general solution with `C = 1`.
    pub general_linear: T,
    /// Second factor on its general solution with `C = 1`.
    pub general_quadratic: T,
}

/// Checks the particular and general solutions of the reduced σ-equation
/// `[(1+v²)/4v² + σ₂ + (1−α)σ₂′]·[(1−v²)²/16v⁴ + σ₂′((1+v²)/4v² − σ₂ + ασ₂′)] = 0`.
pub fn sigma2_leading_check<T: Real>(alpha: &T, v: &T) -> Result<Sigma2Residuals<T>> {
    crate::geometry::check_open_unit("α", alpha)?;
    let one = T::one();
    let v2 = v.square();
    let k = (one.clone() + v2.clone()) / (T::from_i64(4) * v2.clone());
    let m = (one.clone() - v2.clone()) / (two::<T>() * v2.clone());
    let sa = alpha.sqrt();
    let second = |s: T, ds: T| {
        (one.clone() - v2.clone()).square() / (T::from_i64(16) * v2.square())
            + ds.clone() * (k.clone() - s + alpha.clone() * ds)
    };
    let minus = second(k.clone() - m.clone() * sa.clone(), -m.clone() / (two::<T>() * sa.clone()));
    let plus = second(k.clone() + m.clone() * sa.clone(), m.clone() / (two::<T>() * sa.clone()));
    // (σ₂)_I = C(α − 1) − (1+v²)/4v², σ₂′ = C
    let c = one.clone();
    let s1 = c.clone() * (alpha.clone() - one.clone()) - k.clone();
    let general_linear = k.clone() + s1 + (one.clone() - alpha.clone()) * c.clone();
    // (σ₂)_II = Cα + (1+v²)/4v² + (1−v²)²/(16v⁴C), σ₂′ = C
    let s2 = c.clone() * alpha.clone() + k.clone()
        + (one.clone() - v2.clone()).square() / (T::from_i64(16) * v2.square() * c.clone());
    let general_quadratic = second(s2, c);
    Ok(Sigma2Residuals { minus, plus, general_linear, general_quadratic })
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
    fn phi_forms_agree() {
        let alpha = BigFloat::from_ratio(1, 2);
        let v = BigFloat::from_ratio(1, 2);
        let u = u_of_alpha(&alpha);
        let a = phi(&u, &v).unwrap();
        let b = phi_alpha_v(&alpha, &v).unwrap();
        let c = phi_integral(&alpha, &v, &BigFloat::from_ratio(1, 10).powi(40)).unwrap();
        assert!((a.clone() - b).abs() < tiny());
        assert!((a.clone() - c).abs() < tiny());
        let reference = 0.210_029_721_234_262_04;
        assert!((a.to_f64() - reference).abs() < 1e-15);
    }

    #[test]
    fn phi_boundaries() {
        let u = BigFloat::from_ratio(1, 3);
        assert!(phi(&u, &u).unwrap().is_zero());
        let alpha = BigFloat::from_ratio(1, 4);
        let at_one = phi(&u, &BigFloat::from_i64(1)).unwrap();
        assert!((at_one.clone() + (BigFloat::from_i64(1) - alpha).ln()).abs() < tiny());
        let expected = ((BigFloat::from_i64(1) + u.clone()).square() / (BigFloat::from_i64(4) * u.clone())).ln();
        assert!((at_one - expected).abs() < tiny());
        assert!(phi(&BigFloat::from_ratio(1, 2), &BigFloat::from_ratio(1, 3)).is_err());
    }

    #[test]
    fn dual_forms() {
        let alpha = BigFloat::from_ratio(1, 2);
        let u = u_of_alpha(&alpha);
        for v in [BigFloat::from_ratio(1, 2), BigFloat::from_ratio(3, 4)] {
            let x = a_coeffs_uv(&u, &v).unwrap();
            let y = a_coeffs_alpha_v(&alpha, &v).unwrap();
            assert!((x.a0 - y.a0).abs() < tiny());
            assert!((x.a2 - y.a2).abs() < tiny());
            assert!((x.a4 - y.a4).abs() < tiny());
        }
    }

    #[test]
    fn a0_limit_structure() {
        // u → 0 removes the geometric part of a₀, leaving the log C_{r,s} constant
        let v = BigFloat::from_ratio(1, 2);
        let u = BigFloat::from_ratio(1, 10).powi(20);
        let c = a_coeffs_uv(&u, &v).unwrap();
        assert!((c.a0 - log_c_constant(&v)).abs() < BigFloat::from_ratio(1, 10).powi(30));
    }

    #[test]
    fn sigma2_residuals_vanish() {
        let r = sigma2_leading_check(&BigFloat::from_ratio(1, 4), &BigFloat::from_ratio(1, 2)).unwrap();
        for x in [r.minus, r.plus, r.general_linear, r.general_quadratic] {
            assert!(x.abs() < tiny(), "{x}");
        }
    }

    #[test]
    fn expansion_against_exact() {
        let p = EfpParams::new(16, 8, 0).unwrap();
        let alpha = rat(1, 2);
        let exact = crate::efp::efp_eval(&p, &alpha).unwrap();
        let pred: BigFloat = log_f_disordered(&p, &alpha, 2).unwrap();
        let err = (pred - crate::geometry::ln_rational::<BigFloat>(&exact).unwrap()).abs();
        assert!(err.to_f64() * 8f64.powi(6) < 1.0);
        assert!(log_f_disordered::<f64>(&p, &rat(1, 16), 2).is_err());
    }
}
