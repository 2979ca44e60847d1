//! Expansions of the EFP at the critical points α = 1 and α = 0, the Hahn
//! polynomial constant `C_{r,s}` and its large-`s` form through Barnes G.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::efp::{efp_polynomial, hankel_det, EfpParams};
use crate::error::{EfpError, Result};
use crate::exact::{bernoulli, binomial, binomial_int, factorial, int, rat, ExactRational, Polynomial};
use crate::geometry::{ln_bigint, ln_rational};
use crate::scalar::Real;

type QPoly = Polynomial<ExactRational>;

/// `C_{r,s} = ∏_{j=0}^{s−1} (j+r)!(j!)² / ((r−j−1)!(2j)!(2j+1)!)`.
pub fn crs_constant(r: u32, s: u32) -> Result<ExactRational> {
    if s < 1 || s > r {
        return Err(EfpError::Domain {
            what: "crs_constant",
            detail: format!("requires 1 ≤ s ≤ r, got r = {r}, s = {s}"),
        });
    }
    let (r, s) = (r as u64, s as u64);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..s {
        num *= factorial(j + r) * factorial(j).pow(2);
        den *= factorial(r - j - 1) * factorial(2 * j) * factorial(2 * j + 1);
    }
    Ok(ExactRational::new(num, den))
}

/// Norm and recurrence data of the monic Hahn polynomial `p_n` on `{0, …, r−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HahnData {
    pub r: u32,
    pub n: u32,
    /// `h_n = (n!)⁴ (r+n)! / ((2n)! (2n+1)! (r−n−1)!)`.
    pub h_n: ExactRational,
    /// `h_n / h_{n−1} = n²(r² − n²)/(4(4n² − 1))`, zero for `n = 0`.
    pub ratio: ExactRational,
}

pub fn hahn_data(r: u32, n: u32) -> Result<HahnData> {
    if n >= r {
        return Err(EfpError::Domain {
            what: "hahn_data",
            detail: format!("requires n < r, got n = {n}, r = {r}"),
        });
    }
    let (rr, nn) = (r as u64, n as u64);
    let h_n = ExactRational::new(
        factorial(nn).pow(4) * factorial(rr + nn),
        factorial(2 * nn) * factorial(2 * nn + 1) * factorial(rr - nn - 1),
    );
    Ok(HahnData { r, n, h_n, ratio: hahn_ratio(r, n) })
}

fn hahn_ratio(r: u32, n: u32) -> ExactRational {
    let (r, n) = (r as i64, n as i64);
    if n == 0 {
        return ExactRational::zero();
    }
    rat(n * n * (r * r - n * n), 4 * (4 * n * n - 1))
}

/// Monic Hahn polynomial `p_n(x)` from `x p_n = p_{n+1} + ((r−1)/2) p_n + (h_n/h_{n−1}) p_{n−1}`.
pub fn hahn_polynomial(n: u32, r: u32) -> Result<QPoly> {
    if n >= r {
        return Err(EfpError::Domain {
            what: "hahn_polynomial",
            detail: format!("requires n < r, got n = {n}, r = {r}"),
        });
    }
    let shift = QPoly::linear(rat(-(r as i64 - 1), 2), int(1));
    let mut prev = QPoly::zero();
    let mut cur = QPoly::one();
    for k in 0..n {
        let next = &(&shift * &cur) - &prev.scale(&hahn_ratio(r, k));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

pub fn hahn_eval(n: u32, x: &ExactRational, r: u32) -> Result<ExactRational> {
    Ok(hahn_polynomial(n, r)?.eval(x))
}

/// `(c₁, c₂)` of `det H(α)/det H(1) = 1 + c₁(1−α) + (c₂/2)(1−α)² + …`.
///
/// The closed forms are checked against the recentred exact determinant.
pub fn taylor_alpha1_coeffs(p: &EfpParams) -> Result<(ExactRational, ExactRational)> {
    p.require_q_zero("taylor_alpha1_coeffs")?;
    p.require_nonempty("taylor_alpha1_coeffs")?;
    let formula = alpha1_coeffs_formula(p.r, p.s);
    let exact = alpha1_coeffs_exact(p)?;
    if formula != exact {
        return Err(EfpError::Mismatch {
            what: "Hankel determinant Taylor coefficients at α = 1",
            detail: format!("formula {formula:?} vs exact {exact:?}"),
        });
    }
    Ok(formula)
}

pub fn alpha1_coeffs_formula(r: u32, s: u32) -> (ExactRational, ExactRational) {
    let (r, s) = (r as i64, s as i64);
    let c1 = rat(-s * (r - 1), 2);
    let c2 = &c1 + rat(s * s * (1 - 2 * r + s * s), 4) + rat(s.pow(4) * (r * r - s * s), 4 * s * s - 1);
    (c1, c2)
}

/// `(c₁, c₂)` read off the Hankel determinant expanded at α = 1.
pub fn alpha1_coeffs_exact(p: &EfpParams) -> Result<(ExactRational, ExactRational)> {
    // with α = 1 + t, (1−α) = −t
    let d = hankel_det(p)?.recenter(&int(1));
    let d0 = d.coeff(0);
    if d0.is_zero() {
        return Err(EfpError::Domain {
            what: "alpha1_coeffs_exact",
            detail: "singular Hankel matrix at α = 1".into(),
        });
    }
    let c1 = -d.coeff(1) / &d0;
    let c2 = int(2) * d.coeff(2) / &d0;
    Ok((c1, c2))
}

/// First three coefficients of `F / (C_{r,s} (1−α)^{s²})` in powers of `1−α`.
pub fn taylor_alpha1_efp(p: &EfpParams) -> Result<[ExactRational; 3]> {
    p.require_q_zero("taylor_alpha1_efp")?;
    p.require_nonempty("taylor_alpha1_efp")?;
    let formula = alpha1_efp_formula(p.r, p.s);
    let exact = alpha1_efp_exact(p, 3)?;
    if formula[..] != exact[..] {
        return Err(EfpError::Mismatch {
            what: "EFP expansion at α = 1",
            detail: format!("formula {formula:?} vs exact {exact:?}"),
        });
    }
    Ok(formula)
}

pub fn alpha1_efp_formula(r: u32, s: u32) -> [ExactRational; 3] {
    let (r, s) = (r as i64, s as i64);
    [
        int(1),
        rat(-s * (r - s), 2),
        rat(s * (r - s) * (2 * s.pow(3) * r - 2 * s.pow(4) - 3 * s * s + 1), 4 * (4 * s * s - 1)),
    ]
}

/// Coefficients of `F / (C_{r,s}(1−α)^{s²})` in powers of `τ = 1−α`, read
/// off the exact polynomial. Fails if lower powers of `τ` do not vanish.
pub fn alpha1_efp_exact(p: &EfpParams, terms: usize) -> Result<Vec<ExactRational>> {
    let f = efp_polynomial(p)?;
    let s2 = (p.s * p.s) as usize;
    // F(1 − τ)
    let g = f.recenter(&int(1)).dilate(&int(-1));
    if g.valuation() != Some(s2) {
        return Err(EfpError::Mismatch {
            what: "order of the zero of F at α = 1",
            detail: format!("expected {s2}, found {:?}", g.valuation()),
        });
    }
    let c = crs_constant(p.r, p.s)?;
    if g.coeff(s2) != c {
        return Err(EfpError::Mismatch {
            what: "C_{r,s}",
            detail: format!("product formula {c} vs exact {}", g.coeff(s2)),
        });
    }
    Ok((0..terms).map(|k| g.coeff(s2 + k) / &c).collect())
}

/// Leading correction at α → 0: `F = 1 − c·α^e + …` with
/// `e = r−s+1`, `c = C(r,s−1)·C(r+q,s+q−1)`, checked against the exact polynomial.
pub fn taylor_alpha0_efp(p: &EfpParams) -> Result<(u32, ExactRational)> {
    p.require_nonempty("taylor_alpha0_efp")?;
    let formula = alpha0_formula(p);
    let exact = alpha0_exact(&efp_polynomial(p)?)?;
    if formula != exact {
        return Err(EfpError::Mismatch {
            what: "EFP expansion at α = 0",
            detail: format!("formula {formula:?} vs exact {exact:?}"),
        });
    }
    Ok(formula)
}

pub fn alpha0_formula(p: &EfpParams) -> (u32, ExactRational) {
    let c = binomial(p.r as u64, p.s as i64 - 1)
        * binomial((p.r + p.q) as u64, (p.s + p.q) as i64 - 1);
    (p.r - p.s + 1, c)
}

/// `(e, c)` with `F = 1 − c α^e + O(α^{e+1})` read off a polynomial.
pub fn alpha0_exact(f: &QPoly) -> Result<(u32, ExactRational)> {
    if f.coeff(0) != ExactRational::one() {
        return Err(EfpError::Mismatch {
            what: "F(0)",
            detail: format!("expected 1, found {}", f.coeff(0)),
        });
    }
    let e = (1..f.coeffs().len())
        .find(|&k| !f.coeff(k).is_zero())
        .ok_or_else(|| EfpError::Domain {
            what: "alpha0_exact",
            detail: "polynomial is constant".into(),
        })?;
    Ok((e as u32, -f.coeff(e)))
}

/// Large-`z` expansion of `log G(z+1)` through `z^{−2n}`.
pub fn barnes_log_g_asym<T: Real>(z: &T, n: usize) -> T {
    let lz = z.ln();
    let z2 = z.square();
    let mut v = z2.clone() / T::from_i64(2) * lz.clone() - T::from_ratio(3, 4) * z2.clone()
        + (T::from_i64(2) * T::pi()).ln() / T::from_i64(2) * z.clone()
        - lz / T::from_i64(12)
        + T::zeta_prime_minus_one();
    let mut zp = T::one();
    for k in 1..=n {
        zp = zp / z2.clone();
        let c = bernoulli(2 * k + 2) / ExactRational::from_integer(BigInt::from(4 * k * (k + 1)));
        v = v + T::from_rational(&c) * zp.clone();
    }
    v
}

/// `log G(k+1) = Σ_{j=1}^{k−1} log j!` for integer `k ≥ 0`.
pub fn log_barnes_g_exact<T: Real>(k: u64) -> T {
    let mut acc = BigInt::one();
    let mut fact = BigInt::one();
    for j in 1..k {
        fact *= BigInt::from(j);
        acc *= &fact;
    }
    ln_bigint(&acc)
}

/// Coefficient `𝓑_{2k}(v)` of `s^{−2k}` in the expansion of `log C_{r,s}`.
pub fn logc_coefficient(k: u32, v: &ExactRational) -> ExactRational {
    assert!(k >= 1, "expansion coefficients start at k = 1");
    let one = ExactRational::one();
    let kk = k as usize;
    let vk = num_traits::pow(v.clone(), 2 * kk);
    let inner = &vk / num_traits::pow(&one + v, 2 * kk) + &vk / num_traits::pow(&one - v, 2 * kk)
        - int(2) * &vk;
    let mut out = bernoulli(2 * kk + 2) * inner / int(4 * k as i64 * (k as i64 + 1));
    for m in 0..kk {
        let km = (kk - m) as i64;
        let den = ExactRational::from_integer(BigInt::from(2).pow(2 * m as u32 + 1) * BigInt::from(km * (km + 1)));
        out -= bernoulli(2 * (kk - m) + 2) / den * ExactRational::from_integer(binomial_int(2 * kk as u64 - 1, 2 * m as i64));
    }
    let k = k as i64;
    let den = BigInt::from(2).pow(2 * k as u32 + 3) * BigInt::from(3 * k * (k + 1) * (2 * k + 1));
    out - ExactRational::new(BigInt::from(4 * k * k + 6 * k - 1), den)
}

/// Closed form `𝓑₂ = −(1/8)(1/8 − (1+v²)/15 + v²(1+v²)/(15(1−v²)²))`.
pub fn logc_b2(v: &ExactRational) -> ExactRational {
    let v2 = v * v;
    let one = ExactRational::one();
    let w = &one - &v2;
    -rat(1, 8) * (rat(1, 8) - (&one + &v2) / int(15) + &v2 * (&one + &v2) / (int(15) * &w * &w))
}

/// Closed form `𝓑₄ = −v⁶(v⁶ − 4v⁴ + 5v² − 10)/(504(1−v²)⁴) + 31/16128`.
pub fn logc_b4(v: &ExactRational) -> ExactRational {
    let v2 = v * v;
    let v4 = &v2 * &v2;
    let v6 = &v4 * &v2;
    let w = ExactRational::one() - &v2;
    let w4 = num_traits::pow(w, 4);
    -(&v6 * (&v6 - int(4) * &v4 + int(5) * &v2 - int(10))) / (int(504) * w4) + rat(31, 16128)
}

/// Large-`s` expansion of `log C_{r,s}` at `v = s/r` through `s^{−2n}`.
pub fn log_crs_asym<T: Real>(s: u32, v: &ExactRational, n: u32) -> Result<T> {
    let one = ExactRational::one();
    if !v.is_positive() || v >= &one {
        return Err(EfpError::Domain {
            what: "log_crs_asym",
            detail: format!("v = {v} must lie in (0, 1)"),
        });
    }
    let r = ExactRational::from_integer(BigInt::from(s)) / v;
    if !r.is_integer() {
        return Err(EfpError::Domain {
            what: "log_crs_asym",
            detail: format!("r = s/v = {r} is not an integer"),
        });
    }
    let sv = T::from_i64(s as i64);
    let vt = T::from_rational(v);
    let lead = logc_leading::<T>(&vt);
    let mut out = -lead * sv.square() - sv.ln() / T::from_i64(12)
        - ln_rational::<T>(&((&one - v * v) / int(2)))? / T::from_i64(12)
        + T::zeta_prime_minus_one();
    for k in 1..=n {
        let b = match k {
            1 => logc_b2(v),
            2 => logc_b4(v),
            _ => logc_coefficient(k, v),
        };
        out = out + T::from_rational(&b) / sv.powi(2 * k as i32);
    }
    Ok(out)
}

/// `log 4v − ((1+v)²/2v²) log(1+v) − ((1−v)²/2v²) log(1−v)`.
pub fn logc_leading<T: Real>(v: &T) -> T {
    let one = T::one();
    let two_v2 = T::from_i64(2) * v.square();
    (T::from_i64(4) * v.clone()).ln()
        - (one.clone() + v.clone()).square() / two_v2.clone() * (one.clone() + v.clone()).ln()
        - (one.clone() - v.clone()).square() / two_v2 * (one - v.clone()).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::BigFloat;

    fn params(r: u32, s: u32, q: u32) -> EfpParams {
        EfpParams::new(r, s, q).unwrap()
    }

    #[test]
    fn crs_examples() {
        assert_eq!(crs_constant(2, 1).unwrap(), int(2));
        assert_eq!(crs_constant(1, 1).unwrap(), int(1));
        assert_eq!(crs_constant(2, 2).unwrap(), int(1));
        assert!(crs_constant(2, 3).is_err());
    }

    #[test]
    fn hahn_examples() {
        assert_eq!(hahn_eval(0, &rat(7, 3), 5).unwrap(), int(1));
        for r in 1..6 {
            let p1 = hahn_polynomial(1.min(r - 1), r).unwrap();
            if r > 1 {
                assert_eq!(p1, QPoly::linear(rat(-(r as i64 - 1), 2), int(1)));
            }
        }
        let h = hahn_data(4, 2).unwrap();
        let h1 = hahn_data(4, 1).unwrap();
        assert_eq!(&h.h_n / &h1.h_n, h.ratio);
    }

    #[test]
    fn alpha1_examples() {
        assert_eq!(taylor_alpha1_coeffs(&params(2, 1, 0)).unwrap(), (rat(-1, 2), int(0)));
        assert_eq!(taylor_alpha1_coeffs(&params(3, 2, 0)).unwrap().0, int(-2));
        assert_eq!(taylor_alpha1_efp(&params(2, 1, 0)).unwrap(), [int(1), rat(-1, 2), int(0)]);
        assert_eq!(taylor_alpha1_efp(&params(4, 4, 0)).unwrap(), [int(1), int(0), int(0)]);
        taylor_alpha1_efp(&params(3, 2, 0)).unwrap();
        assert!(taylor_alpha1_efp(&params(3, 2, 1)).is_err());
    }

    #[test]
    fn alpha0_examples() {
        assert_eq!(taylor_alpha0_efp(&params(2, 1, 0)).unwrap(), (2, int(1)));
        assert_eq!(taylor_alpha0_efp(&params(3, 2, 1)).unwrap(), (2, int(18)));
        assert_eq!(taylor_alpha0_efp(&params(1, 1, 0)).unwrap(), (1, int(1)));
    }

    #[test]
    fn logc_closed_forms_match_general_coefficient() {
        for v in [rat(1, 2), rat(1, 3), rat(2, 5), rat(7, 9)] {
            assert_eq!(logc_coefficient(1, &v), logc_b2(&v));
            assert_eq!(logc_coefficient(2, &v), logc_b4(&v));
        }
    }

    #[test]
    fn barnes_at_small_integers() {
        // G(3) = 1
        let err: f64 = barnes_log_g_asym(&2.0f64, 3);
        assert!(err.abs() < 1e-3);
        let exact: BigFloat = log_barnes_g_exact(20);
        let asym: BigFloat = barnes_log_g_asym(&BigFloat::from_i64(20), 2);
        assert!((exact - asym).abs().to_f64() < 1e-8);
    }
}
