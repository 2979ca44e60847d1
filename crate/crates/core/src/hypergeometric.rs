//! Terminating Gauss hypergeometric series and the closed-form exponentially
//! small correction to `log F_{r,s,0}` in the ordered regime.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::efp::EfpParams;
use crate::error::{EfpError, Result};
use crate::exact::{binomial_int, ExactRational, Polynomial};
use crate::geometry::{GeometryParams, Regime};
use crate::quadrature::integrate_doubling;
use crate::scalar::Real;

/// `₂F₁(a, b; c; x)` with `b` a nonpositive integer, so the series stops after `1 − b` terms.
#[derive(Clone, Debug, PartialEq)]
pub struct Hyp2F1Terminating {
    pub a: ExactRational,
    pub b: ExactRational,
    pub c: ExactRational,
}

impl Hyp2F1Terminating {
    pub fn new(a: ExactRational, b: ExactRational, c: ExactRational) -> Result<Self> {
        if !b.is_integer() || b.is_positive() {
            return Err(EfpError::Domain {
                what: "₂F₁",
                detail: format!("b = {b} must be a nonpositive integer"),
            });
        }
        let h = Self { a, b, c };
        for k in 0..h.terms() - 1 {
            let ck = &h.c + ExactRational::from_integer(BigInt::from(k));
            if ck.is_zero() {
                return Err(EfpError::Domain {
                    what: "₂F₁",
                    detail: format!("c = {} makes (c)_{} vanish before the series terminates", h.c, k + 1),
                });
            }
        }
        Ok(h)
    }

    /// Number of nonzero terms, `1 − b`.
    pub fn terms(&self) -> usize {
        1 + (-self.b.to_integer()).to_usize().unwrap_or(0)
    }

    /// The series as an exact polynomial in `x`.
    pub fn polynomial(&self) -> Polynomial<ExactRational> {
        let mut coeffs = Vec::with_capacity(self.terms());
        let mut term = ExactRational::one();
        for k in 0..self.terms() {
            coeffs.push(term.clone());
            if k + 1 == self.terms() {
                break;
            }
            let kq = ExactRational::from_integer(BigInt::from(k));
            term = term * (&self.a + &kq) * (&self.b + &kq)
                / ((&self.c + &kq) * (&kq + ExactRational::one()));
        }
        Polynomial::new(coeffs)
    }

    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        self.polynomial().eval(x)
    }
}

/// `Σ_{k ≤ −b} (a)_k (b)_k / ((c)_k k!) x^k` at an exact `x`.
pub fn gauss2f1_terminating(
    a: &ExactRational,
    b: &ExactRational,
    c: &ExactRational,
    x: &ExactRational,
) -> Result<ExactRational> {
    Ok(Hyp2F1Terminating::new(a.clone(), b.clone(), c.clone())?.eval(x))
}

/// The same series as a polynomial in its argument.
pub fn gauss2f1_polynomial(
    a: &ExactRational,
    b: &ExactRational,
    c: &ExactRational,
) -> Result<Polynomial<ExactRational>> {
    Ok(Hyp2F1Terminating::new(a.clone(), b.clone(), c.clone())?.polynomial())
}

/// Integral form of `log F_{r,s,0}` through its first exponentially small term.
#[derive(Clone, Debug)]
pub struct OrderedCorrection<T> {
    pub value: T,
    /// Gauss–Legendre nodes used by the accepted estimate.
    pub nodes: usize,
    /// Change between the last two node counts.
    pub difference: T,
}

fn q(n: i64) -> ExactRational {
    ExactRational::from_integer(n.into())
}

/// The three hypergeometric polynomials entering the correction integrand.
fn correction_polys(p: &EfpParams) -> Result<[Polynomial<ExactRational>; 3]> {
    let (r, s) = (i64::from(p.r), i64::from(p.s));
    let e = r - s;
    Ok([
        gauss2f1_polynomial(&q(r), &q(-s), &q(1 + e))?,
        gauss2f1_polynomial(&q(r), &q(-s), &q(e))?,
        gauss2f1_polynomial(&q(1 + r), &q(1 - s), &q(2 + e))?,
    ])
}

/// Integrand `[F₁(t)²/(1−t) − κ F₂(t) F₃(t)] t^{r−s}` with `κ = (r−s)/(r−s+1)`.
pub fn correction_integrand<T: Real>(p: &EfpParams) -> Result<impl Fn(&T) -> T> {
    let polys = correction_polys(p)?;
    let [f1, f2, f3] = polys.map(|f| f.coeffs().iter().map(T::from_rational).collect::<Vec<T>>());
    let e = (p.r - p.s) as i32;
    let kappa = T::from_ratio(e as i64, e as i64 + 1);
    let horner = |c: &[T], t: &T| c.iter().rev().fold(T::zero(), |acc, x| acc * t.clone() + x.clone());
    Ok(move |t: &T| {
        let a = horner(&f1, t);
        let b = horner(&f2, t);
        let c = horner(&f3, t);
        (a.square() / (T::one() - t.clone()) - kappa.clone() * b * c) * t.powi(e)
    })
}

/// `−s² C(r,s)² ∫₀^α [integrand]`, the predicted `log F_{r,s,0}` in the ordered regime.
///
/// The quadrature doubles its node count until successive estimates differ by at most `tol`.
pub fn ordered_correction<T: Real>(p: &EfpParams, alpha: &ExactRational, tol: &T) -> Result<OrderedCorrection<T>> {
    p.require_q_zero("ordered correction")?;
    p.require_nonempty("ordered correction")?;
    let g = GeometryParams::<T>::from_exact(alpha, &p.v())?;
    g.require(Regime::Ordered, "the ordered correction")?;
    let f = correction_integrand::<T>(p)?;
    let quad = integrate_doubling(&T::zero(), &g.alpha, tol, 8, 1024, |t| f(t))?;
    let c = binomial_int(u64::from(p.r), i64::from(p.s));
    let scale = T::from_rational(&ExactRational::from_integer(c.clone() * c * BigInt::from(p.s).pow(2)));
    Ok(OrderedCorrection { value: -(scale * quad.value), nodes: quad.nodes, difference: quad.difference })
}

/// Default quadrature tolerance for [`ordered_correction`].
pub fn default_tolerance<T: Real>() -> T {
    T::from_i64(10).powi(-20)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::BigFloat;
    use crate::efp::efp_eval;
    use crate::exact::rat;
    use crate::fredholm::trace_k_at;
    use crate::geometry::ln_rational;

    #[test]
    fn small_series() {
        let x = rat(1, 2);
        assert_eq!(gauss2f1_terminating(&q(5), &q(0), &q(3), &x).unwrap(), rat(1, 1));
        let a = rat(7, 3);
        let c = rat(5, 2);
        assert_eq!(
            gauss2f1_terminating(&a, &q(-1), &c, &x).unwrap(),
            rat(1, 1) - a.clone() * x.clone() / c.clone()
        );
        assert_eq!(gauss2f1_terminating(&q(2), &q(-2), &q(3), &x).unwrap(), rat(11, 24));
        assert_eq!(gauss2f1_polynomial(&q(2), &q(-4), &q(1)).unwrap().degree(), Some(4));
    }

    #[test]
    fn bad_parameters() {
        assert!(gauss2f1_terminating(&q(1), &q(1), &q(1), &rat(1, 2)).is_err());
        assert!(gauss2f1_terminating(&q(1), &rat(-1, 2), &q(1), &rat(1, 2)).is_err());
        assert!(gauss2f1_terminating(&q(1), &q(-3), &q(-1), &rat(1, 2)).is_err());
        // (c)_k only matters up to the terminating index
        assert!(gauss2f1_terminating(&q(1), &q(-1), &q(-1), &rat(1, 2)).is_ok());
    }

    #[test]
    fn chu_vandermonde() {
        // ₂F₁(a, −n; c; 1) = (c−a)_n/(c)_n
        let (a, c, n) = (rat(3, 2), rat(7, 3), 5i64);
        let mut want = rat(1, 1);
        for k in 0..n {
            want = want * (c.clone() - a.clone() + q(k)) / (c.clone() + q(k));
        }
        assert_eq!(gauss2f1_terminating(&a, &q(-n), &c, &rat(1, 1)).unwrap(), want);
    }

    #[test]
    fn correction_against_exact() {
        let alpha = rat(1, 16);
        for (r, s) in [(4, 2), (8, 4)] {
            let p = EfpParams::new(r, s, 0).unwrap();
            let c = ordered_correction::<BigFloat>(&p, &alpha, &default_tolerance()).unwrap();
            let lf: BigFloat = ln_rational(&efp_eval(&p, &alpha).unwrap()).unwrap();
            let tr = BigFloat::from_rational(&trace_k_at(&p, &alpha).unwrap());
            let bound = BigFloat::from_i64(10) * tr.square();
            assert!((c.value.clone() - lf).abs() <= bound);
            assert!((c.value + tr).abs() < BigFloat::from_ratio(1, 10).powi(18));
        }
        let p = EfpParams::new(4, 2, 0).unwrap();
        assert!(ordered_correction::<f64>(&p, &rat(1, 2), &1e-12).is_err());
    }

    #[test]
    fn integrand_positive() {
        let p = EfpParams::new(8, 4, 0).unwrap();
        let f = correction_integrand::<f64>(&p).unwrap();
        for k in 1..=64 {
            let t = f64::from(k) / 64.0 / 16.0;
            assert!(f(&t) > 0.0, "t = {t}");
        }
    }
}
