//! Fredholm determinant `F = det(1 − K)` on a small circle around the origin,
//! discretized by the Nyström method, and the exact trace of `K`.

use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::efp::EfpParams;
use crate::error::{EfpError, Result};
use crate::exact::{binomial, ExactRational, Polynomial};
use crate::scalar::Real;

type AlphaPoly = Polynomial<ExactRational>;

/// Coefficients `g_j(α)` of `(1−x)^{r+q}(1−αx)^{−r}` for `j ≤ n`, as polynomials in `α`.
fn g_polys(r: u32, q: u32, n: usize) -> Vec<AlphaPoly> {
    (0..=n)
        .map(|j| {
            let mut c = vec![ExactRational::zero(); j + 1];
            for i in 0..=j.min((r + q) as usize) {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let a = binomial(u64::from(r + q), i as i64) * ExactRational::from_integer(sign.into());
                let b = binomial(u64::from(r) + (j - i) as u64 - 1, (j - i) as i64);
                c[j - i] = a * b;
            }
            Polynomial::new(c)
        })
        .collect()
}

/// `E(λ) = Σ_k f_k λ^k` with coefficients polynomial in `α`: the polynomial part at
/// `ν = ∞` of `(ν−1)^{r+q} ν^s / (ν−α)^r`.
pub fn compute_e_poly(p: &EfpParams) -> Vec<AlphaPoly> {
    let d = (p.s + p.q) as usize;
    let g = g_polys(p.r, p.q, d);
    (0..=d).map(|k| g[d - k].clone()).collect()
}

/// `E(λ)` at an exact `α`, as a polynomial in `λ`.
pub fn compute_e(p: &EfpParams, alpha: &ExactRational) -> Polynomial<ExactRational> {
    Polynomial::new(compute_e_poly(p).iter().map(|f| f.eval(alpha)).collect())
}

fn cpow<T: Real>(z: &Complex<T>, n: u32) -> Complex<T> {
    let mut acc = Complex::new(T::one(), T::zero());
    let mut base = z.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    acc
}

fn real<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

fn two_pi_i<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::from_i64(2) * T::pi())
}

/// Exact data of the reduced kernel `K̃(λ,μ) = (E(λ)−E(μ))/(λ−μ) · w(μ)/(2πi)`
/// with `w(μ) = (μ−α)^r / ((μ−1)^{r+q} μ^s)`.
#[derive(Clone, Debug)]
pub struct KernelData {
    pub params: EfpParams,
    pub alpha: ExactRational,
    pub e: Polynomial<ExactRational>,
}

impl KernelData {
    pub fn new(params: EfpParams, alpha: ExactRational) -> Result<Self> {
        if !alpha.is_positive() || alpha >= ExactRational::one() {
            return Err(EfpError::Domain {
                what: "kernel",
                detail: format!("α = {alpha} must lie strictly between 0 and 1"),
            });
        }
        let e = compute_e(&params, &alpha);
        Ok(Self { params, alpha, e })
    }

    pub fn e_at<T: Real>(&self, lambda: &Complex<T>) -> Complex<T> {
        self.e.eval_in(lambda, |c| real(T::from_rational(c)))
    }

    pub fn e_prime_at<T: Real>(&self, lambda: &Complex<T>) -> Complex<T> {
        self.e.derivative().eval_in(lambda, |c| real(T::from_rational(c)))
    }

    pub fn weight<T: Real>(&self, mu: &Complex<T>) -> Complex<T> {
        let p = &self.params;
        let one = real(T::one());
        let a = real(T::from_rational(&self.alpha));
        cpow(&(mu.clone() - a), p.r) / (cpow(&(mu.clone() - one), p.r + p.q) * cpow(mu, p.s))
    }

    /// `E(λ)` from its defining contour integral on `|ν| = radius` with `m` trapezoid nodes.
    pub fn e_by_quadrature<T: Real>(&self, lambda: &Complex<T>, radius: &T, m: usize) -> Complex<T> {
        let p = &self.params;
        let one = real(T::one());
        let a = real(T::from_rational(&self.alpha));
        let step = T::from_i64(2) * T::pi() / T::from_i64(m as i64);
        let mut acc = Complex::new(T::zero(), T::zero());
        for j in 0..m {
            let t = step.clone() * T::from_i64(j as i64);
            let nu = Complex::new(radius.clone() * t.cos(), radius.clone() * t.sin());
            let f = cpow(&(nu.clone() - one.clone()), p.r + p.q) * cpow(&nu, p.s)
                / (cpow(&(nu.clone() - a.clone()), p.r) * (nu.clone() - lambda.clone()));
            acc = acc + f * nu;
        }
        acc / real(T::from_i64(m as i64))
    }
}

/// `K̃(λ, μ)`, with the confluent limit `E′(λ) w(λ)/(2πi)` on the diagonal.
pub fn reduced_kernel<T: Real>(kd: &KernelData, lambda: &Complex<T>, mu: &Complex<T>) -> Complex<T> {
    let dd = if lambda == mu {
        kd.e_prime_at(lambda)
    } else {
        (kd.e_at(lambda) - kd.e_at(mu)) / (lambda.clone() - mu.clone())
    };
    dd * kd.weight(mu) / two_pi_i()
}

/// Trapezoid nodes `ρ₀ e^{2πij/m}` on a circle around the origin.
#[derive(Clone, Debug)]
pub struct ContourGrid<T> {
    pub radius: ExactRational,
    pub m: usize,
    pub nodes: Vec<Complex<T>>,
    /// `2πi λ_j / m`, the measure `dλ` of each node.
    pub weights: Vec<Complex<T>>,
}

impl<T: Real> ContourGrid<T> {
    pub fn new(radius: ExactRational, m: usize) -> Result<Self> {
        if m < 8 {
            return Err(EfpError::Contour(format!("m = {m} nodes is below the minimum 8")));
        }
        if !radius.is_positive() {
            return Err(EfpError::Contour(format!("radius {radius} must be positive")));
        }
        let rho = T::from_rational(&radius);
        let step = T::from_i64(2) * T::pi() / T::from_i64(m as i64);
        let nodes: Vec<Complex<T>> = (0..m)
            .map(|j| {
                let t = step.clone() * T::from_i64(j as i64);
                Complex::new(rho.clone() * t.cos(), rho.clone() * t.sin())
            })
            .collect();
        let scale = two_pi_i::<T>() / real(T::from_i64(m as i64));
        let weights = nodes.iter().map(|z| z.clone() * scale.clone()).collect();
        Ok(Self { radius, m, nodes, weights })
    }

    /// Grid of radius `α/2`.
    pub fn standard(kd: &KernelData, m: usize) -> Result<Self> {
        Self::new(kd.alpha.clone() / ExactRational::from_integer(2.into()), m)
    }

    fn check_encloses(&self, kd: &KernelData) -> Result<()> {
        if self.radius >= kd.alpha {
            return Err(EfpError::Contour(format!(
                "radius {} does not separate the origin from α = {}",
                self.radius, kd.alpha
            )));
        }
        Ok(())
    }
}

/// Nyström matrix `A_{jk} = K̃(λ_j, λ_k)·dλ_k`.
///
/// Node data is evaluated up front so the row assembly only combines
/// precomputed values.
pub fn nystrom_matrix<T: Real>(kd: &KernelData, grid: &ContourGrid<T>) -> Result<Vec<Vec<Complex<T>>>> {
    grid.check_encloses(kd)?;
    let e: Vec<Complex<T>> = grid.nodes.iter().map(|z| kd.e_at(z)).collect();
    let de: Vec<Complex<T>> = grid.nodes.iter().map(|z| kd.e_prime_at(z)).collect();
    let tpi = two_pi_i::<T>();
    let col: Vec<Complex<T>> = grid
        .nodes
        .iter()
        .zip(&grid.weights)
        .map(|(z, w)| kd.weight(z) * w.clone() / tpi.clone())
        .collect();
    let nodes = &grid.nodes;
    Ok((0..grid.m)
        .into_par_iter()
        .map(|j| {
            (0..grid.m)
                .map(|k| {
                    let dd = if j == k {
                        de[j].clone()
                    } else {
                        (e[j].clone() - e[k].clone()) / (nodes[j].clone() - nodes[k].clone())
                    };
                    dd * col[k].clone()
                })
                .collect()
        })
        .collect())
}

fn norm1<T: Real>(z: &Complex<T>) -> T {
    z.re.abs() + z.im.abs()
}

/// Determinant by LU factorization with partial pivoting.
pub fn complex_det<T: Real>(mut a: Vec<Vec<Complex<T>>>) -> Result<Complex<T>> {
    let n = a.len();
    if n == 0 || a.iter().any(|row| row.len() != n) {
        return Err(EfpError::EmptyMatrix);
    }
    let mut det = Complex::new(T::one(), T::zero());
    for c in 0..n {
        let pivot = (c..n)
            .max_by(|&i, &j| norm1(&a[i][c]).partial_cmp(&norm1(&a[j][c])).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(c);
        if a[pivot][c].is_zero() {
            return Ok(Complex::new(T::zero(), T::zero()));
        }
        if pivot != c {
            a.swap(pivot, c);
            det = -det;
        }
        let (top, rest) = a.split_at_mut(c + 1);
        let prow = &top[c];
        let inv = Complex::new(T::one(), T::zero()) / prow[c].clone();
        for row in rest.iter_mut() {
            let f = row[c].clone() * inv.clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in row[c + 1..].iter_mut().zip(&prow[c + 1..]) {
                x.re.sub_mul_assign(&f.re, &y.re);
                x.re.add_mul_assign(&f.im, &y.im);
                x.im.sub_mul_assign(&f.re, &y.im);
                x.im.sub_mul_assign(&f.im, &y.re);
            }
        }
        det = det * prow[c].clone();
    }
    Ok(det)
}

/// Outcome of a Nyström evaluation of `det(1 − K)`.
#[derive(Clone, Debug)]
pub struct NystromResult<T> {
    pub value: T,
    /// Imaginary part of the discrete determinant; zero up to rounding for a well-placed contour.
    pub imag: T,
    pub m: usize,
    pub radius: ExactRational,
}

/// Largest imaginary part accepted from the discrete determinant.
pub fn imag_tolerance<T: Real>() -> T {
    let floor = T::from_i64(10).powi(-20);
    let eps = T::epsilon() * T::from_i64(1024);
    floor.max_of(eps)
}

/// `det(I − A)` from the matrix of [`nystrom_matrix`].
pub fn nystrom_det<T: Real>(kd: &KernelData, grid: &ContourGrid<T>) -> Result<NystromResult<T>> {
    let mut a = nystrom_matrix(kd, grid)?;
    for (j, row) in a.iter_mut().enumerate() {
        for (k, x) in row.iter_mut().enumerate() {
            *x = -x.clone();
            if j == k {
                x.re = x.re.clone() + T::one();
            }
        }
    }
    let d = complex_det(a)?;
    if d.im.abs() > imag_tolerance::<T>() {
        return Err(EfpError::Contour(format!(
            "imaginary part {} of det(1 − K) exceeds tolerance; check the contour radius and node count",
            d.im
        )));
    }
    Ok(NystromResult { value: d.re, imag: d.im, m: grid.m, radius: grid.radius.clone() })
}

/// Trace of the discretized kernel, `Σ_j A_{jj}`.
pub fn nystrom_trace<T: Real>(kd: &KernelData, grid: &ContourGrid<T>) -> Result<Complex<T>> {
    grid.check_encloses(kd)?;
    let tpi = two_pi_i::<T>();
    Ok(grid
        .nodes
        .iter()
        .zip(&grid.weights)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (z, w)| {
            acc + kd.e_prime_at(z) * kd.weight(z) * w.clone() / tpi.clone()
        }))
}

fn series_mul(a: &[AlphaPoly], b: &[AlphaPoly], n: usize) -> Vec<AlphaPoly> {
    let mut out = vec![AlphaPoly::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn rat_const(q: ExactRational) -> AlphaPoly {
    Polynomial::constant(q)
}

/// Exact `Tr K` as a polynomial in `α`: the residue at `λ = 0` of
/// `E′(λ) (λ−α)^r (λ−1)^{−(r+q)} λ^{−s}`.
pub fn trace_k_exact(p: &EfpParams) -> Result<AlphaPoly> {
    p.require_nonempty("Tr K")?;
    let n = p.s as usize;
    let e = compute_e_poly(p);
    let de: Vec<AlphaPoly> = (1..e.len())
        .map(|k| e[k].scale(&ExactRational::from_integer((k as i64).into())))
        .collect();
    // (λ − α)^r = Σ_i C(r,i) λ^i (−α)^{r−i}
    let lam_alpha: Vec<AlphaPoly> = (0..=p.r as usize)
        .map(|i| {
            let k = p.r as usize - i;
            let sign = if k % 2 == 0 { 1 } else { -1 };
            Polynomial::monomial(binomial(u64::from(p.r), i as i64) * ExactRational::from_integer(sign.into()), k)
        })
        .collect();
    // (λ − 1)^{−m} = (−1)^m Σ_j C(m+j−1, j) λ^j
    let m = p.r + p.q;
    let sign = if m % 2 == 0 { 1 } else { -1 };
    let inv: Vec<AlphaPoly> = (0..n)
        .map(|j| {
            rat_const(binomial(u64::from(m) + j as u64 - 1, j as i64) * ExactRational::from_integer(sign.into()))
        })
        .collect();
    let prod = series_mul(&series_mul(&de, &lam_alpha, n), &inv, n);
    Ok(prod.get(n - 1).cloned().unwrap_or_else(AlphaPoly::zero))
}

/// `Tr K` by the double-sum form
/// `(−1)^q Σ_{k<s} (k+1) A_{s−1−k} B_{s+q−1−k}` with
/// `A_i = [λ^i](α−λ)^r(1−λ)^{−(r+q)}` and `B_j = [ν^j](1−ν)^{r+q}(1−αν)^{−r}`.
pub fn trace_k_double_sum(p: &EfpParams) -> Result<AlphaPoly> {
    p.require_nonempty("Tr K")?;
    let (r, s, q) = (p.r as usize, p.s as usize, p.q as usize);
    let b = g_polys(p.r, p.q, s + q);
    let m = (r + q) as u64;
    let a: Vec<AlphaPoly> = (0..s)
        .map(|i| {
            // (α − λ)^r = Σ_t C(r,t) α^{r−t} (−λ)^t
            let mut acc = AlphaPoly::zero();
            for t in 0..=i.min(r) {
                let sign = if t % 2 == 0 { 1 } else { -1 };
                let c = binomial(r as u64, t as i64)
                    * binomial(m + (i - t) as u64 - 1, (i - t) as i64)
                    * ExactRational::from_integer(sign.into());
                acc = &acc + &Polynomial::monomial(c, r - t);
            }
            acc
        })
        .collect();
    let mut acc = AlphaPoly::zero();
    for k in 0..s {
        let term = (&a[s - 1 - k] * &b[s + q - 1 - k]).scale(&ExactRational::from_integer(((k + 1) as i64).into()));
        acc = &acc + &term;
    }
    if q % 2 == 1 {
        acc = -acc;
    }
    Ok(acc)
}

/// `Tr K` keeping the powers `α^k` with `k ≤ order`.
///
/// Fails when `order` is below the leading power `r − s + 1`, since the
/// truncation would then discard every term.
pub fn trace_k_truncated(p: &EfpParams, order: usize) -> Result<AlphaPoly> {
    p.require_nonempty("Tr K")?;
    let lead = (p.r - p.s + 1) as usize;
    if order < lead {
        return Err(EfpError::Domain {
            what: "Tr K truncation order",
            detail: format!("order {order} is below the leading power α^{lead}"),
        });
    }
    Ok(trace_k_exact(p)?.truncate(order + 1))
}

/// Exact `Tr K` at a rational `α`.
pub fn trace_k_at(p: &EfpParams, alpha: &ExactRational) -> Result<ExactRational> {
    Ok(trace_k_exact(p)?.eval(alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::{with_precision, BigFloat};
    use crate::efp::efp_eval;
    use crate::exact::{binomial_int, rat};

    #[test]
    fn e_small_cases() {
        let p = EfpParams::new(1, 1, 0).unwrap();
        let a = rat(1, 3);
        assert_eq!(compute_e(&p, &a), Polynomial::new(vec![a.clone() - rat(1, 1), rat(1, 1)]));
        let p = EfpParams::new(3, 0, 0).unwrap();
        assert_eq!(compute_e(&p, &a).degree(), Some(0));
    }

    #[test]
    fn e_matches_contour_integral() {
        with_precision(256, || {
            let kd = KernelData::new(EfpParams::new(4, 2, 1).unwrap(), rat(1, 2)).unwrap();
            let lam = Complex::new(BigFloat::from_ratio(1, 4), BigFloat::from_i64(0));
            let q = kd.e_by_quadrature(&lam, &BigFloat::from_i64(10), 128);
            let d = q - kd.e_at(&lam);
            assert!(norm1(&d) < BigFloat::from_ratio(1, 10).powi(25));
        });
    }

    #[test]
    fn small_determinants() {
        let kd = KernelData::new(EfpParams::new(2, 1, 0).unwrap(), rat(1, 2)).unwrap();
        let g = ContourGrid::<f64>::standard(&kd, 64).unwrap();
        assert!((nystrom_det(&kd, &g).unwrap().value - 0.75).abs() < 1e-10);
        let kd = KernelData::new(EfpParams::new(1, 1, 0).unwrap(), rat(1, 3)).unwrap();
        let g = ContourGrid::<f64>::standard(&kd, 32).unwrap();
        assert!((nystrom_det(&kd, &g).unwrap().value - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn determinant_matches_exact() {
        with_precision(128, || {
            let p = EfpParams::new(6, 3, 0).unwrap();
            let a = rat(1, 2);
            let kd = KernelData::new(p, a.clone()).unwrap();
            let exact = BigFloat::from_rational(&efp_eval(&p, &a).unwrap());
            let g = ContourGrid::<BigFloat>::standard(&kd, 64).unwrap();
            let got = nystrom_det(&kd, &g).unwrap();
            assert!((got.value - exact).abs() < BigFloat::from_ratio(1, 10).powi(20));
        });
    }

    #[test]
    fn radius_robustness() {
        let p = EfpParams::new(6, 3, 0).unwrap();
        let kd = KernelData::new(p, rat(1, 2)).unwrap();
        let vals: Vec<f64> = [rat(1, 8), rat(1, 4), rat(3, 8)]
            .into_iter()
            .map(|r| nystrom_det(&kd, &ContourGrid::<f64>::new(r, 256).unwrap()).unwrap().value)
            .collect();
        assert!((vals[0] - vals[1]).abs() < 1e-10 && (vals[1] - vals[2]).abs() < 1e-10);
        assert!(ContourGrid::<f64>::new(rat(1, 2), 64).and_then(|g| nystrom_det(&kd, &g)).is_err());
        assert!(ContourGrid::<f64>::new(rat(1, 4), 4).is_err());
    }

    #[test]
    fn kernel_small_case() {
        let kd = KernelData::new(EfpParams::new(1, 1, 0).unwrap(), rat(1, 4)).unwrap();
        let l = Complex::new(0.1, 0.02);
        let m = Complex::new(-0.05, 0.1);
        let got = reduced_kernel(&kd, &l, &m);
        let want = kd.weight(&m) / two_pi_i::<f64>();
        assert!((got - want).norm() < 1e-14);
        let diag = reduced_kernel(&kd, &l, &l);
        assert!((diag - kd.e_prime_at(&l) * kd.weight(&l) / two_pi_i::<f64>()).norm() < 1e-14);
    }

    #[test]
    fn trace_forms_agree() {
        for r in 1..=6u32 {
            for s in 1..=r {
                for q in 0..=2u32 {
                    let p = EfpParams::new(r, s, q).unwrap();
                    let t = trace_k_exact(&p).unwrap();
                    assert_eq!(t, trace_k_double_sum(&p).unwrap(), "{p}");
                    let lead = (r - s + 1) as usize;
                    assert_eq!(t.valuation(), Some(lead), "{p}");
                    let c = binomial_int(r as u64, s as i64 - 1) * binomial_int((r + q) as u64, (s + q) as i64 - 1);
                    assert_eq!(t.coeff(lead), ExactRational::from_integer(c), "{p}");
                }
            }
        }
        let p = EfpParams::new(2, 1, 0).unwrap();
        assert_eq!(trace_k_exact(&p).unwrap(), Polynomial::monomial(rat(1, 1), 2));
        assert!(trace_k_truncated(&p, 1).is_err());
    }

    #[test]
    fn trace_matches_quadrature() {
        with_precision(256, || {
            let p = EfpParams::new(1, 1, 0).unwrap();
            let a = rat(1, 4);
            let kd = KernelData::new(p, a.clone()).unwrap();
            let g = ContourGrid::<BigFloat>::standard(&kd, 64).unwrap();
            let t = nystrom_trace(&kd, &g).unwrap();
            let exact = BigFloat::from_rational(&trace_k_at(&p, &a).unwrap());
            assert!((t.re - exact).abs() < BigFloat::from_ratio(1, 10).powi(20));
            assert!(t.im.abs() < BigFloat::from_ratio(1, 10).powi(20));
        });
    }
}
