use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::EfpParams;
use crate::error::{EfpError, Result};
use crate::exact::{bareiss_det, binomial_int, factorial, rational_pow, ExactRational, Polynomial};

type QPoly = Polynomial<ExactRational>;

fn moment_weight(m: u64, e: u32) -> BigInt {
    // 0^0 = 1 keeps the m = 0 term in the first moment
    if e == 0 {
        BigInt::one()
    } else {
        BigInt::from(m).pow(e)
    }
}

/// The `s × s` Hankel matrix of moments
/// `H_{jk}(α) = Σ_{m=0}^{r−1} m^{j+k} C(m+q, m) α^m` (0-indexed).
pub fn hankel_matrix(p: &EfpParams) -> Result<Vec<Vec<QPoly>>> {
    if p.s == 0 {
        return Err(EfpError::EmptyMatrix);
    }
    let s = p.s as usize;
    let moment = |e: u32| -> QPoly {
        QPoly::new(
            (0..p.r as u64)
                .map(|m| {
                    ExactRational::from_integer(
                        moment_weight(m, e) * binomial_int(m + p.q as u64, m as i64),
                    )
                })
                .collect(),
        )
    };
    let moments: Vec<QPoly> = (0..2 * s as u32 - 1).map(moment).collect();
    Ok((0..s)
        .map(|j| (0..s).map(|k| moments[j + k].clone()).collect())
        .collect())
}

/// `(q!)^s / ∏_{k=0}^{s−1} (q+k)! k!`.
pub fn hankel_prefactor(p: &EfpParams) -> ExactRational {
    let q = p.q as u64;
    let num = factorial(q).pow(p.s);
    let den = (0..p.s as u64).fold(BigInt::one(), |acc, k| acc * factorial(q + k) * factorial(k));
    ExactRational::new(num, den)
}

/// Determinant of the Hankel matrix as a polynomial in α.
pub fn hankel_det(p: &EfpParams) -> Result<QPoly> {
    bareiss_det(hankel_matrix(p)?)
}

/// `F_{r,s,q}(α)` as an exact polynomial.
///
/// Returns `1` for `s = 0` and the zero polynomial for `s > r`.
pub fn efp_polynomial(p: &EfpParams) -> Result<QPoly> {
    if p.is_trivial() {
        return Ok(QPoly::one());
    }
    if p.is_empty_set() {
        return Ok(QPoly::zero());
    }
    let det = hankel_det(p)?;
    let power = (p.s * (p.s - 1) / 2) as usize;
    let reduced = det.shift_down(power).map_err(|_| {
        EfpError::InexactDivision(format!(
            "Hankel determinant for {p} is not divisible by α^{power}"
        ))
    })?;
    let one_minus = QPoly::linear(ExactRational::one(), -ExactRational::one());
    let f = &one_minus.pow(p.s * (p.s + p.q)) * &reduced;
    Ok(f.scale(&hankel_prefactor(p)))
}

/// `F_{r,s,q}` at an exact point, through a rational Hankel determinant.
pub fn efp_eval(p: &EfpParams, alpha: &ExactRational) -> Result<ExactRational> {
    if p.is_trivial() {
        return Ok(ExactRational::one());
    }
    if p.is_empty_set() {
        return Ok(ExactRational::zero());
    }
    if alpha.is_zero() {
        return Ok(efp_polynomial(p)?.eval(alpha));
    }
    let s = p.s as usize;
    let mut powers = Vec::with_capacity(p.r as usize);
    let mut a = ExactRational::one();
    for _ in 0..p.r {
        powers.push(a.clone());
        a *= alpha;
    }
    let moments: Vec<ExactRational> = (0..2 * s as u32 - 1)
        .map(|e| {
            (0..p.r as u64).fold(ExactRational::zero(), |acc, m| {
                let c = moment_weight(m, e) * binomial_int(m + p.q as u64, m as i64);
                acc + ExactRational::from_integer(c) * &powers[m as usize]
            })
        })
        .collect();
    let matrix: Vec<Vec<ExactRational>> = (0..s)
        .map(|j| (0..s).map(|k| moments[j + k].clone()).collect())
        .collect();
    let det = bareiss_det(matrix)?;
    let one_minus = ExactRational::one() - alpha;
    let value = hankel_prefactor(p) * rational_pow(&one_minus, p.s * (p.s + p.q)) * det
        / rational_pow(alpha, p.s * (p.s - 1) / 2);
    Ok(value)
}
