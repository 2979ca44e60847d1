//! Mathematical constants computed from first principles.

use crate::exact::bernoulli;
use crate::scalar::Real;

const HYPERFACTORIAL_N: i64 = 400;

/// ζ′(−1) from the Glaisher–Kinkelin constant, `ζ′(−1) = 1/12 − log A`.
///
/// `log A` is obtained from the hyperfactorial `H(n) = ∏ k^k` at `n = 400`
/// through its Euler–Maclaurin expansion
/// `log H(n) = (n²/2 + n/2 + 1/12) log n − n²/4 + log A − Σ_{j≥2} B_{2j} n^{2−2j} / (2j(2j−1)(2j−2))`.
/// Evaluate at a few guard bits above the target precision; the sum of
/// `k log k` cancels about twenty bits.
pub fn zeta_prime_minus_one_series<T: Real>() -> T {
    let n = HYPERFACTORIAL_N;
    let nf = T::from_i64(n);
    let ln_n = nf.ln();
    let mut log_h = T::zero();
    for k in 2..=n {
        let kf = T::from_i64(k);
        log_h = log_h + kf.clone() * kf.ln();
    }
    let n2 = nf.square();
    let mut log_a = log_h
        - (n2.clone() / T::from_i64(2) + nf.clone() / T::from_i64(2) + T::from_ratio(1, 12)) * ln_n
        + n2.clone() / T::from_i64(4);
    let eps = T::epsilon();
    let inv_n2 = T::one() / n2;
    let mut power = inv_n2.clone();
    let mut prev = None::<T>;
    for j in 2..400usize {
        let b = T::from_rational(&bernoulli(2 * j));
        let denom = T::from_i64((2 * j * (2 * j - 1) * (2 * j - 2)) as i64);
        let term = b * power.clone() / denom;
        let size = term.abs();
        log_a = log_a + term;
        if size < eps.clone() * T::from_ratio(1, 1024) {
            break;
        }
        if let Some(p) = &prev {
            if size > *p {
                break;
            }
        }
        prev = Some(size);
        power = power * inv_n2.clone();
    }
    T::from_ratio(1, 12) - log_a
}
