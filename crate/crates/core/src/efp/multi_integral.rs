use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::EfpParams;
use crate::error::{EfpError, Result};
use crate::exact::{binomial_int, factorial, ExactRational, Polynomial};

type QPoly = Polynomial<ExactRational>;

/// Largest `s` accepted by the `s`-fold residue extraction.
pub const MAX_MULTI_INTEGRAL_S: u32 = 6;

/// Monomial expansion of `∏_{j<k} (z_j − z_k)²` in `s` variables.
fn vandermonde_squared(s: usize) -> BTreeMap<Vec<u32>, BigInt> {
    let mut poly: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    poly.insert(vec![0; s], BigInt::one());
    for j in 0..s {
        for k in j + 1..s {
            for _ in 0..2 {
                let mut next: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
                for (mono, c) in &poly {
                    let mut a = mono.clone();
                    a[j] += 1;
                    *next.entry(a).or_default() += c;
                    let mut b = mono.clone();
                    b[k] += 1;
                    *next.entry(b).or_default() -= c;
                }
                next.retain(|_, c| !c.is_zero());
                poly = next;
            }
        }
    }
    poly
}

/// `[z^n] (αz + 1 − α)^{r+q} (z − 1)^{−s}` as a polynomial in α.
fn g_coefficient(p: &EfpParams, n: u64) -> QPoly {
    let rq = (p.r + p.q) as u64;
    let one_minus = QPoly::linear(ExactRational::one(), -ExactRational::one());
    let sign = if p.s % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let mut acc = QPoly::zero();
    for i in 0..=n.min(rq) {
        // (z − 1)^{−s} = (−1)^s Σ_k C(s+k−1, k) z^k
        let k = n - i;
        let series = binomial_int(p.s as u64 + k - 1, k as i64);
        let c = &sign * binomial_int(rq, i as i64) * series;
        if c.is_zero() {
            continue;
        }
        let term = one_minus
            .pow((rq - i) as u32)
            .shift_up(i as usize)
            .scale(&ExactRational::from_integer(c));
        acc = &acc + &term;
    }
    acc
}

/// `F_{r,s,q}` from its `s`-fold contour-integral representation, evaluated
/// by extracting the residue at the origin in every variable.
pub fn efp_multi_integral(p: &EfpParams) -> Result<QPoly> {
    if p.s > MAX_MULTI_INTEGRAL_S {
        return Err(EfpError::TooLarge {
            method: "multiple-integral extraction",
            detail: format!("s = {} exceeds the bound {MAX_MULTI_INTEGRAL_S}", p.s),
        });
    }
    if p.s == 0 {
        return Ok(QPoly::one());
    }
    let target = p.r as u64 - 1;
    let g: Vec<QPoly> = (0..=target).map(|n| g_coefficient(p, n)).collect();
    let mut acc = QPoly::zero();
    for (mono, c) in vandermonde_squared(p.s as usize) {
        if mono.iter().any(|&e| e as u64 > target) {
            continue;
        }
        let prod = mono
            .iter()
            .fold(QPoly::one(), |acc, &e| &acc * &g[(target - e as u64) as usize]);
        acc = &acc + &prod.scale(&ExactRational::from_integer(c));
    }
    let s = p.s as u64;
    let sign = if (s * (s + 1) / 2) % 2 == 0 { 1 } else { -1 };
    Ok(acc.scale(&ExactRational::new(BigInt::from(sign), factorial(s))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::efp::efp_polynomial;
    use crate::exact::int;

    fn p(v: &[i64]) -> QPoly {
        QPoly::new(v.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn single_residues() {
        assert_eq!(efp_multi_integral(&EfpParams::new(2, 1, 0).unwrap()).unwrap(), p(&[1, 0, -1]));
        assert_eq!(efp_multi_integral(&EfpParams::new(1, 1, 0).unwrap()).unwrap(), p(&[1, -1]));
    }

    #[test]
    fn agrees_with_hankel() {
        let pp = EfpParams::new(3, 2, 0).unwrap();
        assert_eq!(efp_multi_integral(&pp).unwrap(), efp_polynomial(&pp).unwrap());
    }

    #[test]
    fn vandermonde_two_variables() {
        // (z0 − z1)² = z0² − 2 z0 z1 + z1²
        let v = vandermonde_squared(2);
        assert_eq!(v.len(), 3);
        assert_eq!(v[&vec![1, 1]], BigInt::from(-2));
    }

    #[test]
    fn refuses_large_s() {
        assert!(efp_multi_integral(&EfpParams::new(8, 7, 0).unwrap()).is_err());
    }
}
