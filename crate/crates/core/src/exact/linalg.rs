use std::ops::{Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ExactRational, Polynomial};
use crate::error::{EfpError, Result};

/// Integral domain with exact division, as required by Bareiss elimination.
pub trait ExactRing:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + Mul<Output = Self> + Sub<Output = Self>
{
    /// `self / d`, failing if `d` does not divide `self`.
    fn div_exact_by(&self, d: &Self) -> Result<Self>;
}

impl ExactRing for ExactRational {
    fn div_exact_by(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(EfpError::DivisionByZero("rational division"));
        }
        Ok(self / d)
    }
}

impl ExactRing for BigInt {
    fn div_exact_by(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(EfpError::DivisionByZero("integer division"));
        }
        let (q, r) = num_integer::Integer::div_rem(self, d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(EfpError::InexactDivision(format!("{d} does not divide {self}")))
        }
    }
}

impl ExactRing for Polynomial<ExactRational> {
    fn div_exact_by(&self, d: &Self) -> Result<Self> {
        self.div_exact(d)
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
///
/// Every intermediate entry is a minor of the input, so entries never leave
/// the ring and their size stays bounded by Hadamard's inequality.
pub fn bareiss_det<R: ExactRing>(mut m: Vec<Vec<R>>) -> Result<R> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(EfpError::InvalidParams("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(R::one());
    }
    let mut sign_flip = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return Ok(R::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].clone() * m[i][j].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = t.div_exact_by(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if sign_flip { -d } else { d })
}
