use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{lcm_denominators, ExactRational, Polynomial};
use crate::error::{EfpError, Result};

type QPoly = Polynomial<ExactRational>;

/// Ratio of two polynomials in α with exact rational coefficients.
///
/// Always canonical: numerator and denominator coprime, denominator monic.
/// Structural equality is therefore mathematical equality.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: QPoly,
    den: QPoly,
}

impl RationalFunction {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(EfpError::DivisionByZero("rational function denominator"));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = poly_gcd(&num, &den);
        let num = num.div_exact(&g)?;
        let den = den.div_exact(&g)?;
        let lead = den.leading().cloned().unwrap_or_else(ExactRational::one);
        let inv = lead.recip();
        Ok(RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RationalFunction { num: p, den: QPoly::one() }
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Equality by cross-multiplication, valid for non-canonical inputs too.
    pub fn cross_eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let d = &self.den * &self.den;
        Self::new(n, d).expect("square of a nonzero denominator is nonzero")
    }

    pub fn eval(&self, x: &ExactRational) -> Result<ExactRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(EfpError::DivisionByZero("rational function evaluation at a pole"));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }
}

/// Whether a canonical rational function is identically zero.
pub fn ratfun_equal_zero(f: &RationalFunction) -> bool {
    f.is_zero()
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(n, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominators")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}]", self.num, self.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({:?} / {:?})", self.num, self.den)
    }
}

fn to_primitive_int(p: &QPoly) -> Vec<BigInt> {
    let l = lcm_denominators(p.coeffs().iter());
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();
    primitive(ints)
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

/// Remainder of `a` by `b` in Z[x] up to a unit, kept primitive at each step.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let g = lr.gcd(lb);
        let fa = lb / &g;
        let fb = &lr / &g;
        for c in r.iter_mut() {
            *c *= &fa;
        }
        let off = dr - db;
        for (j, bc) in b.iter().enumerate() {
            r[off + j] -= &fb * bc;
        }
        r = primitive(r);
    }
    r
}

/// Monic gcd over Q, computed with a primitive remainder sequence in Z[x].
pub fn poly_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let mut x = to_primitive_int(a);
    let mut y = to_primitive_int(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return QPoly::one();
        }
        let r = pseudo_rem(&x, &y);
        x = y;
        y = r;
    }
    let lead = x.last().cloned().unwrap_or_else(BigInt::one);
    let sign = if lead.is_negative() { -BigInt::one() } else { BigInt::one() };
    QPoly::new(
        x.into_iter()
            .map(|c| ExactRational::new(c * &sign, lead.abs()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn p(v: &[i64]) -> QPoly {
        QPoly::new(v.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn zero_detection() {
        let zero = RationalFunction::new(p(&[]), p(&[1])).unwrap();
        assert!(ratfun_equal_zero(&zero));
        let cancelled = RationalFunction::new(&p(&[0, 1]) - &p(&[0, 1]), p(&[1, 1])).unwrap();
        assert!(ratfun_equal_zero(&cancelled));
        let nonzero = RationalFunction::new(p(&[0, 1]), p(&[1, 1])).unwrap();
        assert!(!ratfun_equal_zero(&nonzero));
    }

    #[test]
    fn canonical_form_cancels_and_normalizes() {
        // (2 − 2α²)/(4 + 4α) = (1 − α)/2
        let f = RationalFunction::new(p(&[2, 0, -2]), p(&[4, 4])).unwrap();
        assert_eq!(f.num(), &QPoly::new(vec![rat(1, 2), rat(-1, 2)]));
        assert_eq!(f.den(), &p(&[1]));
    }

    #[test]
    fn gcd_of_products() {
        let common = p(&[3, -1, 2]);
        let a = &common * &p(&[1, 5]);
        let b = &common * &p(&[-7, 0, 1]);
        assert_eq!(poly_gcd(&a, &b), common.monic());
        assert_eq!(poly_gcd(&p(&[1, 1]), &p(&[2, 1])), p(&[1]));
    }

    #[test]
    fn quotient_rule() {
        // d/dα [α/(1+α)] = 1/(1+α)²
        let f = RationalFunction::new(p(&[0, 1]), p(&[1, 1])).unwrap();
        let expected = RationalFunction::new(p(&[1]), p(&[1, 2, 1])).unwrap();
        assert_eq!(f.derivative(), expected);
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert!(RationalFunction::new(p(&[1]), p(&[])).is_err());
    }
}
