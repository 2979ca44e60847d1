//! Gauss–Legendre quadrature at arbitrary precision.

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{EfpError, Result};
use crate::scalar::Real;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[−1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

/// Value of `P_n(x)` and `P_{n−1}(x)` by the three-term recurrence.
fn legendre_pair<T: Real>(n: usize, x: &T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x.clone();
    for k in 1..n {
        let kf = T::from_i64(k as i64);
        let p2 = (T::from_i64(2 * k as i64 + 1) * x.clone() * p1.clone() - kf.clone() * p0)
            / (kf + T::one());
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

impl<T: Real> GaussLegendre<T> {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a quadrature rule needs at least one node");
        let nf = T::from_i64(n as i64);
        let eps = T::epsilon();
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        for i in 0..n.div_ceil(2) {
            let guess = T::pi() * (T::from_i64(4 * i as i64 + 3)) / T::from_i64(4 * n as i64 + 2);
            let mut x = guess.cos();
            let mut dp = T::one();
            for _ in 0..200 {
                let (p, pm1) = legendre_pair(n, &x);
                dp = nf.clone() * (x.clone() * p.clone() - pm1) / (x.clone() * x.clone() - T::one());
                let dx = p / dp.clone();
                x = x - dx.clone();
                if dx.abs() <= eps.clone() * T::from_i64(4) {
                    let (p, pm1) = legendre_pair(n, &x);
                    dp = nf.clone() * (x.clone() * p - pm1) / (x.clone() * x.clone() - T::one());
                    break;
                }
            }
            let w = T::from_i64(2) / ((T::one() - x.clone() * x.clone()) * dp.clone() * dp);
            nodes[i] = x.clone();
            nodes[n - 1 - i] = -x;
            weights[i] = w.clone();
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// Rule for `n` nodes at the working precision, built once per type and precision.
    pub fn cached(n: usize) -> Arc<Self> {
        type Cache = Mutex<HashMap<(TypeId, usize, u32), Arc<dyn Any + Send + Sync>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let key = (TypeId::of::<T>(), n, T::one().precision_bits());
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(hit) = cache.lock().expect("quadrature cache poisoned").get(&key) {
            if let Ok(rule) = hit.clone().downcast::<Self>() {
                return rule;
            }
        }
        let rule = Arc::new(Self::new(n));
        cache
            .lock()
            .expect("quadrature cache poisoned")
            .insert(key, rule.clone());
        rule
    }

    /// `∫_a^b f`.
    pub fn integrate(&self, a: &T, b: &T, f: impl Fn(&T) -> T) -> T {
        let half = (b.clone() - a.clone()) / T::from_i64(2);
        let mid = (b.clone() + a.clone()) / T::from_i64(2);
        let sum = self
            .nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (x, w)| {
                acc + w.clone() * f(&(mid.clone() + half.clone() * x.clone()))
            });
        sum * half
    }
}

/// Result of a node-doubling quadrature.
#[derive(Clone, Debug)]
pub struct Quadrature<T> {
    pub value: T,
    /// Node count of the accepted rule.
    pub nodes: usize,
    /// `|I_n − I_{n/2}|` at acceptance.
    pub difference: T,
}

/// Gauss–Legendre with the node count doubled from `start` until two
/// successive results differ by at most `tol`.
pub fn integrate_doubling<T: Real>(
    a: &T,
    b: &T,
    tol: &T,
    start: usize,
    max_nodes: usize,
    f: impl Fn(&T) -> T,
) -> Result<Quadrature<T>> {
    let mut n = start.max(2);
    let mut prev = GaussLegendre::<T>::cached(n).integrate(a, b, &f);
    while n < max_nodes {
        n *= 2;
        let cur = GaussLegendre::<T>::cached(n).integrate(a, b, &f);
        let diff = (cur.clone() - prev).abs();
        if diff <= *tol {
            return Ok(Quadrature { value: cur, nodes: n, difference: diff });
        }
        prev = cur;
    }
    Err(EfpError::NoConvergence(format!(
        "Gauss–Legendre did not reach tolerance {tol} with {max_nodes} nodes"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::{with_precision, BigFloat};

    #[test]
    fn exact_for_low_degree() {
        let rule = GaussLegendre::<f64>::new(5);
        // degree 9 is integrated exactly by five nodes
        let v = rule.integrate(&0.0, &1.0, |x| x.powi(9));
        assert!((v - 0.1).abs() < 1e-15);
        let w: f64 = rule.weights.iter().sum();
        assert!((w - 2.0).abs() < 1e-14);
    }

    #[test]
    fn high_precision_log() {
        with_precision(256, || {
            let one = BigFloat::from_i64(1);
            let two = BigFloat::from_i64(2);
            let tol = BigFloat::from_ratio(1, 10).powi(60);
            let q = integrate_doubling(&one, &two, &tol, 16, 1024, |x| BigFloat::from_i64(1) / x.clone()).unwrap();
            let err = (q.value - two.ln()).abs();
            assert!(err < BigFloat::from_ratio(1, 10).powi(60), "{err}");
        });
    }

    #[test]
    fn reports_failure() {
        let r = integrate_doubling(&0.0f64, &1.0, &0.0, 2, 8, |x| x.sqrt());
        assert!(r.is_err());
    }
}
