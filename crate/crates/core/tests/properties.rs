use efp_core::exact::{bernoulli, binomial, int, rat};
use efp_core::{AlphaPolynomial, ExactRational};
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = ExactRational> {
    (-10_000i64..10_000, 1i64..5_000).prop_map(|(n, d)| rat(n, d))
}

fn polynomial() -> impl Strategy<Value = AlphaPolynomial> {
    prop::collection::vec(rational(), 0..9).prop_map(AlphaPolynomial::new)
}

proptest! {
    #[test]
    fn recenter_round_trip(p in polynomial(), c in rational()) {
        let back = p.recenter(&c).recenter(&-c.clone());
        prop_assert_eq!(back, p);
    }

    #[test]
    fn recenter_is_a_shift(p in polynomial(), c in rational(), x in rational()) {
        prop_assert_eq!(p.recenter(&c).eval(&x), p.eval(&(x + c)));
    }

    #[test]
    fn add_then_subtract(a in rational(), b in rational()) {
        prop_assert_eq!((a.clone() + b.clone()) - b, a);
    }

    #[test]
    fn polynomial_ring_identities(p in polynomial(), q in polynomial(), x in rational()) {
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
        prop_assert_eq!(&(&p + &q) - &q, p);
    }
}

#[test]
fn bernoulli_recurrence() {
    for n in 1..=40usize {
        let sum = (0..=n).fold(ExactRational::zero(), |acc, k| acc + binomial(n as u64 + 1, k as i64) * bernoulli(k));
        assert!(sum.is_zero(), "n = {n}");
    }
    assert_eq!(bernoulli(1), rat(-1, 2));
    assert_eq!(bernoulli(12), rat(-691, 2730));
    assert_eq!(bernoulli(7), int(0));
}
