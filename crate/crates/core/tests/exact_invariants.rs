use efp_core::critical::{barnes_log_g_asym, hahn_data, hahn_polynomial, log_barnes_g_exact};
use efp_core::efp::{efp_eval, efp_multi_integral, efp_polynomial};
use efp_core::exact::{int, rat};
use efp_core::sigma::{sigma_form_residual, sigma_from_efp};
use efp_core::{BigFloat, EfpParams, ExactRational, Real};
use num_traits::{One, Zero};

#[test]
fn multiple_integral_matches_hankel() {
    for r in 1..=5u32 {
        for s in 1..=3u32.min(r) {
            for q in 0..=2 {
                let p = EfpParams::new(r, s, q).unwrap();
                assert_eq!(efp_multi_integral(&p).unwrap(), efp_polynomial(&p).unwrap(), "{p}");
            }
        }
    }
}

#[test]
fn degree_and_endpoints() {
    for r in 1..=6u32 {
        for s in 1..=r {
            for q in 0..=2 {
                let p = EfpParams::new(r, s, q).unwrap();
                let f = efp_polynomial(&p).unwrap();
                assert_eq!(f.degree(), Some((s * (r + q)) as usize), "{p}");
                assert_eq!(f.eval(&ExactRational::zero()), ExactRational::one(), "{p}");
                assert!(f.eval(&ExactRational::one()).is_zero(), "{p}");
            }
        }
    }
}

#[test]
fn probability_bounds() {
    for r in 2..=6u32 {
        for s in 1..r {
            let p = EfpParams::new(r, s, 0).unwrap();
            for k in 1..8 {
                let f = efp_eval(&p, &rat(k, 8)).unwrap();
                assert!(f > ExactRational::zero() && f < ExactRational::one(), "{p} at {k}/8");
            }
        }
    }
}

#[test]
fn sigma_negative_control() {
    let p = EfpParams::new(2, 1, 0).unwrap();
    let sd = sigma_from_efp(&efp_polynomial(&p).unwrap(), &p).unwrap();
    assert!(sigma_form_residual(&sd).is_zero());
    for k in 0..4 {
        assert!(!sigma_form_residual(&sd.with_nu_shift(k, &int(1))).is_zero(), "ν_{k}");
    }
}

#[test]
fn hahn_orthogonality() {
    for r in 1..=8u32 {
        let polys: Vec<_> = (0..r).map(|n| hahn_polynomial(n, r).unwrap()).collect();
        for (n, pn) in polys.iter().enumerate() {
            for (m, pm) in polys.iter().enumerate() {
                let ip = (0..r as i64).fold(ExactRational::zero(), |acc, x| acc + pn.eval(&int(x)) * pm.eval(&int(x)));
                let want = if n == m { hahn_data(r, n as u32).unwrap().h_n } else { ExactRational::zero() };
                assert_eq!(ip, want, "r = {r}, n = {n}, m = {m}");
            }
        }
    }
}

#[test]
fn barnes_error_order() {
    // error of the n-term expansion shrinks like z^{−2n−2}
    for n in 1..=3usize {
        let err = |k: u64| {
            let z = BigFloat::from_i64(k as i64);
            (barnes_log_g_asym(&z, n) - log_barnes_g_exact::<BigFloat>(k)).abs().to_f64()
        };
        let ratio = err(20) / err(40);
        let expected = 2f64.powi(2 * n as i32 + 2);
        assert!((ratio / expected - 1.0).abs() < 0.25, "n = {n}: ratio {ratio}");
    }
}
