use khash::bounds::*;
use khash::{Error, Exact, Scalar};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Exact {
    Exact::ratio(n, d)
}

#[test]
fn exact_identities_at_uniform_threshold() {
    for k in 4..=10usize {
        let alpha = fk_alpha::<Exact>(k).unwrap();
        let u = q(1, k as i64);
        assert_eq!(theta_closed::<Exact>(k, u.clone()).unwrap(), alpha, "theta k={k}");
        assert_eq!(beta_star::<Exact>(k, u.clone()).unwrap(), u, "beta* k={k}");
        assert_eq!(xi::<Exact>(k, u.clone()).unwrap(), alpha, "xi k={k}");
        assert_eq!(km_bound::<Exact>(k, k).unwrap().value, alpha, "km k={k}");
        assert_eq!(r_unbal::<Exact>(k, u.clone()).unwrap(), alpha);
        assert_eq!(eps::<Exact>(k, u).unwrap(), q(0, 1));
    }
}

#[test]
fn rational_mode_refuses_irrational_logs() {
    assert!(matches!(r_bal::<Exact>(5, q(1, 5)), Err(Error::Inexact { .. })));
    assert!(matches!(r_unbal::<Exact>(5, q(1, 7)), Err(Error::Inexact { .. })));
    // log2(4/1) is rational
    assert_eq!(r_bal::<Exact>(4, q(2, 1)).unwrap(), q(1, 1));
}

// Values computed independently at 30 digits.
#[test]
fn frozen_reference_values() {
    let close = |a: f64, b: f64, tol: f64| (a - b).abs() <= tol;
    assert!(close(xi::<f64>(5, 0.136163).unwrap(), 0.183860915393662, 1e-12));
    assert!(close(r_unbal::<f64>(5, 0.136163).unwrap(), 0.190825093748263, 1e-12));
    assert!(close(q_poly::<f64>(5, 0.136163, 0.25).unwrap(), 0.221816625, 1e-12));
    assert!(close(beta_star::<f64>(5, 0.136163).unwrap(), 0.261237763143379, 1e-12));
    assert!(close(theta_closed::<f64>(5, 0.136163).unwrap(), 0.223019206364704, 1e-12));
    assert!(close(r_bal::<f64>(5, 0.192).unwrap(), 0.167650098492463, 1e-12));
    assert!(close(r_bal::<f64>(5, 0.223022).unwrap(), 0.190827553947277, 1e-12));
    let km = km_bound::<f64>(5, 4).unwrap();
    assert_eq!(km.j, 0);
    assert!(close(km.value, 0.736965594166206, 1e-12));
    assert!(close(km.terms[1], 0.8, 1e-12));
    assert!(close(km.terms[2], 0.760782000346155, 1e-12));
    assert!(close(arikan_bound::<f64>(4, 4).unwrap(), 0.35115227, 1e-6));
    assert!(close(arikan_bound::<f64>(5, 4).unwrap(), 0.61141, 1e-5));
    assert!(close(arikan_bound::<f64>(6, 6).unwrap(), 0.154838, 1e-6));
}

#[test]
fn arikan_square_five_exceeds_alpha() {
    let a = arikan_bound::<f64>(5, 5).unwrap();
    let alpha = fk_alpha::<f64>(5).unwrap();
    assert!(a > alpha && a < 5f64.log2());
    assert!((a - 0.23600).abs() < 1e-5);
    // dense scan: feasible just below, infeasible just above
    let feasible = |x: f64| (2..=3).all(|j| x <= arikan_constraint::<f64>(5, 5, j, x).unwrap());
    assert!(feasible(a - 1e-7));
    assert!(!feasible(a + 1e-7));
    let last = (0..=10_000)
        .map(|i| i as f64 * 5f64.log2() / 10_000.0)
        .filter(|&x| feasible(x))
        .fold(0.0, f64::max);
    assert!((last - a).abs() < 5f64.log2() / 10_000.0 + 1e-9);
}

#[test]
fn domain_errors() {
    assert!(fk_alpha::<f64>(1).is_err());
    assert!(xi::<f64>(5, 0.0).is_err());
    assert!(xi::<f64>(5, 0.21).is_err());
    assert!(matches!(theta_closed::<f64>(5, 1.0 / 15.0), Err(Error::Pole { .. })));
    assert!(matches!(theta_closed::<f64>(5, 0.05), Err(Error::Pole { .. })));
    assert!(g_poly::<f64>(5, 0.3).is_err());
    assert!(r_bal::<f64>(5, -0.1).is_err());
    assert!(km_bound::<f64>(3, 4).is_err());
    assert!(arikan_bound::<f64>(3, 3).is_err());
}

#[test]
fn small_k_values() {
    assert_eq!(fk_alpha::<Exact>(4).unwrap(), q(3, 8));
    assert_eq!(fk_alpha::<Exact>(5).unwrap(), q(24, 125));
    assert_eq!(fk_alpha::<Exact>(6).unwrap(), q(5, 54));
    assert!((trivial_upper::<f64>(3).unwrap() - 0.585).abs() < 1e-3);
    assert_eq!(falling_factorial(5, 3).to_string(), "60");
    assert_eq!(falling_factorial(3, 5).to_string(), "0");
}

proptest! {
    #[test]
    fn g_poly_peaks_at_uniform(k in 4usize..=9, t in 0.0f64..=1.0) {
        let y = t / (k as f64 - 1.0);
        let peak = g_poly::<f64>(k, 1.0 / k as f64).unwrap();
        prop_assert!(g_poly::<f64>(k, y).unwrap() <= peak + 1e-15);
        prop_assert!((peak - fk_alpha::<f64>(k).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn g_poly_derivative_matches_difference(k in 4usize..=9, t in 0.05f64..0.95) {
        let y = t / (k as f64 - 1.0);
        let h = 1e-7;
        let fd = (g_poly::<f64>(k, y + h).unwrap() - g_poly::<f64>(k, y - h).unwrap()) / (2.0 * h);
        let an = g_poly_derivative::<f64>(k, y).unwrap();
        prop_assert!((fd - an).abs() <= 1e-5 * an.abs().max(1e-3));
    }

    #[test]
    fn xi_below_alpha(k in 4usize..=9, t in 0.001f64..=1.0) {
        let gamma = t / k as f64;
        let alpha = fk_alpha::<f64>(k).unwrap();
        prop_assert!(xi::<f64>(k, gamma).unwrap() <= alpha + 1e-15);
        prop_assert!(eps::<f64>(k, gamma).unwrap() >= -1e-15);
        prop_assert!(r_unbal::<f64>(k, gamma).unwrap() <= alpha + 1e-15);
    }

    #[test]
    fn r_bal_increasing_and_below_theta(k in 4usize..=9, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let rl = r_bal::<f64>(k, lo).unwrap();
        let rh = r_bal::<f64>(k, hi).unwrap();
        prop_assert!(rl <= rh + 1e-15);
        prop_assert!(rh <= hi + 1e-15);
    }

    #[test]
    fn theta_clamped_never_exceeds_closed(k in 4usize..=8, t in 0.02f64..=1.0) {
        let pole = 1.0 / (k * k - 2 * k) as f64;
        let gamma = pole + t * (1.0 / k as f64 - pole);
        let (clamped, beta) = theta_clamped::<f64>(k, gamma).unwrap();
        let closed = theta_closed::<f64>(k, gamma).unwrap();
        prop_assert!(clamped <= closed * (1.0 + 1e-12));
        prop_assert!(beta >= 1.0 / k as f64 - 1e-15 && beta <= 1.0 / (k as f64 - 1.0) + 1e-15);
        prop_assert!((q_poly::<f64>(k, gamma, beta).unwrap() - clamped).abs() < 1e-15);
    }

    #[test]
    fn exact_and_float_agree(k in 4usize..=8, num in 1i64..=40) {
        let den = 40 * k as i64;
        let gq = Exact::ratio(num, den);
        let gf = num as f64 / den as f64;
        let a = xi::<Exact>(k, gq.clone()).unwrap().to_f64();
        prop_assert!((a - xi::<f64>(k, gf).unwrap()).abs() < 1e-14);
        if let Ok(t) = theta_closed::<Exact>(k, gq) {
            let tf = theta_closed::<f64>(k, gf).unwrap();
            prop_assert!((t.to_f64() - tf).abs() <= 1e-10 * tf.abs().max(1.0));
        }
    }
}
