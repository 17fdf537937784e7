mod common;

use approx::assert_abs_diff_eq;
use common::*;
use num_complex::Complex64;
use proptest::prelude::*;

use pretzel_core::alexander::{find_theta_n, theta_n};
use pretzel_core::charvariety::{knot_params, solve_coords, Branch};
use pretzel_core::cheb::{cheb_s, Mat2};
use pretzel_core::holonomy::{cd_values, g_function, l_formula};

const H2: [f64; 6] = [1.0, -1.0, -5.0, 6.0, 5.0, -7.0];

#[test]
fn h2_roots_match_reported_values() {
    let roots = real_roots(|y| horner(&H2, y), -3.0, 3.0, 6000);
    assert_eq!(roots.len(), 3);
    for (r, want) in roots.iter().zip([-1.96757, -1.22062, 1.66787]) {
        assert_abs_diff_eq!(*r, want, epsilon = 1e-4);
    }
}

#[test]
fn d2c2_at_theta_n_is_minus_h2() {
    for n in 3..=20 {
        let tn = theta_n(n).unwrap();
        let y = 2.0 * tn.cos();
        for b in Branch::BOTH {
            let (c, d) = cd_values(&solve_coords(n, tn, b).unwrap());
            assert_abs_diff_eq!(d * d - c * c, -horner(&H2, y), epsilon = 1e-8);
        }
    }
}

#[test]
fn g_for_n4_is_the_degree_nine_polynomial() {
    let p = [1.0, -1.0, -5.0, 5.0, 9.0, -10.0, -7.0, 8.0, 2.0, -1.0];
    for i in 0..=200 {
        let theta = 1.9 + 0.6 * i as f64 / 200.0;
        assert_abs_diff_eq!(
            g_function(4, theta),
            horner(&p, 2.0 * theta.cos()),
            epsilon = 1e-10
        );
    }
}

#[test]
fn theta_n_matches_symmetric_alexander_root() {
    for n in 3..=40 {
        let p = knot_params(n).unwrap();
        let f = |t: f64| alexander_symmetric(n, t);
        let roots = real_roots(f, p.alpha_n, p.gamma_n, 4000);
        assert_eq!(roots.len(), 1, "n={n}");
        assert_abs_diff_eq!(theta_n(n).unwrap(), roots[0], epsilon = 1e-12);
        let r = find_theta_n(n, 1e-13).unwrap();
        assert!(r.width() <= 1e-13);
    }
}

#[test]
fn reported_roots() {
    assert_abs_diff_eq!(theta_n(4).unwrap(), 2.2728, epsilon = 5e-4);
    assert_abs_diff_eq!(knot_params(4).unwrap().beta_n, 2.44346, epsilon = 5e-5);
    let t7 = theta_n(7).unwrap();
    assert_abs_diff_eq!(t7, 2.20391, epsilon = 5e-5);
    assert_abs_diff_eq!(2.0 * t7.cos(), -1.18332, epsilon = 5e-5);
}

#[test]
fn relation_and_longitude_by_naive_products() {
    for n in [3, 5, 6, 7, 11, 14] {
        let tn = theta_n(n).unwrap();
        let b = beta(n);
        for i in 1..20 {
            let theta = tn + (b - tn) * i as f64 / 20.0;
            for br in Branch::BOTH {
                let c = solve_coords(n, theta, br).unwrap();
                let (a, w) = pair(c.x, theta, c.z);
                assert!(relation_gap(n, &a, &w) < 1e-8, "n={n} theta={theta}");
                let l = longitude(n, &a, &w);
                // λ commutes with μ, so it is upper triangular too
                assert!(l[1][0].norm() < 1e-8);
                let lf = l_formula(n, &c).unwrap();
                assert!((l[0][0] - lf).norm() < 1e-7, "n={n} {} vs {lf}", l[0][0]);
                assert_abs_diff_eq!(lf.norm(), 1.0, epsilon = 1e-10);
            }
        }
    }
}

#[test]
fn cheb_pow_matches_naive_power() {
    let (a, w) = pair(-1.1, 2.1, 1.7);
    let aw = mul(&a, &w);
    for g in [a, w, aw] {
        let m = Mat2::new(g[0][0], g[0][1], g[1][0], g[1][1]);
        for k in -40..=40 {
            let p = m.cheb_pow(k);
            let q = naive_pow(&g, k);
            let got = [[p.a11, p.a12], [p.a21, p.a22]];
            let scale = q.iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
            assert!(dist(&got, &q) < 1e-10 * scale, "k={k}");
        }
    }
}

#[test]
fn endpoint_traces() {
    // x_± -> ∓2 at β_n, so M -> ±1 is where the longitude eigenvalue closes up
    for n in [3, 5, 6, 7, 10] {
        let b = beta(n);
        let plus = solve_coords(n, b - 1e-7, Branch::Plus).unwrap();
        let minus = solve_coords(n, b - 1e-7, Branch::Minus).unwrap();
        assert!((plus.x + 2.0).abs() < 1e-3 && (minus.x - 2.0).abs() < 1e-3);
        assert_abs_diff_eq!(knot_params(n).unwrap().beta_n, b, epsilon = 1e-15);
        assert_eq!(knot_params(n).unwrap().floor_term, floor_term(n));
    }
}

proptest! {
    #[test]
    fn chebyshev_matches_trig(k in -30i64..120, theta in 0.01f64..3.13) {
        let y = 2.0 * theta.cos();
        let want = cheb_trig(k, theta);
        prop_assert!((cheb_s(k, y) - want).abs() < 1e-9 * (1.0 + want.abs()) * (k.abs() as f64 + 1.0));
    }

    #[test]
    fn solutions_are_irreducible_and_elliptic(n in 3i64..25, frac in 0.02f64..0.98, plus in any::<bool>()) {
        let tn = theta_n(n).unwrap();
        let theta = tn + (beta(n) - tn) * frac;
        let br = if plus { Branch::Plus } else { Branch::Minus };
        let c = solve_coords(n, theta, br).unwrap();
        let (a, w) = pair(c.x, theta, c.z);
        // tr[a, w] - 2 = s, which is positive off θ_n
        let comm = word(&[(&a, 1), (&w, 1), (&a, -1), (&w, -1)]);
        let tr = comm[0][0] + comm[1][1];
        prop_assert!((tr - Complex64::new(2.0 + c.s, 0.0)).norm() < 1e-9);
        prop_assert!(c.s > 0.0);
        prop_assert!(c.x.abs() < 2.0 && c.y.abs() < 2.0);
    }
}
