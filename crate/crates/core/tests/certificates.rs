mod common;

use common::*;
use proptest::prelude::*;

use pretzel_core::certify::{
    certify_slope, slope_branch, sweep, verify_certificate, SlopeCertificate,
};
use pretzel_core::charvariety::{solve_coords, Branch};
use pretzel_core::Error;

/// `μ^m λ^l` from naive products at the certificate's point.
fn naive_residual(c: &SlopeCertificate) -> f64 {
    let coords = solve_coords(c.n, c.theta_star, c.branch).unwrap();
    let (a, w) = pair(coords.x, c.theta_star, coords.z);
    let lam = longitude(c.n, &a, &w);
    let img = mul(&naive_pow(&a, c.m), &naive_pow(&lam, c.l));
    dist(&img, &ident())
}

#[test]
fn certificates_hold_under_naive_products() {
    for n in [3, 5, 6, 7] {
        let top = 2 * floor_term(n);
        for (m, l) in [
            (-100, 3),
            (-7, 2),
            (-1, 1),
            (1, 1),
            (3, 2),
            (top - 1, 1),
            (10 * top - 1, 10),
        ] {
            let c = certify_slope(n, m, l, 1e-12).unwrap();
            assert!(c.h_residual < 1e-10);
            assert!(c.matrix_residual < 1e-6, "{c:?}");
            assert!(naive_residual(&c) < 1e-6, "{c:?}");
            assert_eq!(c.branch, if m < 0 { Branch::Minus } else { Branch::Plus });
        }
    }
}

#[test]
fn seven_pretzel_slope_five() {
    let c = certify_slope(3, 5, 1, 1e-12).unwrap();
    assert_eq!(c.certified_bound, 6);
    assert!(naive_residual(&c) < 1e-6);
}

#[test]
fn rejections() {
    for n in [3, 5, 6, 7] {
        let top = 2 * floor_term(n);
        assert!(matches!(
            certify_slope(n, top, 1, 1e-12),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            certify_slope(n, 0, 1, 1e-12),
            Err(Error::ZeroSlope)
        ));
    }
    assert!(matches!(
        certify_slope(4, 1, 1, 1e-12),
        Err(Error::Excluded)
    ));
}

#[test]
fn slope_function_limits() {
    // -φ̃/φ runs from 0 at θ_n to 2N (plus) or -∞ (minus) at β_n
    for n in [3, 6, 7] {
        let top = 2.0 * floor_term(n) as f64;
        let plus = sweep(n, Branch::Plus, 400).unwrap();
        let minus = sweep(n, Branch::Minus, 400).unwrap();
        assert!(plus[0].slope.abs() < 1e-3 && minus[0].slope.abs() < 1e-3);
        assert!((plus.last().unwrap().slope - top).abs() < 0.05, "n={n}");
        assert!(minus.last().unwrap().slope < -1e3);
        assert!(plus.iter().all(|p| p.slope < top));
    }
}

#[test]
fn slope_function_is_monotone() {
    // so h = mφ + lφ̃ has a single root and the first sign change is it
    for n in [3, 5, 6, 7, 8, 9, 10, 13, 16, 20, 25, 30] {
        for (b, sign) in [(Branch::Plus, 1.0), (Branch::Minus, -1.0)] {
            let pts = sweep(n, b, 2000).unwrap();
            assert!(
                pts.windows(2)
                    .all(|w| sign * (w[1].slope - w[0].slope) > 0.0),
                "n={n} {b}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_slopes_certify(n in prop::sample::select(vec![3i64, 5, 6, 7, 8, 9]), m in -60i64..60, l in 1i64..8) {
        prop_assume!(slope_branch(n, m, l, false).is_ok());
        let c = certify_slope(n, m, l, 1e-12).unwrap();
        prop_assert!(c.matrix_residual < 1e-6);
        prop_assert!((verify_certificate(&c).unwrap() - c.matrix_residual).abs() < 1e-9);
        prop_assert!(naive_residual(&c) < 1e-6);
    }
}
