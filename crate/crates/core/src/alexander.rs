//! The Alexander polynomial of `K_n` and its distinguished unit-circle root.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::charvariety::knot_params;
use crate::error::{Error, Result};

/// Smallest bracket width accepted by [`find_theta_n`].
pub const MIN_TOL: f64 = 1e-14;

/// `Δ(t) = (t^{2n+5} - t^{2n+3} + t^{2n+2} + t³ - t² + 1) / (t + 1)`.
pub fn alexander_eval(n: i64, t: Complex64) -> Result<Complex64> {
    let denom = t + 1.0;
    if denom.norm() < 1e-14 {
        return Err(Error::Pole);
    }
    Ok(alexander_numerator(n, t) / denom)
}

/// The numerator `t^{2n+5} - t^{2n+3} + t^{2n+2} + t³ - t² + 1`.
pub fn alexander_numerator(n: i64, t: Complex64) -> Complex64 {
    let e = (2 * n) as i32;
    t.powi(e + 5) - t.powi(e + 3) + t.powi(e + 2) + t.powi(3) - t.powi(2) + 1.0
}

/// `F(θ) = 2cos((n+1)θ) cos(3θ/2) - cos((2n+1)θ/2)`; its zeros are the
/// unit-circle roots `e^{iθ}` of `Δ`.
pub fn f_theta(n: i64, theta: f64) -> f64 {
    let nf = n as f64;
    2.0 * ((nf + 1.0) * theta).cos() * (1.5 * theta).cos() - ((2.0 * nf + 1.0) * theta / 2.0).cos()
}

/// The root `θ_n` of `F` in `[α_n, γ_n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaRoot {
    pub n: i64,
    pub theta_n: f64,
    pub residual_f: f64,
    pub residual_delta: f64,
    pub bracket: (f64, f64),
}

impl ThetaRoot {
    pub fn width(&self) -> f64 {
        self.bracket.1 - self.bracket.0
    }
}

/// Bisection for `θ_n` on `[α_n, γ_n]` down to a bracket of width `tol`.
pub fn find_theta_n(n: i64, tol: f64) -> Result<ThetaRoot> {
    if tol.is_nan() || tol < MIN_TOL {
        return Err(Error::InvalidArgument(format!(
            "bisection tolerance {tol:e} is below {MIN_TOL:e}"
        )));
    }
    bisect_root(n, tol)
}

/// `θ_n` bisected until the bracket cannot be split further.
pub fn theta_n(n: i64) -> Result<f64> {
    Ok(bisect_root(n, 0.0)?.theta_n)
}

fn bisect_root(n: i64, tol: f64) -> Result<ThetaRoot> {
    let p = knot_params(n)?;
    let (mut lo, mut hi) = (p.alpha_n, p.gamma_n);
    let f_lo = f_theta(n, lo);
    let f_hi = f_theta(n, hi);
    if f_lo == 0.0 {
        hi = lo;
    } else if f_lo * f_hi > 0.0 {
        return Err(Error::Bracket { n, lo, hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f_theta(n, mid);
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // pick whichever end has the smaller residual
    let theta = if f_theta(n, lo).abs() <= f_theta(n, hi).abs() {
        lo
    } else {
        hi
    };
    let residual_delta = alexander_eval(n, Complex64::from_polar(1.0, theta))?.norm();
    Ok(ThetaRoot {
        n,
        theta_n: theta,
        residual_f: f_theta(n, theta).abs(),
        residual_delta,
        bracket: (lo, hi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cheb::cheb_s;
    use std::f64::consts::PI;

    /// The residue-class rewrites of `F` in the variable ε measured from 2π/3.
    fn f_tilde(n: i64, eps: f64) -> f64 {
        let nf = n as f64;
        match n.rem_euclid(3) {
            0 => {
                2.0 * (PI / 3.0 + (nf + 1.0) * eps).cos() * (1.5 * eps).cos()
                    - (PI / 3.0 - (2.0 * nf + 1.0) * eps / 2.0).cos()
            }
            1 => {
                -2.0 * (2.0 * PI / 3.0 - (nf + 1.0) * eps).cos() * (1.5 * eps).cos()
                    + ((2.0 * nf + 1.0) * eps / 2.0).cos()
            }
            _ => {
                -2.0 * ((nf + 1.0) * eps).cos() * (1.5 * eps).cos()
                    + (2.0 * PI / 3.0 - (2.0 * nf + 1.0) * eps / 2.0).cos()
            }
        }
    }

    #[test]
    fn delta_at_one() {
        for n in 3..20 {
            let v = alexander_eval(n, Complex64::new(1.0, 0.0)).unwrap();
            assert!((v - 1.0).norm() < 1e-15);
        }
        assert_eq!(
            alexander_eval(3, Complex64::new(-1.0, 0.0)),
            Err(Error::Pole)
        );
    }

    #[test]
    fn delta_is_symmetric_on_circle() {
        let deg = 2 * 3 + 4;
        for i in 0..10 {
            let t = Complex64::from_polar(1.0, 0.1 + 0.3 * i as f64);
            let lhs = t.powi(deg) * alexander_eval(3, t.inv()).unwrap();
            let rhs = alexander_eval(3, t).unwrap();
            assert!((lhs.norm() - rhs.norm()).abs() < 1e-12);
            // palindromic: t^deg Δ(1/t) = Δ(t) exactly
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn f_and_delta_vanish_together() {
        assert_eq!(f_theta(5, 0.0), 1.0);
        // |Δ(e^{iθ})| = 2|F(θ)| / |1 + e^{iθ}|
        for n in [3, 4, 7, 12] {
            let p = knot_params(n).unwrap();
            for i in 0..1000 {
                let theta = p.alpha_n + (p.beta_n - p.alpha_n) * i as f64 / 999.0;
                let t = Complex64::from_polar(1.0, theta);
                let d = alexander_eval(n, t).unwrap().norm();
                let c = 2.0 / (t + 1.0).norm();
                assert!((d - c * f_theta(n, theta).abs()).abs() < 1e-12, "n={n}");
            }
        }
    }

    #[test]
    fn residue_class_forms_agree() {
        for n in 3..40 {
            let p = knot_params(n).unwrap();
            for i in 0..100 {
                let theta = p.alpha_n + (p.beta_n - p.alpha_n) * i as f64 / 99.0;
                let eps = if n % 3 == 1 {
                    theta - 2.0 * PI / 3.0
                } else {
                    2.0 * PI / 3.0 - theta
                };
                assert!((f_tilde(n, eps) - f_theta(n, theta)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn reported_roots() {
        let r4 = find_theta_n(4, 1e-12).unwrap();
        assert!((r4.theta_n - 2.2728).abs() < 5e-4);
        let r7 = find_theta_n(7, 1e-12).unwrap();
        assert!((r7.theta_n - 2.20391).abs() < 5e-5);
        assert!((2.0 * r7.theta_n.cos() + 1.18332).abs() < 5e-5);
        let r3 = find_theta_n(3, 1e-14).unwrap();
        assert!(r3.theta_n > 2.0 * PI / 3.0 - PI / 33.0 && r3.theta_n < 2.0 * PI / 3.0);
        assert!(r3.residual_f < 1e-12);
        assert!(r3.width() <= 1e-14);
        assert!(find_theta_n(3, 1e-15).is_err());
    }

    #[test]
    fn root_is_unique_and_below_gamma() {
        for n in 3..=30 {
            let p = knot_params(n).unwrap();
            let changes = (0..2000)
                .map(|i| f_theta(n, p.alpha_n + (p.beta_n - p.alpha_n) * i as f64 / 1999.0))
                .collect::<Vec<_>>()
                .windows(2)
                .filter(|w| (w[0] > 0.0) != (w[1] > 0.0))
                .count();
            assert_eq!(changes, 1, "n={n}");
            let r = find_theta_n(n, MIN_TOL).unwrap();
            assert!(r.theta_n >= p.alpha_n && r.theta_n < p.gamma_n);
            assert!(r.residual_f < 1e-12, "n={n} {}", r.residual_f);
            assert!(r.residual_delta < 1e-9);
        }
    }

    #[test]
    fn chebyshev_form_of_root_condition() {
        for n in 3..=30 {
            let y = 2.0 * theta_n(n).unwrap().cos();
            let v =
                (y - 1.0) * (y * y - 3.0) * cheb_s(n - 1, y) - (y * y - y - 1.0) * cheb_s(n - 2, y);
            assert!(v.abs() < 1e-8, "n={n} {v}");
        }
    }
}
