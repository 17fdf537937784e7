//! Surgery-slope certificates.
//!
//! For a slope `m/l` with `m/l < 2⌊(2n+4)/3⌋`, `m ≠ 0`, find `θ*` on the
//! branch selected by the sign of `m/l` where `h(θ) = m φ(θ) + l φ̃(θ)`
//! vanishes. Then `M^m L^l = 1`, so `ρ(μ^m λ^l) = I` and `ρ` factors
//! through the surgered manifold. The certificate records `θ*` and both
//! residuals; [`verify_certificate`] recomputes the matrix residual from
//! scratch.

use serde::{Deserialize, Serialize};

use crate::charvariety::{knot_params, Branch};
use crate::cheb::Mat2;
use crate::error::{Error, Result};
use crate::holonomy::{meridian_angle, HolonomyPoint, PathTracker, UnwrapState};
use crate::replift::{build_rep, ellipticity_check, eval_word, Ellipticity, GroupWord};

/// Distance kept from both ends of the path in sweeps.
pub const SWEEP_MARGIN: f64 = 1e-7;

/// Required `|m φ + l φ̃|` at `θ*`.
pub const H_TOLERANCE: f64 = 1e-10;

/// Required max-entry distance of `ρ(μ^m λ^l)` from the identity.
pub const MATRIX_TOLERANCE: f64 = 1e-6;

/// Default number of grid cells used to bracket a root of `h`.
pub const DEFAULT_BRACKET_SAMPLES: usize = 2000;

/// `-φ̃/φ` at `theta`, unwrapping from `anchor`.
pub fn slope_value(n: i64, theta: f64, branch: Branch, anchor: UnwrapState) -> Result<f64> {
    let tracker = PathTracker::new(n, branch)?;
    let st = tracker.advance(anchor, theta)?;
    let phi = meridian_angle(tracker.coords(theta)?.x);
    Ok(-st.varphi / phi)
}

/// Uniform grid of `samples` points on `[θ_n + δ, β_n - δ]`.
pub fn sweep_grid(theta_n: f64, beta_n: f64, samples: usize) -> Vec<f64> {
    let lo = theta_n + SWEEP_MARGIN;
    let hi = beta_n - SWEEP_MARGIN;
    let last = (samples - 1) as f64;
    (0..samples)
        .map(|i| {
            if i + 1 == samples {
                hi
            } else {
                lo + (hi - lo) * i as f64 / last
            }
        })
        .collect()
}

/// Holonomy diagnostics along the whole path, in increasing `θ`.
pub fn sweep(n: i64, branch: Branch, samples: usize) -> Result<Vec<HolonomyPoint>> {
    if samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "sweep needs at least 2 samples, got {samples}"
        )));
    }
    let tracker = PathTracker::new(n, branch)?;
    let mut st = tracker.anchor();
    let mut out = Vec::with_capacity(samples);
    for theta in sweep_grid(tracker.theta_n, tracker.params.beta_n, samples) {
        let (point, next) = tracker.point(st, theta)?;
        st = next;
        out.push(point);
    }
    Ok(out)
}

/// Evidence that `ρ(μ^m λ^l) = I` for one point of the path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeCertificate {
    pub n: i64,
    pub m: i64,
    pub l: i64,
    pub branch: Branch,
    pub theta_star: f64,
    pub h_residual: f64,
    pub matrix_residual: f64,
    pub tolerance: f64,
    #[serde(rename = "paper_bound")]
    pub certified_bound: i64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifyOptions {
    /// Bisection stops once the bracket on `θ*` is this narrow.
    pub theta_tol: f64,
    /// Grid cells used to locate the first sign change of `h`.
    pub samples: usize,
    /// Allow `n = 4`.
    pub force: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            theta_tol: 1e-12,
            samples: DEFAULT_BRACKET_SAMPLES,
            force: false,
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Validates `m/l` for knot `n`; returns the branch it lives on.
pub fn slope_branch(n: i64, m: i64, l: i64, force: bool) -> Result<Branch> {
    let p = knot_params(n)?;
    if l < 1 {
        return Err(Error::InvalidArgument(format!(
            "denominator must be positive, got {l}"
        )));
    }
    if m == 0 {
        return Err(Error::ZeroSlope);
    }
    if gcd(m, l) != 1 {
        return Err(Error::InvalidArgument(format!(
            "{m}/{l} is not in lowest terms"
        )));
    }
    if m >= p.certified_bound * l {
        return Err(Error::OutOfRange {
            m,
            l,
            bound: p.certified_bound,
        });
    }
    if p.excluded && !force {
        return Err(Error::Excluded);
    }
    Ok(if m < 0 { Branch::Minus } else { Branch::Plus })
}

/// Certifies the slope `m/l` (in lowest terms, `l ≥ 1`) for knot `n`.
pub fn certify_slope(n: i64, m: i64, l: i64, tol: f64) -> Result<SlopeCertificate> {
    certify_slope_with(
        n,
        m,
        l,
        CertifyOptions {
            theta_tol: tol,
            ..CertifyOptions::default()
        },
    )
}

pub fn certify_slope_with(
    n: i64,
    m: i64,
    l: i64,
    opts: CertifyOptions,
) -> Result<SlopeCertificate> {
    let branch = slope_branch(n, m, l, opts.force)?;
    let tracker = PathTracker::new(n, branch)?;
    let (mf, lf) = (m as f64, l as f64);
    let h_of = |st: &UnwrapState| -> Result<f64> {
        let phi = meridian_angle(tracker.coords(st.theta)?.x);
        Ok(mf * phi + lf * st.varphi)
    };

    // first sign change of h on the sweep grid
    let grid = sweep_grid(tracker.theta_n, tracker.params.beta_n, opts.samples.max(2));
    let mut prev = tracker.advance(tracker.anchor(), grid[0])?;
    let mut h_prev = h_of(&prev)?;
    let mut bracket = None;
    for &theta in &grid[1..] {
        let st = tracker.advance(prev, theta)?;
        let h = h_of(&st)?;
        if h_prev == 0.0 {
            bracket = Some((prev, prev));
            break;
        }
        if (h > 0.0) != (h_prev > 0.0) || h == 0.0 {
            bracket = Some((prev, st));
            break;
        }
        prev = st;
        h_prev = h;
    }
    let (mut lo, mut hi) = bracket.ok_or_else(|| {
        Error::Certification(format!(
            "h has no sign change on the sweep grid for {m}/{l}"
        ))
    })?;

    let mut h_lo = h_of(&lo)?;
    let mut h_hi = h_of(&hi)?;
    // past theta_tol, keep splitting while the residual target is unmet
    while hi.theta - lo.theta > opts.theta_tol || h_lo.abs().min(h_hi.abs()) >= H_TOLERANCE {
        let mid = 0.5 * (lo.theta + hi.theta);
        if mid <= lo.theta || mid >= hi.theta {
            break;
        }
        let st = tracker.advance(lo, mid)?;
        let h = h_of(&st)?;
        if h == 0.0 {
            (lo, hi, h_lo, h_hi) = (st, st, h, h);
            break;
        }
        if (h > 0.0) == (h_lo > 0.0) {
            lo = st;
            h_lo = h;
        } else {
            hi = st;
            h_hi = h;
        }
    }
    let (star, h_residual) = if h_lo.abs() <= h_hi.abs() {
        (lo, h_lo.abs())
    } else {
        (hi, h_hi.abs())
    };

    let mut cert = SlopeCertificate {
        n,
        m,
        l,
        branch,
        theta_star: star.theta,
        h_residual,
        matrix_residual: f64::NAN,
        tolerance: MATRIX_TOLERANCE,
        certified_bound: tracker.params.certified_bound,
    };
    cert.matrix_residual = verify_certificate(&cert)?;
    if cert.h_residual.is_nan() || cert.h_residual >= H_TOLERANCE {
        return Err(Error::Certification(format!(
            "h residual {:e} exceeds {H_TOLERANCE:e}",
            cert.h_residual
        )));
    }
    if cert.matrix_residual.is_nan() || cert.matrix_residual >= cert.tolerance {
        return Err(Error::Certification(format!(
            "matrix residual {:e} exceeds {:e}",
            cert.matrix_residual, cert.tolerance
        )));
    }
    Ok(cert)
}

/// `ρ(μ^m λ^l)` at the certificate's point, rebuilt from its stored inputs.
pub fn surgery_image(cert: &SlopeCertificate) -> Result<Mat2> {
    let coords = crate::charvariety::solve_coords(cert.n, cert.theta_star, cert.branch)?;
    let rep = build_rep(&coords)?;
    Ok(eval_word(
        &rep,
        &GroupWord::surgery_word(cert.n, cert.m, cert.l),
    ))
}

/// Recomputes the max-entry distance of `ρ(μ^m λ^l)` from `I`.
pub fn verify_certificate(cert: &SlopeCertificate) -> Result<f64> {
    Ok(surgery_image(cert)?.max_abs_diff(&Mat2::identity()))
}

/// Traces of `ρ(μ)`, `ρ(λ)` and the ellipticity class at the certificate's point.
pub fn boundary_traces(cert: &SlopeCertificate) -> Result<(f64, f64, Ellipticity)> {
    let coords = crate::charvariety::solve_coords(cert.n, cert.theta_star, cert.branch)?;
    let rep = build_rep(&coords)?;
    let tm = eval_word(&rep, &GroupWord::meridian()).trace();
    let tl = eval_word(&rep, &GroupWord::longitude(cert.n)).trace();
    Ok((tm.re, tl.re, ellipticity_check(&rep)))
}

/// Range of `-φ̃/φ` observed on a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeRange {
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub n: i64,
    pub excluded: bool,
    /// Slopes below this are certified (`2⌊(2n+4)/3⌋`).
    pub certified_upper: i64,
    /// Slopes below `2g - 1 = 2n + 3` are expected to work.
    pub conjectured_upper: i64,
    /// `[certified_upper, conjectured_upper)` remains open.
    pub gap: (i64, i64),
    pub plus: SlopeRange,
    pub minus: SlopeRange,
}

fn slope_range(points: &[HolonomyPoint]) -> SlopeRange {
    let (min, max) = points
        .iter()
        .map(|p| p.slope)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
            (lo.min(s), hi.max(s))
        });
    SlopeRange { min, max }
}

pub fn coverage_report(n: i64, samples: usize) -> Result<CoverageReport> {
    let p = knot_params(n)?;
    let plus = slope_range(&sweep(n, Branch::Plus, samples)?);
    let minus = slope_range(&sweep(n, Branch::Minus, samples)?);
    Ok(CoverageReport {
        n,
        excluded: p.excluded,
        certified_upper: p.certified_bound,
        conjectured_upper: p.lspace_bound,
        gap: (p.certified_bound, p.lspace_bound),
        plus,
        minus,
    })
}
