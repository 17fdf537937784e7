//! Longitude holonomy along the representation path.
//!
//! With `ρ(μ)` and `ρ(λ)` simultaneously upper triangular, `M` and `L` are
//! their (1,1) entries. On the path `|M| = |L| = 1`, `M = e^{iφ}` with
//! `φ = arccos(x/2)`, and `L = e^{iφ̃}` where `φ̃` is the continuous
//! argument of `L` starting from `φ̃(θ_n) = 0`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::alexander::theta_n;
use crate::charvariety::{knot_params, solve_coords, Branch, KnotParams, TraceCoords};
use crate::cheb::cheb_pair;
use crate::error::{Error, Result};
use crate::replift::{build_rep, eval_word, GroupWord, RepPair};

/// Within this distance of `β_n` the closed form is not held to the matrix route.
pub const BETA_GUARD: f64 = 1e-5;

/// `|DM - C|` below this makes the closed form indeterminate.
pub const INDETERMINATE_TOL: f64 = 1e-12;

/// Smallest step the unwrapper may take before giving up.
pub const MIN_UNWRAP_STEP: f64 = 1e-13;

/// `C = x²z - xy - z`, `D = xz - y - 1`.
pub fn cd_values(coords: &TraceCoords) -> (f64, f64) {
    let (x, y, z) = (coords.x, coords.y, coords.z);
    (x * x * z - x * y - z, x * z - y - 1.0)
}

/// `M = e^{iφ}`, `φ = arccos(x/2) ∈ [0, π]`.
pub fn meridian_angle(x: f64) -> f64 {
    (x / 2.0).clamp(-1.0, 1.0).acos()
}

/// Traces `s1 = tr ρ(bc)`, `s2 = tr ρ(ac)`, `s3 = tr ρ(ab⁻¹)`, their sum
/// `σ`, and the auxiliary `ξ` entering the longitude eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LongitudeIntermediates {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub sigma: f64,
    pub xi: f64,
}

pub fn longitude_intermediates(coords: &TraceCoords) -> Result<LongitudeIntermediates> {
    let (x, y, z, s) = (coords.x, coords.y, coords.z, coords.s);
    let s1 = y;
    let s2 = x * x - 2.0 - s;
    let s3 = y * s2 - (x * z - y);
    let sigma = s1 + s2 + s3;
    let xi = if (s2 + 1.0).abs() > 1e-12 {
        // (ξ - 2 - s2) s2 = σ - s2 - ξ
        sigma / (s2 + 1.0) + s2
    } else if s3.abs() > 1e-12 {
        -s3 + 2.0 + 2.0 / s3
    } else {
        return Err(Error::Degenerate(format!(
            "s2 = -1 and s3 = 0 simultaneously at theta = {}",
            coords.theta
        )));
    };
    Ok(LongitudeIntermediates {
        s1,
        s2,
        s3,
        sigma,
        xi,
    })
}

/// `(CM - D)/(DM - C)`; lies on the unit circle when `C, D` are real.
pub fn mobius_factor(c: f64, d: f64, m: Complex64) -> Result<Complex64> {
    let denom = d * m - c;
    if denom.norm() < INDETERMINATE_TOL {
        return Err(Error::Indeterminate(f64::NAN));
    }
    Ok((c * m - d) / denom)
}

/// Closed form `L = M^{-(4n+9)} (CM - D)/(DM - C)`.
pub fn l_formula(n: i64, coords: &TraceCoords) -> Result<Complex64> {
    let m = Complex64::from_polar(1.0, meridian_angle(coords.x));
    let (c, d) = cd_values(coords);
    let f = mobius_factor(c, d, m).map_err(|_| Error::Indeterminate(coords.theta))?;
    Ok(m.powi(-(4 * n as i32 + 9)) * f)
}

/// Eigenvalue of `ρ(λ)` on the fixed line of `ρ(a)`, from the matrices.
pub fn l_matrix(n: i64, rep: &RepPair) -> Complex64 {
    eval_word(rep, &GroupWord::longitude(n)).a11
}

/// `L` along the path: the matrix entry wherever the pair is irreducible,
/// the closed form next to `θ_n` where it is not, and `1` at `β_n`.
pub fn longitude_eigenvalue(
    n: i64,
    params: &KnotParams,
    coords: &TraceCoords,
) -> Result<Complex64> {
    if coords.theta >= params.beta_n {
        return Ok(Complex64::new(1.0, 0.0));
    }
    match build_rep(coords) {
        Ok(rep) => Ok(l_matrix(n, &rep)),
        Err(_) => l_formula(n, coords),
    }
}

/// `G(θ) = S²_{n-1} + (S_{n-1} - S_{n-2}) S³_{n-2}` at `y = 2cos θ`.
pub fn g_function(n: i64, theta: f64) -> f64 {
    let (a, b) = cheb_pair(n - 1, 2.0 * theta.cos());
    a * a + (a - b) * b * b * b
}

/// The same function written with sines; singular where `sin θ = 0`.
pub fn g_function_trig(n: i64, theta: f64) -> f64 {
    let nf = n as f64;
    let st = theta.sin();
    let num = (nf * theta).sin().powi(2) * st * st
        + 2.0
            * (theta / 2.0).sin()
            * ((nf - 0.5) * theta).cos()
            * ((nf - 1.0) * theta).sin().powi(3);
    num / st.powi(4)
}

/// Piecewise closed form of `φ̃` using `arccos` of `Re (CM - D)/(DM - C)`.
/// Valid while `D² - C² > 0`.
pub fn varphi_closed_form(n: i64, coords: &TraceCoords) -> f64 {
    let nf = n as f64;
    let big_n = ((2 * n + 4) / 3) as f64;
    let phi = meridian_angle(coords.x);
    let (c, d) = cd_values(coords);
    let cp = phi.cos();
    let ratio = (2.0 * c * d - (c * c + d * d) * cp) / (c * c + d * d - 2.0 * c * d * cp);
    let arc = ratio.clamp(-1.0, 1.0).acos();
    let offset = match coords.branch {
        Branch::Minus => 2.0 * big_n * PI,
        Branch::Plus => (4.0 * nf + 8.0) * PI - 2.0 * big_n * PI,
    };
    offset - (4.0 * nf + 9.0) * phi + arc
}

/// Position reached by the unwrapper along one `(n, branch)` path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnwrapState {
    pub theta: f64,
    pub varphi: f64,
    pub l: Complex64,
}

impl UnwrapState {
    /// The reducible point `θ_n`, where `L = 1` and `φ̃ = 0`.
    pub fn anchor(n: i64) -> Result<Self> {
        Ok(UnwrapState {
            theta: theta_n(n)?,
            varphi: 0.0,
            l: Complex64::new(1.0, 0.0),
        })
    }
}

/// Tracks `φ̃` along one path.
#[derive(Debug, Clone)]
pub struct PathTracker {
    pub params: KnotParams,
    pub branch: Branch,
    pub theta_n: f64,
    max_step: f64,
}

impl PathTracker {
    pub fn new(n: i64, branch: Branch) -> Result<Self> {
        let params = knot_params(n)?;
        let tn = theta_n(n)?;
        let max_step = (params.beta_n - tn) / (64.0 * params.floor_term as f64);
        Ok(PathTracker {
            params,
            branch,
            theta_n: tn,
            max_step,
        })
    }

    pub fn n(&self) -> i64 {
        self.params.n
    }

    pub fn anchor(&self) -> UnwrapState {
        UnwrapState {
            theta: self.theta_n,
            varphi: 0.0,
            l: Complex64::new(1.0, 0.0),
        }
    }

    pub fn coords(&self, theta: f64) -> Result<TraceCoords> {
        solve_coords(self.params.n, theta, self.branch)
    }

    fn eigenvalue_at(&self, theta: f64) -> Result<Complex64> {
        if theta == self.theta_n {
            return Ok(Complex64::new(1.0, 0.0));
        }
        longitude_eigenvalue(self.params.n, &self.params, &self.coords(theta)?)
    }

    /// Moves `state` to `target`, subdividing until every step changes
    /// `arg L` by less than π/2.
    pub fn advance(&self, state: UnwrapState, target: f64) -> Result<UnwrapState> {
        let mut st = state;
        let mut pending = vec![target];
        while let Some(&t) = pending.last() {
            let h = t - st.theta;
            if h == 0.0 {
                pending.pop();
                continue;
            }
            if h.abs() > self.max_step {
                pending.push(st.theta + h / 2.0);
                continue;
            }
            let l = self.eigenvalue_at(t)?;
            let d = (l * st.l.conj()).arg();
            if d.abs() < FRAC_PI_2 {
                st = UnwrapState {
                    theta: t,
                    varphi: st.varphi + d,
                    l,
                };
                pending.pop();
            } else if h.abs() < MIN_UNWRAP_STEP {
                return Err(Error::Unwrap {
                    from: st.theta,
                    to: t,
                    min_step: MIN_UNWRAP_STEP,
                });
            } else {
                pending.push(st.theta + h / 2.0);
            }
        }
        Ok(st)
    }
}

/// `(φ, φ̃)` at `theta`, unwrapped from `anchor`; also returns the new state.
pub fn angles(
    n: i64,
    theta: f64,
    branch: Branch,
    anchor: UnwrapState,
) -> Result<(f64, f64, UnwrapState)> {
    let tracker = PathTracker::new(n, branch)?;
    let st = tracker.advance(anchor, theta)?;
    let phi = meridian_angle(tracker.coords(theta)?.x);
    Ok((phi, st.varphi, st))
}

/// Every diagnostic attached to one point of a path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolonomyPoint {
    pub n: i64,
    pub theta: f64,
    pub branch: Branch,
    pub coords: TraceCoords,
    pub m: Complex64,
    pub l_formula: Option<Complex64>,
    pub l_matrix: Option<Complex64>,
    pub phi: f64,
    pub varphi: f64,
    pub c: f64,
    pub d: f64,
    pub d2c2: f64,
    pub g: f64,
    pub slope: f64,
    pub excluded: bool,
}

impl HolonomyPoint {
    /// `|L_formula - L_matrix|`, or NaN when one route is unavailable.
    pub fn l_route_gap(&self) -> f64 {
        match (self.l_formula, self.l_matrix) {
            (Some(a), Some(b)) => (a - b).norm(),
            _ => f64::NAN,
        }
    }
}

impl PathTracker {
    /// Advances to `theta` and collects all diagnostics there.
    pub fn point(&self, state: UnwrapState, theta: f64) -> Result<(HolonomyPoint, UnwrapState)> {
        let st = self.advance(state, theta)?;
        let coords = self.coords(theta)?;
        let n = self.params.n;
        let phi = meridian_angle(coords.x);
        let (c, d) = cd_values(&coords);
        let l_formula = l_formula(n, &coords).ok();
        let l_matrix = build_rep(&coords).ok().map(|rep| l_matrix(n, &rep));
        let point = HolonomyPoint {
            n,
            theta,
            branch: self.branch,
            coords,
            m: Complex64::from_polar(1.0, phi),
            l_formula,
            l_matrix,
            phi,
            varphi: st.varphi,
            c,
            d,
            d2c2: d * d - c * c,
            g: g_function(n, theta),
            slope: -st.varphi / phi,
            excluded: self.params.excluded,
        };
        Ok((point, st))
    }
}
