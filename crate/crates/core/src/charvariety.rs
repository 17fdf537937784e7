//! Trace coordinates on the character variety of `G(K_n) = <a, w | w^n u = v w^n>`.
//!
//! A representation of the free group `<a, w>` is determined up to
//! conjugacy by `x = tr a`, `y = tr w`, `z = tr aw`. It descends to the
//! knot group exactly when the two polynomials `Q` and `R_n` vanish. The
//! path studied here is the closed-form one-parameter family
//! `y = 2cos θ`, `θ ∈ [θ_n, β_n]`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cheb::cheb_pair;
use crate::error::{Error, Result};

/// Radicands in `[-RADICAND_CLAMP, 0)` are rounded up to zero.
pub const RADICAND_CLAMP: f64 = 1e-12;

/// `|S_{n-2}(y)|` below this is treated as zero.
pub const DEGENERATE_S: f64 = 1e-12;

/// The two lifts `z = ±sqrt(...)` of the path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }

    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Branch::Plus),
            "minus" | "-" => Ok(Branch::Minus),
            _ => Err(Error::InvalidArgument(format!("unknown branch '{s}'"))),
        }
    }
}

/// Constants attached to the knot `K_n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KnotParams {
    pub n: i64,
    pub residue: i64,
    pub alpha_n: f64,
    pub beta_n: f64,
    pub gamma_n: f64,
    /// `⌊(2n+4)/3⌋`
    pub floor_term: i64,
    /// `2g - 1 = 2n + 3`
    pub lspace_bound: i64,
    /// `2⌊(2n+4)/3⌋`
    pub certified_bound: i64,
    /// `n = 4`: computable, but the positivity of `D² - C²` fails.
    pub excluded: bool,
}

impl KnotParams {
    pub fn new(n: i64) -> Result<Self> {
        knot_params(n)
    }

    pub fn n_f64(&self) -> f64 {
        self.n as f64
    }
}

pub fn knot_params(n: i64) -> Result<KnotParams> {
    if n < 3 {
        return Err(Error::InvalidKnot(n));
    }
    let nf = n as f64;
    let base = 2.0 * PI / 3.0;
    let residue = n.rem_euclid(3);
    let (alpha_n, beta_n, gamma_n) = match residue {
        0 => (
            base - PI / (6.0 * nf + 15.0),
            base + PI / (6.0 * nf + 3.0),
            base,
        ),
        1 => (
            base + PI / (6.0 * nf - 3.0),
            base + PI / (2.0 * nf + 1.0),
            base + 4.0 * PI / (12.0 * nf + 9.0),
        ),
        _ => (
            base - PI / (2.0 * nf + 5.0),
            base - PI / (6.0 * nf + 3.0),
            base - 4.0 * PI / (12.0 * nf + 9.0),
        ),
    };
    let floor_term = (2 * n + 4) / 3;
    Ok(KnotParams {
        n,
        residue,
        alpha_n,
        beta_n,
        gamma_n,
        floor_term,
        lspace_bound: 2 * n + 3,
        certified_bound: 2 * floor_term,
        excluded: n == 4,
    })
}

/// A point `(x, y, z)` of the solution family plus its auxiliary data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceCoords {
    pub theta: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    /// Root of `r - 1/r = S_{n-2}(y)` with `|r| > 1`.
    pub r: f64,
    pub branch: Branch,
    /// `x² + y² + z² - xyz - 4`; `tr [a, w] = s + 2`.
    pub s: f64,
}

/// `x² + y² + z² - xyz - 4`.
pub fn s_value(x: f64, y: f64, z: f64) -> f64 {
    x * x + y * y + z * z - x * y * z - 4.0
}

/// `Q = tr u - tr v`.
pub fn riley_q(x: f64, y: f64, z: f64) -> f64 {
    x - x * y + (x * x + y * y + z * z - x * y * z - 3.0) * z
}

/// `R_n = tr(w^n u a) - tr(v w^n a)`.
pub fn riley_rn(n: i64, x: f64, y: f64, z: f64) -> f64 {
    let (s2, s3) = cheb_pair(n - 2, y);
    (y + 2.0 - x * z - x * x - z * z + x * y * z) * s2 - (y * y + y - 2.0 + z * z - x * y * z) * s3
}

/// The quantities `p, q, S, T` used to eliminate `x` from `Q = R_n = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverIntermediates {
    pub p: f64,
    pub q: f64,
    pub s: f64,
    pub t: f64,
}

/// Only `y` and `z` enter `p, q, S, T`; `x` is accepted so call sites can
/// pass a full coordinate triple.
pub fn intermediates(n: i64, _x: f64, y: f64, z: f64) -> SolverIntermediates {
    let (s2, s3) = cheb_pair(n - 2, y);
    let z2 = z * z;
    let p = (y - 1.0) * s2 + z2 * (s2 - y * s3);
    let q = (y * y + y - 1.0) * s2 - (y * y + y - 2.0) * s3 - z2 * s3;
    let s = z2 * q * q - (y * z2 + y - 1.0) * p * q + (y * y + z2 - 3.0) * p * p;
    let d = s2 - s3;
    let t = (z2 - 1.0) * (z2 - 1.0) - s2 * d * (z2 - 1.0) - d * d;
    SolverIntermediates { p, q, s, t }
}

/// `S_{n-2}(y) Q + z R_n - (-p x + q z)`; zero for every `(x, y, z)`.
pub fn linear_combination_residual(n: i64, x: f64, y: f64, z: f64) -> f64 {
    let s2 = cheb_pair(n - 2, y).0;
    let im = intermediates(n, x, y, z);
    s2 * riley_q(x, y, z) + z * riley_rn(n, x, y, z) - (-im.p * x + im.q * z)
}

/// Solves for the path point at angle `theta` on the given branch.
pub fn solve_coords(n: i64, theta: f64, branch: Branch) -> Result<TraceCoords> {
    if n < 3 {
        return Err(Error::InvalidKnot(n));
    }
    let y = 2.0 * theta.cos();
    let (s2, s3) = cheb_pair(n - 2, y);
    if s2.abs() < DEGENERATE_S {
        return Err(Error::Degenerate(format!(
            "S_(n-2)(y) = {s2:e} vanishes at theta = {theta}"
        )));
    }
    let root = (s2 * s2 + 4.0).sqrt();
    let r = if n % 3 == 0 {
        (s2 - root) / 2.0
    } else {
        (s2 + root) / 2.0
    };
    let mut radicand = 1.0 + r * (s2 - s3);
    if radicand < 0.0 {
        if radicand < -RADICAND_CLAMP {
            return Err(Error::Domain { theta, radicand });
        }
        radicand = 0.0;
    }
    let z = branch.sign() * radicand.sqrt();
    let x = z * (y + 1.0 - (s3 + r) / s2);
    Ok(TraceCoords {
        theta,
        x,
        y,
        z,
        r,
        branch,
        s: s_value(x, y, z),
    })
}

impl TraceCoords {
    /// `tr ρ([a, w]) = x² + y² + z² - xyz - 2`.
    pub fn commutator_trace(&self) -> f64 {
        self.s + 2.0
    }

    /// Residuals of the two defining relations of the family:
    /// `z² - 1 - r(S_{n-2} - S_{n-3})` and `x S_{n-2} - z((y+1)S_{n-2} - S_{n-3} - r)`.
    pub fn family_residuals(&self, n: i64) -> (f64, f64) {
        let (s2, s3) = cheb_pair(n - 2, self.y);
        let rz = self.z * self.z - 1.0 - self.r * (s2 - s3);
        let rx = self.x * s2 - self.z * ((self.y + 1.0) * s2 - s3 - self.r);
        (rz, rx)
    }
}
