//! Chebyshev polynomials of the second kind and 2x2 matrix powers.
//!
//! `S_k` is defined for every integer `k` by `S_0 = 1`, `S_1 = y` and
//! `S_k = y S_{k-1} - S_{k-2}`; running the recursion backwards gives
//! `S_{-1} = 0`, `S_{-2} = -1`, and in general `S_{-k} = -S_{k-2}`.
//! Evaluation is always by recursion; the trigonometric closed form
//! `sin((k+1)θ)/sin θ` only appears in tests.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Returns `(S_k(y), S_{k-1}(y))`, generic over any ring-like scalar.
pub fn cheb_pair<T: Num + Copy>(k: i64, y: T) -> (T, T) {
    // (cur, prev) = (S_j, S_{j-1}); start at j = 0.
    let (mut cur, mut prev) = (T::one(), T::zero());
    if k >= 0 {
        for _ in 0..k {
            let next = y * cur - prev;
            prev = cur;
            cur = next;
        }
    } else {
        for _ in 0..(-k) {
            // S_{j-2} = y S_{j-1} - S_j
            let older = y * prev - cur;
            cur = prev;
            prev = older;
        }
    }
    (cur, prev)
}

/// `S_k(y)` for any integer `k`.
pub fn cheb_s(k: i64, y: f64) -> f64 {
    cheb_pair(k, y).0
}

/// `S_k(y)` for complex `y`.
pub fn cheb_s_complex(k: i64, y: Complex64) -> Complex64 {
    cheb_pair(k, y).0
}

/// A single evaluation `S_k(y)`, kept together with its inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChebEval {
    pub k: i64,
    pub y: f64,
    pub value: f64,
}

impl ChebEval {
    pub fn new(k: i64, y: f64) -> Self {
        ChebEval {
            k,
            y,
            value: cheb_s(k, y),
        }
    }
}

/// `|S_k^2 + S_{k-1}^2 - y S_k S_{k-1} - 1|`, which vanishes identically.
pub fn cheb_identity_residual(k: i64, y: f64) -> f64 {
    let (sk, skm1) = cheb_pair(k, y);
    (sk * sk + skm1 * skm1 - y * sk * skm1 - 1.0).abs()
}

/// Which factorisation [`cheb_product_roots`] returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootFamily {
    /// Roots of `S_k`: `2cos(jπ/(k+1))`, `j = 1..=k`.
    S,
    /// Roots of `S_k - S_{k-1}`: `2cos((2j-1)π/(2k+1))`, `j = 1..=k`.
    SMinusPrev,
}

/// The `k` real roots of `S_k` (or `S_k - S_{k-1}`), in decreasing order.
pub fn cheb_product_roots(k: i64, family: RootFamily) -> Result<Vec<f64>> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!(
            "root factorisation needs k >= 1, got {k}"
        )));
    }
    let kf = k as f64;
    Ok((1..=k)
        .map(|j| {
            let j = j as f64;
            match family {
                RootFamily::S => 2.0 * (j * PI / (kf + 1.0)).cos(),
                RootFamily::SMinusPrev => 2.0 * ((2.0 * j - 1.0) * PI / (2.0 * kf + 1.0)).cos(),
            }
        })
        .collect())
}

/// Evaluates `prod (y - root)`.
pub fn product_from_roots(roots: &[f64], y: f64) -> f64 {
    roots.iter().map(|r| y - r).product()
}

/// A 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    pub a11: Complex64,
    pub a12: Complex64,
    pub a21: Complex64,
    pub a22: Complex64,
}

/// Tolerance on `|det - 1|` accepted by [`mat_power`].
pub const DET_TOLERANCE: f64 = 1e-8;

impl Mat2 {
    pub const fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    pub fn from_real(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Mat2::new(a11.into(), a12.into(), a21.into(), a22.into())
    }

    pub fn identity() -> Self {
        Mat2::from_real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn zero() -> Self {
        Mat2::from_real(0.0, 0.0, 0.0, 0.0)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Mat2::new(self.a11 * c, self.a12 * c, self.a21 * c, self.a22 * c)
    }

    pub fn trace(&self) -> Complex64 {
        self.a11 + self.a22
    }

    pub fn det(&self) -> Complex64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    /// Adjugate; equals the inverse for determinant-one matrices.
    pub fn adjugate(&self) -> Self {
        Mat2::new(self.a22, -self.a12, -self.a21, self.a11)
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (*self - *other)
            .entries()
            .iter()
            .map(|e| e.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// `A^k = S_{k-1}(tr A) A - S_{k-2}(tr A) I`, assuming `det A = 1`.
    pub fn cheb_pow(&self, k: i64) -> Self {
        match k {
            0 => Mat2::identity(),
            1 => *self,
            -1 => self.adjugate(),
            _ => {
                let (s1, s2) = cheb_pair(k - 1, self.trace());
                self.scale(s1) - Mat2::identity().scale(s2)
            }
        }
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 + o.a11,
            self.a12 + o.a12,
            self.a21 + o.a21,
            self.a22 + o.a22,
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 - o.a11,
            self.a12 - o.a12,
            self.a21 - o.a21,
            self.a22 - o.a22,
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-self.a11, -self.a12, -self.a21, -self.a22)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.a11, self.a12, self.a21, self.a22
        )
    }
}

/// `A^k` through the Cayley-Hamilton/Chebyshev expansion.
pub fn mat_power(a: &Mat2, k: i64) -> Result<Mat2> {
    let dev = (a.det() - 1.0).norm();
    if dev > DET_TOLERANCE {
        return Err(Error::NotSpecialLinear(dev));
    }
    Ok(a.cheb_pow(k))
}
