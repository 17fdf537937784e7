//! Explicit matrices for points of the solution family.
//!
//! `ρ(a)` is upper triangular with eigenvalue `M = e^{iφ}`, `x = 2cos φ`;
//! `ρ(w)` is lower triangular with eigenvalue `e^{iθ}`. The lower-left
//! entry of `ρ(w)` is then forced by `tr ρ(aw) = z`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::charvariety::TraceCoords;
use crate::cheb::Mat2;
use crate::error::{Error, Result};

/// `|w21|` below this means the pair is reducible.
pub const REDUCIBLE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    A,
    W,
}

/// A word in `a^{±1}, w^{±1}`, stored as letters with nonzero exponents
/// and no two adjacent syllables on the same letter.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GroupWord {
    syllables: Vec<(Letter, i64)>,
}

impl GroupWord {
    pub fn empty() -> Self {
        GroupWord::default()
    }

    pub fn new<I: IntoIterator<Item = (Letter, i64)>>(syllables: I) -> Self {
        let mut w = GroupWord::empty();
        for (letter, e) in syllables {
            w.push(letter, e);
        }
        w
    }

    fn push(&mut self, letter: Letter, e: i64) {
        if e == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some((l, exp)) if *l == letter => {
                *exp += e;
                if *exp == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((letter, e)),
        }
    }

    pub fn syllables(&self) -> &[(Letter, i64)] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Total number of letters, counting exponents.
    pub fn letter_count(&self) -> u64 {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for &(l, e) in &other.syllables {
            w.push(l, e);
        }
        w
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord::new(self.syllables.iter().rev().map(|&(l, e)| (l, -e)))
    }

    pub fn pow(&self, k: i64) -> GroupWord {
        let base = if k >= 0 { self.clone() } else { self.inverse() };
        (0..k.abs()).fold(GroupWord::empty(), |acc, _| acc.concat(&base))
    }

    pub fn a(e: i64) -> Self {
        GroupWord::new([(Letter::A, e)])
    }

    pub fn w(e: i64) -> Self {
        GroupWord::new([(Letter::W, e)])
    }

    /// `u = a w a⁻¹ w⁻¹ a⁻¹`
    pub fn u() -> Self {
        use Letter::*;
        GroupWord::new([(A, 1), (W, 1), (A, -1), (W, -1), (A, -1)])
    }

    /// `v = a⁻¹ w⁻¹ a w a w⁻¹`
    pub fn v() -> Self {
        use Letter::*;
        GroupWord::new([(A, -1), (W, -1), (A, 1), (W, 1), (A, 1), (W, -1)])
    }

    /// `[a, w] = a w a⁻¹ w⁻¹`
    pub fn commutator() -> Self {
        use Letter::*;
        GroupWord::new([(A, 1), (W, 1), (A, -1), (W, -1)])
    }

    /// The meridian `μ = a`.
    pub fn meridian() -> Self {
        GroupWord::a(1)
    }

    /// The canonical longitude `λ = a^{-(4n+7)} w a wⁿ a wⁿ a w`.
    pub fn longitude(n: i64) -> Self {
        use Letter::*;
        GroupWord::new([
            (A, -(4 * n + 7)),
            (W, 1),
            (A, 1),
            (W, n),
            (A, 1),
            (W, n),
            (A, 1),
            (W, 1),
        ])
    }

    /// `μ^m λ^l`.
    pub fn surgery_word(n: i64, m: i64, l: i64) -> Self {
        GroupWord::meridian()
            .pow(m)
            .concat(&GroupWord::longitude(n).pow(l))
    }

    /// The two sides `wⁿ u` and `v wⁿ` of the defining relation.
    pub fn relation_sides(n: i64) -> (Self, Self) {
        (
            GroupWord::w(n).concat(&GroupWord::u()),
            GroupWord::v().concat(&GroupWord::w(n)),
        )
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, (l, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let c = match l {
                Letter::A => "a",
                Letter::W => "w",
            };
            if *e == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Images of the generators `a` and `w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RepPair {
    pub a: Mat2,
    pub w: Mat2,
    /// Present when the pair was built from a point of the solution family.
    pub coords: Option<TraceCoords>,
}

impl RepPair {
    /// Wraps arbitrary determinant-one matrices.
    pub fn from_matrices(a: Mat2, w: Mat2) -> Self {
        RepPair { a, w, coords: None }
    }

    pub fn trivial() -> Self {
        RepPair::from_matrices(Mat2::identity(), Mat2::identity())
    }

    /// `(tr A, tr W, tr AW)`.
    pub fn traces(&self) -> (Complex64, Complex64, Complex64) {
        (self.a.trace(), self.w.trace(), (self.a * self.w).trace())
    }

    pub fn image(&self, letter: Letter) -> Mat2 {
        match letter {
            Letter::A => self.a,
            Letter::W => self.w,
        }
    }
}

/// Canonical triangular pair with the prescribed traces.
pub fn build_rep(coords: &TraceCoords) -> Result<RepPair> {
    let phi = (coords.x / 2.0).clamp(-1.0, 1.0).acos();
    let m = Complex64::from_polar(1.0, phi);
    let nn = Complex64::from_polar(1.0, coords.theta);
    let mn = m * nn;
    let w21 = coords.z - mn - mn.inv();
    // tr[A, W] - 2 = w21 (w21 + (M - 1/M)(N - 1/N)) / (MN); either factor
    // vanishing makes the pair reducible.
    let other = w21 + (m - m.inv()) * (nn - nn.inv());
    if w21.norm() < REDUCIBLE_TOL || other.norm() < REDUCIBLE_TOL {
        return Err(Error::Degenerate(format!(
            "reducible pair at theta = {} (|w21| = {:e}, |w21 + (M - 1/M)(N - 1/N)| = {:e})",
            coords.theta,
            w21.norm(),
            other.norm()
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    Ok(RepPair {
        a: Mat2::new(m, one, zero, m.inv()),
        w: Mat2::new(nn, zero, w21, nn.inv()),
        coords: Some(*coords),
    })
}

/// Left-to-right product of generator powers.
pub fn eval_word(rep: &RepPair, word: &GroupWord) -> Mat2 {
    word.syllables()
        .iter()
        .fold(Mat2::identity(), |acc, &(l, e)| {
            acc * rep.image(l).cheb_pow(e)
        })
}

/// Max-entry norm of `ρ(wⁿu) - ρ(vwⁿ)`.
pub fn relation_residual(n: i64, rep: &RepPair) -> f64 {
    let (lhs, rhs) = GroupWord::relation_sides(n);
    eval_word(rep, &lhs).max_abs_diff(&eval_word(rep, &rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ellipticity {
    /// Conjugate into SL2(R) with elliptic generators: `tr [a,w] > 2`.
    EllipticSl2r,
    /// Real traces in (-2, 2) with `tr [a,w] < 2`: an SU(2) character.
    Su2Like,
    /// On the boundary between the two (e.g. reducible, `tr [a,w] = 2`).
    Parabolic,
}

/// Separation from the boundary `tr [a,w] = 2`.
pub const ELLIPTIC_MARGIN: f64 = 1e-10;

pub fn ellipticity_check(rep: &RepPair) -> Ellipticity {
    let (x, y, z) = rep.traces();
    let real = [x, y, z].iter().all(|t| t.im.abs() < 1e-9);
    let (x, y, z) = (x.re, y.re, z.re);
    let comm = x * x + y * y + z * z - x * y * z - 2.0;
    let inside = |t: f64| t.abs() < 2.0;
    if !real {
        return Ellipticity::Parabolic;
    }
    if comm > 2.0 + ELLIPTIC_MARGIN && inside(x) && inside(y) {
        return Ellipticity::EllipticSl2r;
    }
    if comm < 2.0 - ELLIPTIC_MARGIN {
        use Letter::*;
        let samples = [
            GroupWord::meridian(),
            GroupWord::w(1),
            GroupWord::new([(A, 1), (W, 1)]),
            GroupWord::new([(A, 1), (W, -1)]),
            GroupWord::new([(A, 2), (W, 1)]),
            GroupWord::new([(A, 1), (W, 2)]),
            GroupWord::commutator(),
        ];
        let all_inside = samples.iter().all(|g| {
            let t = eval_word(rep, g).trace();
            t.im.abs() < 1e-9 && inside(t.re)
        });
        if all_inside {
            return Ellipticity::Su2Like;
        }
    }
    Ellipticity::Parabolic
}
