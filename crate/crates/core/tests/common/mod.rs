//! Independent reference computations. Nothing here calls the library's
//! Chebyshev recursion, matrix power, or root finders.
#![allow(dead_code)]

use num_complex::Complex64;

pub type M2 = [[Complex64; 2]; 2];

/// `S_k(2cos θ) = sin((k+1)θ) / sin θ`.
pub fn cheb_trig(k: i64, theta: f64) -> f64 {
    ((k + 1) as f64 * theta).sin() / theta.sin()
}

pub fn mul(a: &M2, b: &M2) -> M2 {
    let mut c = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

pub fn ident() -> M2 {
    let o = Complex64::new(1.0, 0.0);
    let z = Complex64::new(0.0, 0.0);
    [[o, z], [z, o]]
}

/// Inverse of a determinant-one matrix.
pub fn inv(a: &M2) -> M2 {
    [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]
}

/// Repeated multiplication; negative `k` uses the inverse.
pub fn naive_pow(a: &M2, k: i64) -> M2 {
    let base = if k < 0 { inv(a) } else { *a };
    (0..k.abs()).fold(ident(), |acc, _| mul(&acc, &base))
}

/// Product of `(generator, exponent)` pairs, left to right.
pub fn word(parts: &[(&M2, i64)]) -> M2 {
    parts
        .iter()
        .fold(ident(), |acc, (g, e)| mul(&acc, &naive_pow(g, *e)))
}

pub fn dist(a: &M2, b: &M2) -> f64 {
    let mut d = 0.0_f64;
    for i in 0..2 {
        for j in 0..2 {
            d = d.max((a[i][j] - b[i][j]).norm());
        }
    }
    d
}

/// The upper/lower triangular pair with traces `x`, `2cos θ` and `tr(AW) = z`.
pub fn pair(x: f64, theta: f64, z: f64) -> (M2, M2) {
    let m = Complex64::from_polar(1.0, (x / 2.0).clamp(-1.0, 1.0).acos());
    let nn = Complex64::from_polar(1.0, theta);
    let o = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let w21 = Complex64::new(z, 0.0) - m * nn - 1.0 / (m * nn);
    ([[m, o], [zero, 1.0 / m]], [[nn, zero], [w21, 1.0 / nn]])
}

/// `wⁿ u (v wⁿ)⁻¹` distance from the identity, `u = a w a⁻¹ w⁻¹ a⁻¹`, `v = a⁻¹ w⁻¹ a w a w⁻¹`.
pub fn relation_gap(n: i64, a: &M2, w: &M2) -> f64 {
    let lhs = word(&[(w, n), (a, 1), (w, 1), (a, -1), (w, -1), (a, -1)]);
    let rhs = word(&[(a, -1), (w, -1), (a, 1), (w, 1), (a, 1), (w, -1), (w, n)]);
    dist(&lhs, &rhs)
}

/// `λ = a^{-(4n+7)} w a wⁿ a wⁿ a w`.
pub fn longitude(n: i64, a: &M2, w: &M2) -> M2 {
    word(&[
        (a, -(4 * n + 7)),
        (w, 1),
        (a, 1),
        (w, n),
        (a, 1),
        (w, n),
        (a, 1),
        (w, 1),
    ])
}

/// Horner evaluation, coefficients from the leading term down.
pub fn horner(coeffs: &[f64], y: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, c| acc * y + c)
}

/// Plain bisection of a sign change.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All real roots on `[lo, hi]` found by scanning `cells` cells and bisecting.
pub fn real_roots(f: impl Fn(f64) -> f64 + Copy, lo: f64, hi: f64, cells: usize) -> Vec<f64> {
    let mut out = Vec::new();
    let h = (hi - lo) / cells as f64;
    for i in 0..cells {
        let (a, b) = (lo + h * i as f64, lo + h * (i + 1) as f64);
        if (f(a) > 0.0) != (f(b) > 0.0) {
            out.push(bisect(f, a, b));
        }
    }
    out
}

/// `e^{-i(2n+5)θ/2}` times the Alexander numerator, written as a cosine sum.
/// The numerator is palindromic, so this is real.
pub fn alexander_symmetric(n: i64, theta: f64) -> f64 {
    let d = (2 * n + 5) as f64;
    let terms: [(f64, f64); 6] = [
        (1.0, d),
        (-1.0, (2 * n + 3) as f64),
        (1.0, (2 * n + 2) as f64),
        (1.0, 3.0),
        (-1.0, 2.0),
        (1.0, 0.0),
    ];
    terms
        .iter()
        .map(|(c, e)| c * ((e - d / 2.0) * theta).cos())
        .sum()
}

pub fn beta(n: i64) -> f64 {
    use std::f64::consts::PI;
    let nf = n as f64;
    match n % 3 {
        0 => 2.0 * PI / 3.0 + PI / (6.0 * nf + 3.0),
        1 => 2.0 * PI / 3.0 + PI / (2.0 * nf + 1.0),
        _ => 2.0 * PI / 3.0 - PI / (6.0 * nf + 3.0),
    }
}

pub fn floor_term(n: i64) -> i64 {
    (2 * n + 4) / 3
}
