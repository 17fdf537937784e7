use thiserror::Error;

/// Errors raised by the trace, holonomy and certification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("knot parameter n = {0} is out of range (need n >= 3)")]
    InvalidKnot(i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not in SL2: |det - 1| = {0:e}")]
    NotSpecialLinear(f64),

    #[error("z^2 radicand {radicand:e} is negative at theta = {theta}; theta lies outside the representation path")]
    Domain { theta: f64, radicand: f64 },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("Alexander polynomial evaluated at its removable pole t = -1")]
    Pole,

    #[error("no sign change of F on [{lo}, {hi}] for n = {n}")]
    Bracket { n: i64, lo: f64, hi: f64 },

    #[error("longitude formula is the indeterminate form 0/0 at theta = {0}")]
    Indeterminate(f64),

    #[error(
        "phase unwrapping failed between theta = {from} and {to}: step fell below {min_step:e}"
    )]
    Unwrap { from: f64, to: f64, min_step: f64 },

    #[error("slope {m}/{l} is not below the certified bound {bound}")]
    OutOfRange { m: i64, l: i64, bound: i64 },

    #[error("slope 0 has no representation certificate")]
    ZeroSlope,

    #[error("n = 4 is excluded (D^2 - C^2 changes sign on the path); pass force to override")]
    Excluded,

    #[error("certification failed: {0}")]
    Certification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
