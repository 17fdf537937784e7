//! Elliptic SL2(R) representation paths of (-2, 3, 2n+1)-pretzel knot
//! groups and numerical certificates for Dehn-surgery slopes.
//!
//! The knot group is presented as `<a, w | wⁿ u = v wⁿ>`. For `n ≥ 3` a
//! closed-form family of representations is parametrised by
//! `θ ∈ [θ_n, β_n]`, with `θ_n` a unit-circle root of the Alexander
//! polynomial. Along the family the meridian and longitude act by
//! rotations `M = e^{iφ}`, `L = e^{iφ̃}`, and a slope `m/l` is realised
//! wherever `m φ + l φ̃ = 0`.
//!
//! ```
//! use pretzel_core::certify::certify_slope;
//!
//! let cert = certify_slope(3, 5, 1, 1e-15).unwrap();
//! assert!(cert.matrix_residual < 1e-6);
//! ```

pub mod alexander;
pub mod certify;
pub mod charvariety;
pub mod cheb;
pub mod error;
pub mod holonomy;
pub mod lemmas;
pub mod replift;

pub use error::{Error, Result};
