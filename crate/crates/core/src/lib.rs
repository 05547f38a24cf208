//! Exact conversion between the cosine basis `{cos kx}` and the power basis
//! `{cosᵏx}`, closed-form inverses of the Chebyshev coefficient matrices,
//! Vandermonde pseudoinverses, and a constructor for cosine polynomials with
//! prescribed leading power-basis coefficients and a certified small `l₁`
//! coefficient norm.
//!
//! All certified quantities are exact rationals. Floating point appears only
//! in clearly named diagnostics (spectral norms, condition numbers, the
//! irrational constant `L`).

pub mod adjust;
pub mod bounds;
pub mod cheb;
pub mod combin;
pub mod error;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod suites;
pub mod vander;

pub use adjust::{construct_b, constants, AdjustmentCertificate, AdjustmentProblem, Constants};
pub use error::{Error, Result};
pub use matrix::{Matrix, RatMatrix};
pub use poly::{AnyPoly, Basis, PowerPoly, TrigPoly};
pub use scalar::{Rational, Ring, Scalar};
pub use vander::VandermondeSpec;

/// Dense `f64` matrix, used for float diagnostics.
pub type FloatMatrix = Matrix<f64>;
/// Cosine polynomial over `f64` coefficients.
pub type FloatTrigPoly = TrigPoly<f64>;
/// Power-basis polynomial over `f64` coefficients.
pub type FloatPowerPoly = PowerPoly<f64>;
