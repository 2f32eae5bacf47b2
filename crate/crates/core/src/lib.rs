//! Quantum Gauss–Bonnet invariant `I_q(Γ, b)` of homologically trivial generic
//! curves on closed oriented surfaces.
//!
//! The crate computes `I_q` exactly from a combinatorial description of the
//! curve (a signed Gauss code plus region data) by two independent routes, and
//! numerically from a smooth parametrization on the round sphere or the flat
//! torus. From `I_q` it derives the rotation number and the `J⁺`, `J⁻` and
//! `SJ⁺` invariants.
//!
//! Modules:
//!
//! - [`laurent`]: exact Laurent polynomials in `q^(1/2)`.
//! - [`diagram`]: curve diagrams, face tracing, index functions and the
//!   Euler-characteristic profiles of the index level sets.
//! - [`invariants`]: `I_q` by the subsurface formula and by Euler integration,
//!   base-point change, rotation number, `J⁺`/`J⁻`/`SJ⁺`.
//! - [`moves`]: self-tangency and triple-point moves, random diagrams.
//! - [`geometry`]: parametric curves, double points, quadrature of the
//!   integral definition, diagram extraction.
//! - [`fixtures`]: the built-in catalog.
//! - [`cli`]: the `qgb` command line.

pub mod cli;
pub mod diagram;
pub mod fixtures;
pub mod geometry;
pub mod invariants;
pub mod laurent;
pub mod moves;

mod half;

pub use diagram::{ArcSide, CurveDiagram, DiagramError, IndexFunction, Side, SignedGaussCode};
pub use half::HalfInt;
pub use invariants::{InvariantError, InvariantReport, RotationNumber};
pub use laurent::HalfLaurent;

/// Exact rational number used for coefficients and invariant values.
pub type Rational = num_rational::BigRational;

/// Converts an integer to [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Builds the reduced fraction `n/d`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
