//! Numerical path: smooth curves on the round unit sphere and the flat torus.
//!
//! [`numeric_iq`] evaluates the integral definition
//!
//! ```text
//! I_q = (1/2π) [ ∫ k_g q^ind ds − Σ_d θ_d q^ind(d) (q^½ − q^−½) + ∬ K (q^ind − 1)/(q^½ − q^−½) dA ]
//! ```
//!
//! by quadrature. The index field comes from signed path crossings
//! ([`point_index`]), never from a diagram, so comparing with the exact value
//! of [`extract_diagram`]'s output is an independent check.
//!
//! Line integrals use composite Gauss–Legendre rules on the arcs between
//! crossings. The area term on the sphere is a meridian sweep: along each
//! meridian from the sweep axis' south pole the index advances at every curve
//! crossing, and `dA = dφ dz`. The azimuth is split where meridians touch the
//! curve or pass through a double point, and each piece is integrated with a
//! cosine substitution that smooths the square-root behaviour at its ends.
//! Every quantity is computed at the configured grid and at half of it;
//! reported errors are half the difference plus a roundoff floor.

mod curve;
mod double;
mod extract;
mod numeric;
mod paths;
mod quad;

use thiserror::Error;

use crate::diagram::DiagramError;

pub use curve::{
    geodesic_curvature, project_to_sphere, CurveEvaluator, Figure8, Jet, Latitude, ParametricCurve, Surface,
    TorusCircle, Vec3,
};
pub use double::{find_double_points, DoublePointNumeric};
pub use extract::{extract_diagram, Extraction};
pub use numeric::{
    gauss_bonnet_region_check, numeric_i1, numeric_iq, numeric_jplus, numeric_sjplus, ArcNumeric, CurveAnalysis, Estimate,
    LevelCheck,
};
pub use paths::{distance_to_curve, point_index};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("tangency at t = ({t1}, {t2}): angle {theta:e} rad is below the genericity floor")]
    DegenerateTangency { t1: f64, t2: f64, theta: f64 },
    #[error("point lies on the curve (distance {distance:e})")]
    PointOnCurve { distance: f64 },
    #[error("curve leaves the fundamental-domain chart: {0}")]
    ChartViolation(String),
    #[error("the torus has chi = 0")]
    ChiZero,
    #[error("only defined on the sphere, got {0}")]
    NotSphere(Surface),
    #[error("curve is not null-homologous: {0}")]
    Nontrivial(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Tunable numerics. All fields have defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadConfig {
    /// Samples per parameter axis of the coarse double-point search.
    pub detect_grid: usize,
    /// Parameter tolerance of root and crossing refinement.
    pub param_tol: f64,
    /// Double points closer than this in both parameters are merged.
    pub merge_radius: f64,
    /// Crossings with `θ` or `π − θ` below this are rejected as tangencies.
    pub angle_floor: f64,
    /// Curve samples used to isolate roots along paths and sweep lines.
    pub samples: usize,
    /// Finest quadrature grid: meridians of the area sweep; the line
    /// integrals use `grid / 8` panels.
    pub grid: usize,
    /// Gauss–Legendre nodes per panel.
    pub gauss_order: usize,
    /// Points closer than this to the curve are rejected.
    pub point_tol: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            detect_grid: 400,
            param_tol: 1e-12,
            merge_radius: 1e-8,
            angle_floor: 1e-4,
            samples: 4096,
            grid: 512,
            gauss_order: 8,
            point_tol: 1e-7,
        }
    }
}

impl QuadConfig {
    pub fn with_grid(&self, grid: usize) -> Self {
        Self { grid, ..self.clone() }
    }

    pub(crate) fn validate(&self) -> Result<(), GeometryError> {
        if self.detect_grid < 8 || self.samples < 16 || self.grid < 16 || self.gauss_order == 0 {
            return Err(GeometryError::Config(format!(
                "grid sizes too small (detect_grid {}, samples {}, grid {}, gauss_order {})",
                self.detect_grid, self.samples, self.grid, self.gauss_order
            )));
        }
        let positive = [self.param_tol, self.merge_radius, self.angle_floor, self.point_tol];
        if positive.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(GeometryError::Config("tolerances must be positive".into()));
        }
        Ok(())
    }
}
