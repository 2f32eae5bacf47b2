use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use nalgebra::Vector3;

use super::GeometryError;

pub type Vec3 = Vector3<f64>;

/// Ambient surface of a parametric curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Surface {
    /// The round unit sphere in R³, oriented by the outward normal. K ≡ 1.
    UnitSphere,
    /// R²/Z² with the flat metric and the standard orientation. K ≡ 0.
    /// Points are stored as `(x, y, 0)`.
    FlatTorus,
}

impl Surface {
    pub fn gaussian_curvature(self) -> f64 {
        match self {
            Surface::UnitSphere => 1.0,
            Surface::FlatTorus => 0.0,
        }
    }

    pub fn chi(self) -> i64 {
        match self {
            Surface::UnitSphere => 2,
            Surface::FlatTorus => 0,
        }
    }

    pub fn area(self) -> f64 {
        match self {
            Surface::UnitSphere => 2.0 * TAU,
            Surface::FlatTorus => 1.0,
        }
    }

    /// Unit normal at `x`; tangent frames `(a, b)` are positive when
    /// `det(normal, a, b) > 0`.
    pub fn normal(self, x: &Vec3) -> Vec3 {
        match self {
            Surface::UnitSphere => *x,
            Surface::FlatTorus => Vec3::z(),
        }
    }

    /// Orientation of the tangent frame `(a, b)` at `x`.
    pub fn det(self, x: &Vec3, a: &Vec3, b: &Vec3) -> f64 {
        self.normal(x).dot(&a.cross(b))
    }

    /// Point reached from `x` by moving `dist` in tangent direction `dir`
    /// (first order; reprojected onto the surface).
    pub fn offset(self, x: &Vec3, dir: &Vec3, dist: f64) -> Vec3 {
        match self {
            Surface::UnitSphere => (x + dir * dist).normalize(),
            Surface::FlatTorus => wrap_point(&(x + dir * dist)),
        }
    }

    /// Ambient distance, used only for small-scale proximity tests.
    pub fn chord(self, a: &Vec3, b: &Vec3) -> f64 {
        match self {
            Surface::UnitSphere => (a - b).norm(),
            Surface::FlatTorus => wrap_delta(&(a - b)).norm(),
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Surface::UnitSphere => "unit_sphere",
            Surface::FlatTorus => "flat_torus",
        })
    }
}

/// Representative of a torus displacement with coordinates in `[-1/2, 1/2)`.
pub(crate) fn wrap_delta(d: &Vec3) -> Vec3 {
    Vec3::new(d.x - (d.x + 0.5).floor(), d.y - (d.y + 0.5).floor(), 0.0)
}

pub(crate) fn wrap_point(p: &Vec3) -> Vec3 {
    Vec3::new(p.x - p.x.floor(), p.y - p.y.floor(), 0.0)
}

/// Position and first two derivatives with respect to the curve parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub pos: Vec3,
    pub d1: Vec3,
    pub d2: Vec3,
}

/// A smooth closed curve `[0, 1) → S`. Implementations must be periodic with
/// period 1 and safe to call from several threads.
pub trait CurveEvaluator: Send + Sync + fmt::Debug {
    fn jet(&self, t: f64) -> Jet;
}

/// A closed immersed curve on one of the two model surfaces.
#[derive(Debug, Clone)]
pub struct ParametricCurve {
    surface: Surface,
    name: String,
    evaluator: Arc<dyn CurveEvaluator>,
}

/// Samples used to check the immersion and on-surface invariants.
const VALIDATION_SAMPLES: usize = 1024;

impl ParametricCurve {
    /// Wraps an evaluator after checking `|γ′| > 0` and, on the sphere,
    /// `| |γ| − 1 | ≤ 1e−9` at sample points.
    pub fn new(
        surface: Surface,
        name: impl Into<String>,
        evaluator: Arc<dyn CurveEvaluator>,
    ) -> Result<Self, GeometryError> {
        let curve = Self {
            surface,
            name: name.into(),
            evaluator,
        };
        for i in 0..VALIDATION_SAMPLES {
            let t = i as f64 / VALIDATION_SAMPLES as f64;
            let j = curve.jet(t);
            if j.d1.norm() <= 1e-12 {
                return Err(GeometryError::InvalidCurve(format!("velocity vanishes at t = {t}")));
            }
            let off = match surface {
                Surface::UnitSphere => (j.pos.norm() - 1.0).abs(),
                Surface::FlatTorus => j.pos.z.abs().max(j.d1.z.abs()),
            };
            if off > 1e-9 {
                return Err(GeometryError::InvalidCurve(format!("point at t = {t} is {off:e} off the surface")));
            }
        }
        Ok(curve)
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Jet at `t`, reduced mod 1.
    pub fn jet(&self, t: f64) -> Jet {
        self.evaluator.jet(t - t.floor())
    }

    pub fn position(&self, t: f64) -> Vec3 {
        self.jet(t).pos
    }

    /// Unit vector pointing to the left of the curve at `t`.
    pub fn left_normal(&self, t: f64) -> Vec3 {
        let j = self.jet(t);
        self.surface.normal(&j.pos).cross(&j.d1).normalize()
    }
}

/// Geodesic curvature at `t`; counterclockwise small loops are positive.
pub fn geodesic_curvature(curve: &ParametricCurve, t: f64) -> f64 {
    let j = curve.jet(t);
    let speed = j.d1.norm();
    curve.surface.det(&j.pos, &j.d1, &j.d2) / (speed * speed * speed)
}

/// `k_g |γ′|`, the integrand of `∫ k_g ds` in the curve parameter.
pub(crate) fn curvature_density(curve: &ParametricCurve, t: f64) -> f64 {
    let j = curve.jet(t);
    curve.surface.det(&j.pos, &j.d1, &j.d2) / j.d1.norm_squared()
}

/// Circle of colatitude `alpha` traversed counterclockwise seen from the north
/// pole. `alpha = π/2` is the equator.
#[derive(Debug, Clone, Copy)]
pub struct Latitude {
    pub alpha: f64,
}

impl CurveEvaluator for Latitude {
    fn jet(&self, t: f64) -> Jet {
        let (s, c) = (TAU * t).sin_cos();
        let (sa, ca) = self.alpha.sin_cos();
        Jet {
            pos: Vec3::new(sa * c, sa * s, ca),
            d1: Vec3::new(-sa * s, sa * c, 0.0) * TAU,
            d2: Vec3::new(-sa * c, -sa * s, 0.0) * (TAU * TAU),
        }
    }
}

/// Counterclockwise circle of radius `radius` in the flat torus.
#[derive(Debug, Clone, Copy)]
pub struct TorusCircle {
    pub center: [f64; 2],
    pub radius: f64,
}

impl CurveEvaluator for TorusCircle {
    fn jet(&self, t: f64) -> Jet {
        let (s, c) = (TAU * t).sin_cos();
        let r = self.radius;
        Jet {
            pos: Vec3::new(self.center[0] + r * c, self.center[1] + r * s, 0.0),
            d1: Vec3::new(-r * s, r * c, 0.0) * TAU,
            d2: Vec3::new(-r * c, -r * s, 0.0) * (TAU * TAU),
        }
    }
}

/// Radial projection onto the unit sphere of a curve `c` in R³ \ {0}, given
/// its jet.
pub fn project_to_sphere(c: &Jet) -> Jet {
    let r = c.pos.norm();
    let u = c.pos / r;
    let r1 = u.dot(&c.d1);
    let u1 = (c.d1 - u * r1) / r;
    let r2 = u1.dot(&c.d1) + u.dot(&c.d2);
    let u2 = (c.d2 - u1 * (2.0 * r1) - u * r2) / r;
    Jet { pos: u, d1: u1, d2: u2 }
}

/// Figure-eight on the sphere: the radial projection of the planar lemniscate
/// `(0.8 sin s + 0.3, 0.4 sin 2s + 0.2, 1)`, `s = 2π(t + 0.1)`. Its single
/// crossing is the image of `(0.3, 0.2, 1)`.
#[derive(Debug, Clone, Copy)]
pub struct Figure8;

impl CurveEvaluator for Figure8 {
    fn jet(&self, t: f64) -> Jet {
        let s = TAU * (t + 0.1);
        let (s1, c1) = s.sin_cos();
        let (s2, c2) = (2.0 * s).sin_cos();
        let planar = Jet {
            pos: Vec3::new(0.8 * s1 + 0.3, 0.4 * s2 + 0.2, 1.0),
            d1: Vec3::new(0.8 * c1, 0.8 * c2, 0.0) * TAU,
            d2: Vec3::new(-0.8 * s1, -1.6 * s2, 0.0) * (TAU * TAU),
        };
        project_to_sphere(&planar)
    }
}
