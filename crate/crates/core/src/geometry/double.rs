use rayon::prelude::*;

use super::curve::{wrap_delta, ParametricCurve, Surface, Vec3};
use super::{GeometryError, QuadConfig};
use crate::diagram::Sign;

/// A transverse self-intersection `Γ(t1) = Γ(t2)`, `t1 < t2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoublePointNumeric {
    pub t1: f64,
    pub t2: f64,
    pub position: Vec3,
    /// Unsigned angle between `Γ′(t1)` and `−Γ′(t2)`.
    pub theta: f64,
    /// `+` iff `(Γ′(t1), Γ′(t2))` is positively oriented.
    pub sign: Sign,
}

/// Unsigned angle between two tangent vectors.
pub(crate) fn angle_between(a: &Vec3, b: &Vec3) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

/// Some unit vector orthogonal to `c`.
pub(crate) fn perpendicular(c: &Vec3) -> Vec3 {
    let axis = if c.x.abs() <= c.y.abs() && c.x.abs() <= c.z.abs() {
        Vec3::x()
    } else if c.y.abs() <= c.z.abs() {
        Vec3::y()
    } else {
        Vec3::z()
    };
    c.cross(&axis).normalize()
}

/// Crossing of two short chords of the sample polygon (great-circle arcs on
/// the sphere) as fractions along each, or `None`.
fn segments_cross(surface: Surface, p: [Vec3; 2], q: [Vec3; 2]) -> Option<(f64, f64)> {
    let (sp, sq) = match surface {
        Surface::UnitSphere => {
            if (p[0] + p[1]).dot(&(q[0] + q[1])) <= 0.0 {
                return None;
            }
            let np = p[0].cross(&p[1]);
            let nq = q[0].cross(&q[1]);
            ([nq.dot(&p[0]), nq.dot(&p[1])], [np.dot(&q[0]), np.dot(&q[1])])
        }
        Surface::FlatTorus => {
            let dp = wrap_delta(&(p[1] - p[0]));
            let q0 = p[0] + wrap_delta(&(q[0] - p[0]));
            let q1 = q0 + wrap_delta(&(q[1] - q[0]));
            let dq = q1 - q0;
            let cross = |a: &Vec3, b: &Vec3| a.x * b.y - a.y * b.x;
            (
                [cross(&dq, &(p[0] - q0)), cross(&dq, &(p[0] + dp - q0))],
                [cross(&dp, &(q0 - p[0])), cross(&dp, &(q1 - p[0]))],
            )
        }
    };
    let straddles = |s: [f64; 2]| (s[0] < 0.0) != (s[1] < 0.0);
    if straddles(sp) && straddles(sq) {
        Some((sp[0] / (sp[0] - sp[1]), sq[0] / (sq[0] - sq[1])))
    } else {
        None
    }
}

/// Newton iteration on `Γ(t1) − Γ(t2)` expressed in a tangent frame.
fn refine(curve: &ParametricCurve, mut t1: f64, mut t2: f64, tol: f64) -> Option<(f64, f64)> {
    for _ in 0..60 {
        let (j1, j2) = (curve.jet(t1), curve.jet(t2));
        let (diff, e1, e2) = match curve.surface() {
            Surface::UnitSphere => {
                let c = (j1.pos + j2.pos).normalize();
                let e1 = perpendicular(&c);
                (j1.pos - j2.pos, e1, c.cross(&e1))
            }
            Surface::FlatTorus => (wrap_delta(&(j1.pos - j2.pos)), Vec3::x(), Vec3::y()),
        };
        let f = [diff.dot(&e1), diff.dot(&e2)];
        let m = [[j1.d1.dot(&e1), -j2.d1.dot(&e1)], [j1.d1.dot(&e2), -j2.d1.dot(&e2)]];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det.abs() < 1e-300 {
            return None;
        }
        let d1 = (f[0] * m[1][1] - f[1] * m[0][1]) / det;
        let d2 = (m[0][0] * f[1] - m[1][0] * f[0]) / det;
        t1 -= d1;
        t2 -= d2;
        if d1.abs().max(d2.abs()) < tol {
            let gap = curve.surface().chord(&curve.position(t1), &curve.position(t2));
            return (gap < 1e-9).then(|| (t1 - t1.floor(), t2 - t2.floor()));
        }
    }
    None
}

fn circular_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    d.min(1.0 - d)
}

/// Double points of `curve`, sorted by `t1`.
///
/// Segment pairs of the `detect_grid`-gon through equally spaced samples are
/// tested for intersection; each hit seeds a Newton refinement. Results within
/// `merge_radius` in both parameters are merged.
pub fn find_double_points(curve: &ParametricCurve, cfg: &QuadConfig) -> Result<Vec<DoublePointNumeric>, GeometryError> {
    cfg.validate()?;
    let g = cfg.detect_grid;
    let surface = curve.surface();
    let pts: Vec<Vec3> = (0..g).map(|i| curve.position(i as f64 / g as f64)).collect();
    let seeds: Vec<(f64, f64)> = (0..g)
        .into_par_iter()
        .flat_map_iter(|i| {
            let pts = &pts;
            (i + 2..g).filter_map(move |j| {
                if i == 0 && j == g - 1 {
                    return None;
                }
                let p = [pts[i], pts[(i + 1) % g]];
                let q = [pts[j], pts[(j + 1) % g]];
                segments_cross(surface, p, q).map(|(a, b)| ((i as f64 + a) / g as f64, (j as f64 + b) / g as f64))
            })
        })
        .collect();

    let mut found: Vec<(f64, f64)> = Vec::new();
    for (s1, s2) in seeds {
        let (a, b) = refine(curve, s1, s2, cfg.param_tol)
            .ok_or_else(|| GeometryError::Numerical(format!("crossing seeded at t = ({s1:.6}, {s2:.6}) did not converge")))?;
        let (t1, t2) = if a < b { (a, b) } else { (b, a) };
        if circular_gap(t1, t2) < cfg.merge_radius {
            return Err(GeometryError::Numerical(format!("refinement collapsed onto a single point at t = {t1}")));
        }
        let dup = found
            .iter()
            .any(|&(u1, u2)| circular_gap(u1, t1) < cfg.merge_radius && circular_gap(u2, t2) < cfg.merge_radius);
        if !dup {
            found.push((t1, t2));
        }
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0));

    found
        .into_iter()
        .map(|(t1, t2)| {
            let (j1, j2) = (curve.jet(t1), curve.jet(t2));
            let theta = angle_between(&j1.d1, &(-j2.d1));
            if theta < cfg.angle_floor || std::f64::consts::PI - theta < cfg.angle_floor {
                return Err(GeometryError::DegenerateTangency { t1, t2, theta: theta.min(std::f64::consts::PI - theta) });
            }
            let sign = Sign::from_positive(surface.det(&j1.pos, &j1.d1, &j2.d1) > 0.0);
            Ok(DoublePointNumeric {
                t1,
                t2,
                position: j1.pos,
                theta,
                sign,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Figure8, Latitude, TorusCircle};
    use std::sync::Arc;

    fn fig8() -> ParametricCurve {
        ParametricCurve::new(Surface::UnitSphere, "figure8", Arc::new(Figure8)).unwrap()
    }

    #[test]
    fn embedded_curves_have_none() {
        let cfg = QuadConfig::default();
        let eq = ParametricCurve::new(Surface::UnitSphere, "eq", Arc::new(Latitude { alpha: std::f64::consts::FRAC_PI_2 })).unwrap();
        assert!(find_double_points(&eq, &cfg).unwrap().is_empty());
        let c = ParametricCurve::new(Surface::FlatTorus, "c", Arc::new(TorusCircle { center: [0.5, 0.5], radius: 0.2 })).unwrap();
        assert!(find_double_points(&c, &cfg).unwrap().is_empty());
    }

    #[test]
    fn figure8_has_one_crossing_at_the_designed_point() {
        let d = find_double_points(&fig8(), &QuadConfig::default()).unwrap();
        assert_eq!(d.len(), 1);
        let expect = Vec3::new(0.3, 0.2, 1.0).normalize();
        assert!((d[0].position - expect).norm() < 1e-10);
        // s = 0 and s = π, i.e. t = 0.9 and t = 0.4
        assert!((d[0].t1 - 0.4).abs() < 1e-10 && (d[0].t2 - 0.9).abs() < 1e-10);
        let finer = find_double_points(&fig8(), &QuadConfig { detect_grid: 1200, ..QuadConfig::default() }).unwrap();
        assert_eq!(finer.len(), 1);
    }

    #[test]
    fn theta_is_symmetric_in_the_two_branches() {
        let c = fig8();
        for d in find_double_points(&c, &QuadConfig::default()).unwrap() {
            let (a, b) = (c.jet(d.t1).d1, c.jet(d.t2).d1);
            assert!((angle_between(&b, &(-a)) - d.theta).abs() < 1e-9);
            assert!(d.theta > 0.0 && d.theta < std::f64::consts::PI);
        }
    }

    #[derive(Debug)]
    struct FlatEight {
        eps: f64,
    }
    impl crate::geometry::CurveEvaluator for FlatEight {
        fn jet(&self, t: f64) -> crate::geometry::Jet {
            use std::f64::consts::TAU;
            let s = TAU * t;
            let e = self.eps;
            crate::geometry::Jet {
                pos: Vec3::new(0.5 + 0.3 * s.sin(), 0.5 + e * (2.0 * s).sin(), 0.0),
                d1: Vec3::new(0.3 * s.cos(), 2.0 * e * (2.0 * s).cos(), 0.0) * TAU,
                d2: Vec3::new(-0.3 * s.sin(), -4.0 * e * (2.0 * s).sin(), 0.0) * (TAU * TAU),
            }
        }
    }

    #[test]
    fn shallow_crossings_are_rejected() {
        let cfg = QuadConfig::default();
        let ok = ParametricCurve::new(Surface::FlatTorus, "eight", Arc::new(FlatEight { eps: 0.1 })).unwrap();
        assert_eq!(find_double_points(&ok, &cfg).unwrap().len(), 1);
        let flat = ParametricCurve::new(Surface::FlatTorus, "flat", Arc::new(FlatEight { eps: 1e-6 })).unwrap();
        assert!(matches!(find_double_points(&flat, &cfg), Err(GeometryError::DegenerateTangency { .. })));
    }
}
