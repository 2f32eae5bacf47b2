use super::curve::{wrap_delta, wrap_point, ParametricCurve, Surface, Vec3};
use super::double::{perpendicular, DoublePointNumeric};
use super::{GeometryError, QuadConfig};

/// Equally spaced samples of a curve. On the torus positions are lifted to
/// R², starting in the fundamental domain, so that the lift is continuous.
pub(crate) struct Sampled<'a> {
    pub curve: &'a ParametricCurve,
    pub pos: Vec<Vec3>,
    pub vel: Vec<Vec3>,
    /// Lift minus evaluator output on each sample interval.
    shift: Vec<Vec3>,
    pub lo: Vec3,
    pub hi: Vec3,
}

/// A simple root of `lin · Γ(t) + off`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Root {
    pub t: f64,
    /// Lifted position.
    pub x: Vec3,
    /// Whether the function increases through the root.
    pub rising: bool,
}

impl<'a> Sampled<'a> {
    pub fn new(curve: &'a ParametricCurve, count: usize) -> Result<Self, GeometryError> {
        let jets: Vec<_> = (0..count).map(|i| curve.jet(i as f64 / count as f64)).collect();
        let raw: Vec<Vec3> = jets.iter().map(|j| j.pos).collect();
        let vel = jets.iter().map(|j| j.d1).collect();
        let (pos, shift) = match curve.surface() {
            Surface::UnitSphere => (raw.clone(), vec![Vec3::zeros(); count]),
            Surface::FlatTorus => {
                let mut pos = Vec::with_capacity(count);
                pos.push(wrap_point(&raw[0]));
                for i in 1..count {
                    let next = pos[i - 1] + wrap_delta(&(raw[i] - raw[i - 1]));
                    pos.push(next);
                }
                let end = pos[count - 1] + wrap_delta(&(raw[0] - raw[count - 1]));
                if (end - pos[0]).norm() > 1e-9 {
                    return Err(GeometryError::Nontrivial(format!(
                        "the lift to the plane does not close up (displacement ({:.3}, {:.3}))",
                        end.x - pos[0].x,
                        end.y - pos[0].y
                    )));
                }
                let shift = pos.iter().zip(&raw).map(|(p, r)| (p - r).map(f64::round)).collect();
                (pos, shift)
            }
        };
        let mut lo = pos[0];
        let mut hi = pos[0];
        for p in &pos {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        Ok(Self {
            curve,
            pos,
            vel,
            shift,
            lo,
            hi,
        })
    }

    pub fn len(&self) -> usize {
        self.pos.len()
    }

    pub fn t(&self, i: usize) -> f64 {
        i as f64 / self.len() as f64
    }

    /// Lifted position at `t` inside sample interval `i`.
    pub fn lifted(&self, i: usize, t: f64) -> Vec3 {
        self.curve.position(t) + self.shift[i]
    }

    /// Roots of `g(t) = lin · Γ(t) + off` on the lifted curve.
    ///
    /// Each sample interval is bracketed by the signs of `g`; when `g′`
    /// changes sign inside an interval without a sign change of `g`, the
    /// extremum is located first so that grazing pairs of roots are kept.
    pub fn roots(&self, lin: &Vec3, off: f64, tol: f64) -> Vec<Root> {
        let m = self.len();
        let h = 1.0 / m as f64;
        let g = |i: usize, t: f64| lin.dot(&self.lifted(i, t)) + off;
        let dg = |t: f64| lin.dot(&self.curve.jet(t).d1);
        let vals: Vec<f64> = self.pos.iter().map(|x| lin.dot(x) + off).collect();
        let bisect = |mut lo: f64, mut hi: f64, f: &dyn Fn(f64) -> f64| {
            let neg_low = f(lo) < 0.0;
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                if (f(mid) < 0.0) == neg_low {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        };
        let mut out = Vec::new();
        let mut push = |i: usize, t: f64, rising: bool| {
            out.push(Root {
                t: t - t.floor(),
                x: self.lifted(i, t),
                rising,
            })
        };
        for i in 0..m {
            let (a, b) = (self.t(i), self.t(i) + h);
            // the closing interval of a torus lift ends at pos[0]
            let (ga, gb) = (vals[i], vals[(i + 1) % m]);
            if (ga < 0.0) != (gb < 0.0) {
                push(i, bisect(a, b, &|t| g(i, t)), ga < 0.0);
                continue;
            }
            let (da, db) = (lin.dot(&self.vel[i]), lin.dot(&self.vel[(i + 1) % m]));
            if (da < 0.0) == (db < 0.0) {
                continue;
            }
            let te = bisect(a, b, &dg);
            let ge = g(i, te);
            if (ge < 0.0) != (ga < 0.0) {
                push(i, bisect(a, te, &|t| g(i, t)), ga < 0.0);
                push(i, bisect(te, b, &|t| g(i, t)), ge < 0.0);
            }
        }
        out
    }
}

/// One crossing of a path with the curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Hit {
    /// Position along the path: leg number plus fraction along the leg.
    pub s: f64,
    pub t: f64,
    /// `+1` when the path crosses from the right of Γ to its left.
    pub sign: i64,
}

/// A leg that needs a perturbed route.
struct Degenerate;

/// Sine of the angle below which a path is treated as grazing the curve.
const GRAZING: f64 = 1e-3;

fn near_double_point(x: &Vec3, surface: Surface, crossings: &[DoublePointNumeric], radius: f64) -> bool {
    crossings.iter().any(|d| surface.chord(x, &d.position) < radius)
}

fn sphere_leg(
    s: &Sampled,
    a: &Vec3,
    b: &Vec3,
    crossings: &[DoublePointNumeric],
    cfg: &QuadConfig,
) -> Result<Vec<Hit>, Degenerate> {
    if a == b {
        return Ok(Vec::new());
    }
    let axb = a.cross(b);
    if axb.norm() < 1e-6 {
        return Err(Degenerate);
    }
    let m = axb.normalize();
    let ahead = m.cross(a);
    let span = axb.norm().atan2(a.dot(b));
    let mut hits = Vec::new();
    for Root { t, x, rising } in s.roots(&m, 0.0, cfg.param_tol) {
        let phi = x.dot(&ahead).atan2(x.dot(a));
        if phi <= 0.0 || phi >= span {
            if phi.abs() < 1e-9 || (phi - span).abs() < 1e-9 {
                return Err(Degenerate);
            }
            continue;
        }
        let j = s.curve.jet(t);
        if m.dot(&j.d1).abs() < GRAZING * j.d1.norm() || near_double_point(&x, Surface::UnitSphere, crossings, 1e-6) {
            return Err(Degenerate);
        }
        // det(x, Γ′, m × x) = −m·Γ′, so the crossing is positive where m·Γ falls
        let sign = if rising { -1 } else { 1 };
        hits.push(Hit { s: phi / span, t, sign });
    }
    Ok(hits)
}

fn torus_leg(
    s: &Sampled,
    a: &Vec3,
    b: &Vec3,
    crossings: &[DoublePointNumeric],
    cfg: &QuadConfig,
) -> Result<Vec<Hit>, Degenerate> {
    let d = b - a;
    let len2 = d.norm_squared();
    if len2 == 0.0 {
        return Ok(Vec::new());
    }
    let nu = Vec3::new(-d.y, d.x, 0.0) / len2.sqrt();
    let range = |k: usize| {
        let (lo, hi) = (a[k].min(b[k]), a[k].max(b[k]));
        ((lo - s.hi[k]).ceil() as i64)..=((hi - s.lo[k]).floor() as i64)
    };
    let mut hits = Vec::new();
    for kx in range(0) {
        for ky in range(1) {
            let k = Vec3::new(kx as f64, ky as f64, 0.0);
            for Root { t, x, rising } in s.roots(&nu, nu.dot(&(k - a)), cfg.param_tol) {
                let frac = d.dot(&(x + k - a)) / len2;
                if frac <= 0.0 || frac >= 1.0 {
                    if frac.abs() < 1e-9 || (frac - 1.0).abs() < 1e-9 {
                        return Err(Degenerate);
                    }
                    continue;
                }
                let j = s.curve.jet(t);
                if nu.dot(&j.d1).abs() < GRAZING * j.d1.norm()
                    || near_double_point(&x, Surface::FlatTorus, crossings, 1e-6)
                {
                    return Err(Degenerate);
                }
                // det(Γ′, d) = −|d| ν·Γ′
                let sign = if rising { -1 } else { 1 };
                hits.push(Hit { s: frac, t, sign });
            }
        }
    }
    Ok(hits)
}

/// Deterministic detour points for a path from `b` to `p`.
fn waypoint(surface: Surface, b: &Vec3, p: &Vec3, k: usize) -> Vec3 {
    let eps = 0.04 * k.div_ceil(2) as f64 * if k % 2 == 1 { 1.0 } else { -1.0 };
    match surface {
        Surface::UnitSphere => {
            let sum = b + p;
            let mid = if sum.norm() < 1e-6 { perpendicular(b) } else { sum.normalize() };
            let side = b.cross(p);
            let side = if side.norm() < 1e-6 { mid.cross(b).normalize() } else { side.normalize() };
            (mid + side * eps + b * (0.1 * eps * eps)).normalize()
        }
        Surface::FlatTorus => {
            let d = p - b;
            let side = if d.norm() < 1e-12 { Vec3::x() } else { Vec3::new(-d.y, d.x, 0.0).normalize() };
            (b + p) * 0.5 + side * eps
        }
    }
}

const DETOURS: usize = 16;

/// Crossings of a path from `b` to `p`, sorted along the path: the direct
/// geodesic (torus: straight segment in the lifted fundamental domain)
/// when it is clean, otherwise a two-leg detour.
pub(crate) fn path_hits(
    s: &Sampled,
    b: &Vec3,
    p: &Vec3,
    crossings: &[DoublePointNumeric],
    cfg: &QuadConfig,
) -> Result<Vec<Hit>, GeometryError> {
    let surface = s.curve.surface();
    for pt in [b, p] {
        let distance = distance_in(s, pt);
        if distance <= cfg.point_tol {
            return Err(GeometryError::PointOnCurve { distance });
        }
    }
    let leg = |a: &Vec3, c: &Vec3| match surface {
        Surface::UnitSphere => sphere_leg(s, a, c, crossings, cfg),
        Surface::FlatTorus => torus_leg(s, a, c, crossings, cfg),
    };
    let sorted = |mut hits: Vec<Hit>| {
        hits.sort_by(|x, y| x.s.total_cmp(&y.s));
        hits
    };
    if let Ok(hits) = leg(b, p) {
        return Ok(sorted(hits));
    }
    for k in 1..=DETOURS {
        let w = waypoint(surface, b, p, k);
        if distance_in(s, &w) <= 1e-3 {
            continue;
        }
        if let (Ok(first), Ok(second)) = (leg(b, &w), leg(&w, p)) {
            let mut hits = sorted(first);
            hits.extend(sorted(second).into_iter().map(|h| Hit { s: h.s + 1.0, ..h }));
            return Ok(hits);
        }
    }
    Err(GeometryError::Numerical(format!("no clean path found after {DETOURS} detours")))
}

fn distance_in(s: &Sampled, x: &Vec3) -> f64 {
    let surface = s.curve.surface();
    let m = s.len();
    let d: Vec<f64> = s.pos.iter().map(|p| surface.chord(p, x)).collect();
    let h = 1.0 / m as f64;
    let mut best = f64::INFINITY;
    for i in 0..m {
        let (prev, next) = (d[(i + m - 1) % m], d[(i + 1) % m]);
        if d[i] > prev || d[i] > next {
            best = best.min(d[i]);
            continue;
        }
        // golden-section search around a local minimum of the samples
        let f = |t: f64| surface.chord(&s.curve.position(t), x);
        let (mut lo, mut hi) = (s.t(i) - h, s.t(i) + h);
        let r = 0.5 * (5f64.sqrt() - 1.0);
        let (mut c, mut e) = (hi - r * (hi - lo), lo + r * (hi - lo));
        let (mut fc, mut fe) = (f(c), f(e));
        for _ in 0..80 {
            if fc < fe {
                hi = e;
                e = c;
                fe = fc;
                c = hi - r * (hi - lo);
                fc = f(c);
            } else {
                lo = c;
                c = e;
                fc = fe;
                e = lo + r * (hi - lo);
                fe = f(e);
            }
        }
        best = best.min(fc.min(fe)).min(d[i]);
    }
    best
}

/// Distance (chordal on the sphere, flat on the torus) from `x` to the curve.
pub fn distance_to_curve(curve: &ParametricCurve, x: &Vec3, cfg: &QuadConfig) -> Result<f64, GeometryError> {
    cfg.validate()?;
    Ok(distance_in(&Sampled::new(curve, cfg.samples)?, x))
}

/// Index of `p` relative to `b`: the signed count of crossings of a path from
/// `b` to `p`, `+1` for each crossing from the right of Γ to its left.
/// `crossings` are the curve's double points; paths avoid them.
pub fn point_index(
    curve: &ParametricCurve,
    b: &Vec3,
    p: &Vec3,
    crossings: &[DoublePointNumeric],
    cfg: &QuadConfig,
) -> Result<i64, GeometryError> {
    cfg.validate()?;
    let s = Sampled::new(curve, cfg.samples)?;
    Ok(path_hits(&s, b, p, crossings, cfg)?.iter().map(|h| h.sign).sum())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::geometry::{find_double_points, Figure8, Latitude, TorusCircle};

    #[test]
    fn latitude_south_to_north_is_plus_one() {
        let cfg = QuadConfig::default();
        let c = ParametricCurve::new(Surface::UnitSphere, "lat", Arc::new(Latitude { alpha: 1.0 })).unwrap();
        let (s, n) = (-Vec3::z(), Vec3::z());
        assert_eq!(point_index(&c, &s, &n, &[], &cfg).unwrap(), 1);
        assert_eq!(point_index(&c, &n, &s, &[], &cfg).unwrap(), -1);
        assert_eq!(point_index(&c, &s, &s, &[], &cfg).unwrap(), 0);
        // antipodal-free but passing the pole's neighbourhood from the side
        let side = Vec3::new(1.0, 0.0, -0.2).normalize();
        assert_eq!(point_index(&c, &side, &n, &[], &cfg).unwrap(), 1);
    }

    #[test]
    fn planar_winding_oracle_after_stereographic_projection() {
        // projecting from the south pole sends the latitude to a
        // counterclockwise circle around the image of the north pole
        let alpha = 1.0f64;
        let radius = alpha.sin() / (1.0 + alpha.cos());
        let winding: f64 = (0..1000)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / 1000.0;
                let b = std::f64::consts::TAU * (i + 1) as f64 / 1000.0;
                let (p, q) = ((radius * a.cos(), radius * a.sin()), (radius * b.cos(), radius * b.sin()));
                (p.0 * q.1 - p.1 * q.0).atan2(p.0 * q.0 + p.1 * q.1)
            })
            .sum::<f64>()
            / std::f64::consts::TAU;
        let cfg = QuadConfig::default();
        let c = ParametricCurve::new(Surface::UnitSphere, "lat", Arc::new(Latitude { alpha })).unwrap();
        assert_eq!(winding.round() as i64, point_index(&c, &-Vec3::z(), &Vec3::z(), &[], &cfg).unwrap());
    }

    #[test]
    fn points_on_the_curve_are_rejected() {
        let cfg = QuadConfig::default();
        let c = ParametricCurve::new(Surface::FlatTorus, "c", Arc::new(TorusCircle { center: [0.5, 0.5], radius: 0.2 })).unwrap();
        let on = Vec3::new(0.7, 0.5, 0.0);
        assert!(matches!(
            point_index(&c, &Vec3::new(0.1, 0.1, 0.0), &on, &[], &cfg),
            Err(GeometryError::PointOnCurve { .. })
        ));
        assert_eq!(point_index(&c, &Vec3::new(0.1, 0.1, 0.0), &Vec3::new(0.5, 0.5, 0.0), &[], &cfg).unwrap(), 1);
        // the path wraps through the domain boundary without meeting the circle
        assert_eq!(point_index(&c, &Vec3::new(0.05, 0.5, 0.0), &Vec3::new(0.95, 0.5, 0.0), &[], &cfg).unwrap(), 0);
    }

    #[test]
    fn figure8_loops_and_path_independence() {
        let cfg = QuadConfig::default();
        let c = ParametricCurve::new(Surface::UnitSphere, "f8", Arc::new(Figure8)).unwrap();
        let x = find_double_points(&c, &cfg).unwrap();
        let b = -Vec3::z();
        let loop_a = Vec3::new(-0.1, 0.2, 1.0).normalize();
        let loop_b = Vec3::new(0.7, 0.2, 1.0).normalize();
        let ia = point_index(&c, &b, &loop_a, &x, &cfg).unwrap();
        let ib = point_index(&c, &b, &loop_b, &x, &cfg).unwrap();
        assert_eq!((ia, ib), (1, -1));
        // direct path between the loops passes through the crossing and is
        // rerouted; its count must equal the difference
        assert_eq!(point_index(&c, &loop_a, &loop_b, &x, &cfg).unwrap(), ib - ia);
        let d = x[0].position;
        assert!(distance_to_curve(&c, &d, &cfg).unwrap() < 1e-12);
    }
}
