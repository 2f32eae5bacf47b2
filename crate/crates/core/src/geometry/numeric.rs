use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use super::curve::{curvature_density, ParametricCurve, Surface, Vec3};
use super::double::{find_double_points, perpendicular, DoublePointNumeric};
use super::extract::{arc_interval, extract_from, probe, visits, Extraction};
use super::paths::{path_hits, Sampled};
use super::quad::{gauss_legendre, integrate, neumaier};
use super::{GeometryError, QuadConfig};
use crate::HalfInt;

/// A quadrature result: the value on the configured grid, and as error half
/// its difference from the value on the half-size grid plus a roundoff floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// Relative size of accumulated rounding in the compensated sums.
const ROUNDOFF: f64 = 1e-12;

impl Estimate {
    fn from_pair(fine: f64, coarse: f64) -> Self {
        Self {
            value: fine,
            error: 0.5 * (fine - coarse).abs() + ROUNDOFF * (1.0 + fine.abs()),
        }
    }
}

/// One arc between consecutive crossing visits.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcNumeric {
    pub start: f64,
    pub end: f64,
    /// Numeric index: probe index on the left minus one half.
    pub index: HalfInt,
    /// `∫ k_g ds` over the arc on the fine and the coarse grid.
    kg: [f64; 2],
}

/// Per-level Gauss–Bonnet comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelCheck {
    pub level: HalfInt,
    /// `2π χ(S_j)` from the extracted diagram.
    pub lhs: f64,
    pub rhs: Estimate,
}

/// Everything the integral formulas need, computed once per curve and base.
#[derive(Debug, Clone)]
pub struct CurveAnalysis {
    surface: Surface,
    crossings: Vec<DoublePointNumeric>,
    arcs: Vec<ArcNumeric>,
    crossing_index: Vec<i64>,
    /// Area of each index level, fine and coarse sweeps (sphere only).
    areas: [BTreeMap<i64, f64>; 2],
    extraction: Extraction,
}

fn check_base(surface: Surface, b: &Vec3) -> Result<(), GeometryError> {
    let ok = match surface {
        Surface::UnitSphere => (b.norm() - 1.0).abs() <= 1e-9,
        Surface::FlatTorus => b.z == 0.0 && (0.0..1.0).contains(&b.x) && (0.0..1.0).contains(&b.y),
    };
    if ok {
        Ok(())
    } else {
        Err(GeometryError::Config(format!("point ({}, {}, {}) is not on the {surface}", b.x, b.y, b.z)))
    }
}

/// Axis farthest from the curve among a fixed set of directions, so that
/// meridians never bunch up near the curve.
fn sweep_axis(s: &Sampled) -> Vec3 {
    let mut best = (Vec3::z(), -1.0);
    for x in -1i32..=1 {
        for y in -1i32..=1 {
            for z in -1i32..=1 {
                if (x, y, z) == (0, 0, 0) {
                    continue;
                }
                let e = Vec3::new(x as f64, y as f64, z as f64).normalize();
                let clearance = s.pos.iter().map(|p| 1.0 - p.dot(&e).abs()).fold(f64::INFINITY, f64::min);
                if clearance > best.1 + 1e-12 {
                    best = (e, clearance);
                }
            }
        }
    }
    best.0
}

fn azimuth(x: &Vec3, e1: &Vec3, e2: &Vec3) -> f64 {
    let a = x.dot(e2).atan2(x.dot(e1));
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

/// Azimuths where the level lengths along a meridian are not smooth: where a
/// meridian touches the curve, and through each double point.
fn sweep_breaks(s: &Sampled, axis: &Vec3, e1: &Vec3, e2: &Vec3, crossings: &[DoublePointNumeric], tol: f64) -> Vec<f64> {
    let curve = s.curve;
    let h = |t: f64| {
        let j = curve.jet(t);
        axis.cross(&j.pos).dot(&j.d1)
    };
    let m = s.len();
    let hv: Vec<f64> = (0..m).map(|i| axis.cross(&s.pos[i]).dot(&s.vel[i])).collect();
    let mut breaks: Vec<f64> = crossings.iter().map(|d| azimuth(&d.position, e1, e2)).collect();
    for i in 0..m {
        if (hv[i] < 0.0) == (hv[(i + 1) % m] < 0.0) {
            continue;
        }
        let (mut lo, mut hi) = (s.t(i), s.t(i + 1));
        let neg_low = hv[i] < 0.0;
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if (h(mid) < 0.0) == neg_low {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        breaks.push(azimuth(&curve.position(0.5 * (lo + hi)), e1, e2));
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    breaks
}

/// Quadrature nodes `(φ, weight)` in azimuth. Between consecutive breaks the
/// substitution `φ = a + (b − a)(1 − cos πu)/2` absorbs the square-root
/// behaviour at the ends, and `u` is integrated by composite Gauss–Legendre.
fn sweep_nodes(breaks: &[f64], count: usize, rule: &(Vec<f64>, Vec<f64>)) -> Vec<(f64, f64)> {
    let intervals: Vec<(f64, f64)> = if breaks.is_empty() {
        vec![(0.0, TAU)]
    } else {
        (0..breaks.len())
            .map(|k| {
                let a = breaks[k];
                let b = if k + 1 == breaks.len() { breaks[0] + TAU } else { breaks[k + 1] };
                (a, b)
            })
            .collect()
    };
    let order = rule.0.len();
    let mut nodes = Vec::new();
    for (a, b) in intervals {
        let len = b - a;
        let want = ((count as f64 * len / TAU).ceil() as usize).max(order);
        let panels = want.div_ceil(order);
        let du = 1.0 / panels as f64;
        for p in 0..panels {
            let mid = (p as f64 + 0.5) * du;
            for (x, w) in rule.0.iter().zip(&rule.1) {
                let u = mid + 0.5 * du * x;
                let phi = a + 0.5 * len * (1.0 - (PI * u).cos());
                let jac = 0.5 * len * PI * (PI * u).sin();
                nodes.push((phi, 0.5 * du * w * jac));
            }
        }
    }
    nodes
}

/// Area of every index level by a meridian sweep about `axis`: along the
/// half great circle from `-axis` to `axis` at each node azimuth the index
/// starts at its value at `-axis` and changes at each curve crossing, and
/// `dA = dφ dz`.
fn sweep_areas(
    s: &Sampled,
    axis: &Vec3,
    poles: (i64, i64),
    crossings: &[DoublePointNumeric],
    count: usize,
    cfg: &QuadConfig,
) -> Result<BTreeMap<i64, f64>, GeometryError> {
    let (south, north) = poles;
    let e1 = perpendicular(axis);
    let e2 = axis.cross(&e1);
    let rule = gauss_legendre(cfg.gauss_order);
    let breaks = sweep_breaks(s, axis, &e1, &e2, crossings, cfg.param_tol);
    let nodes = sweep_nodes(&breaks, count, &rule);
    let per_line: Vec<Vec<(i64, f64)>> = nodes
        .par_iter()
        .map(|&(phi, weight)| {
            let (sin, cos) = phi.sin_cos();
            let u = e1 * cos + e2 * sin;
            let w = e2 * cos - e1 * sin;
            // w · Γ rises exactly where the curve crosses the northward
            // meridian from its right to its left
            let mut events: Vec<(f64, i64)> = s
                .roots(&w, 0.0, cfg.param_tol)
                .into_iter()
                .filter(|r| u.dot(&r.x) > 0.0)
                .map(|r| (axis.dot(&r.x), if r.rising { 1 } else { -1 }))
                .collect();
            events.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut out = Vec::with_capacity(events.len() + 1);
            let (mut z, mut ind) = (-1.0, south);
            for (ze, sign) in events {
                out.push((ind, (ze - z) * weight));
                z = ze;
                ind += sign;
            }
            out.push((ind, (1.0 - z) * weight));
            out
        })
        .collect();

    let mut levels: BTreeMap<i64, Vec<f64>> = BTreeMap::new();
    for (k, line) in per_line.iter().enumerate() {
        let end = line.last().expect("every line has a final segment").0;
        if end != north {
            return Err(GeometryError::Numerical(format!(
                "meridian at azimuth {:.6} ends at index {end}, but the pole has index {north}",
                nodes[k].0
            )));
        }
        for &(ind, da) in line {
            levels.entry(ind).or_default().push(da);
        }
    }
    Ok(levels.into_iter().map(|(i, da)| (i, neumaier(da))).collect())
}

impl CurveAnalysis {
    pub fn new(curve: &ParametricCurve, b: &Vec3, cfg: &QuadConfig) -> Result<Self, GeometryError> {
        cfg.validate()?;
        let surface = curve.surface();
        check_base(surface, b)?;
        let sampled = Sampled::new(curve, cfg.samples)?;
        let crossings = find_double_points(curve, cfg)?;
        let visits = visits(&crossings);
        let index_at = |p: &Vec3| -> Result<i64, GeometryError> {
            Ok(path_hits(&sampled, b, p, &crossings, cfg)?.iter().map(|h| h.sign).sum())
        };

        let rule = gauss_legendre(cfg.gauss_order);
        let panels = (cfg.grid / 8).max(8);
        let arc_count = visits.len().max(1);
        let mut arcs = Vec::with_capacity(arc_count);
        for k in 0..arc_count {
            let (start, end) = arc_interval(&visits, k);
            let mid = 0.5 * (start + end);
            let mut delta = 1e-3;
            let index = loop {
                let (l, r) = (index_at(&probe(curve, mid, delta))?, index_at(&probe(curve, mid, -delta))?);
                if l - r == 1 {
                    break HalfInt::from_twice(2 * l - 1);
                }
                delta *= 0.1;
                if delta < 1e-7 {
                    return Err(GeometryError::Numerical(format!(
                        "probes across arc {k} differ in index by {} instead of 1",
                        l - r
                    )));
                }
            };
            let n = ((panels as f64 * (end - start)).ceil() as usize).max(2);
            let f = |t: f64| curvature_density(curve, t);
            let kg = [integrate(f, start, end, n, &rule), integrate(f, start, end, n / 2, &rule)];
            arcs.push(ArcNumeric { start, end, index, kg });
        }

        let len = visits.len();
        let mut crossing_index = vec![0; crossings.len()];
        for (c, slot) in crossing_index.iter_mut().enumerate() {
            let sum: i64 = (0..len)
                .filter(|&p| visits[p].1 == c)
                .flat_map(|p| [arcs[p].index.twice(), arcs[(p + len - 1) % len].index.twice()])
                .sum();
            // four arc indices, each stored doubled
            if sum % 8 != 0 {
                return Err(GeometryError::Numerical(format!("arc indices around crossing {c} are inconsistent")));
            }
            *slot = sum / 8;
        }

        let areas = match surface {
            Surface::FlatTorus => [BTreeMap::new(), BTreeMap::new()],
            Surface::UnitSphere => {
                let axis = sweep_axis(&sampled);
                let poles = (index_at(&-axis)?, index_at(&axis)?);
                [
                    sweep_areas(&sampled, &axis, poles, &crossings, cfg.grid, cfg)?,
                    sweep_areas(&sampled, &axis, poles, &crossings, cfg.grid / 2, cfg)?,
                ]
            }
        };
        let extraction = extract_from(&sampled, b, &crossings, cfg)?;
        Ok(Self {
            surface,
            crossings,
            arcs,
            crossing_index,
            areas,
            extraction,
        })
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn crossings(&self) -> &[DoublePointNumeric] {
        &self.crossings
    }

    pub fn arcs(&self) -> &[ArcNumeric] {
        &self.arcs
    }

    /// Numeric crossing indices: the mean of the four incident arc indices.
    pub fn crossing_indices(&self) -> &[i64] {
        &self.crossing_index
    }

    /// Area of each occupied index level on the fine grid.
    pub fn level_areas(&self) -> &BTreeMap<i64, f64> {
        &self.areas[0]
    }

    pub fn extraction(&self) -> &Extraction {
        &self.extraction
    }

    fn both(&self, f: impl Fn(usize) -> f64) -> Estimate {
        Estimate::from_pair(f(0), f(1))
    }

    fn k(&self) -> f64 {
        self.surface.gaussian_curvature()
    }

    /// `∫ k_g ds + ∬ K ind dA` at grid level `g`.
    fn first_moment(&self, g: usize) -> f64 {
        let line = neumaier(self.arcs.iter().map(|a| a.kg[g]));
        let area = neumaier(self.areas[g].iter().map(|(&i, &a)| i as f64 * a));
        line + self.k() * area
    }

    /// `∫ k_g ind ds − Σ θ_d + ½ ∬ K ind² dA` at grid level `g`.
    fn second_moment(&self, g: usize) -> f64 {
        let line = neumaier(self.arcs.iter().map(|a| a.kg[g] * a.index.to_f64()));
        let angles = neumaier(self.crossings.iter().map(|d| d.theta));
        let area = neumaier(self.areas[g].iter().map(|(&i, &a)| (i * i) as f64 * a));
        line - angles + 0.5 * self.k() * area
    }

    /// The integral definition of `I_q`; `q = 1` uses the limit form.
    pub fn iq(&self, q: f64) -> Result<Estimate, GeometryError> {
        if !(q.is_finite() && q > 0.0) {
            return Err(GeometryError::Config(format!("q must be a positive real, got {q}")));
        }
        if q == 1.0 {
            return Ok(self.i1());
        }
        let d = q.sqrt() - 1.0 / q.sqrt();
        Ok(self.both(|g| {
            let line = neumaier(self.arcs.iter().map(|a| a.kg[g] * q.powf(a.index.to_f64())));
            let cross = neumaier(
                self.crossings
                    .iter()
                    .zip(&self.crossing_index)
                    .map(|(x, &i)| x.theta * q.powi(i as i32) * d),
            );
            let area = neumaier(self.areas[g].iter().map(|(&i, &a)| a * (q.powi(i as i32) - 1.0) / d));
            (line - cross + self.k() * area) / TAU
        }))
    }

    /// `(1/2π)(∫ k_g ds + ∬ K ind dA)`.
    pub fn i1(&self) -> Estimate {
        self.both(|g| self.first_moment(g) / TAU)
    }

    /// `J⁺` from the integral formula.
    pub fn jplus(&self) -> Result<Estimate, GeometryError> {
        let chi = self.surface.chi();
        if chi == 0 {
            return Err(GeometryError::ChiZero);
        }
        Ok(self.both(|g| {
            let m = self.first_moment(g);
            m * m / (4.0 * PI * PI * chi as f64) - self.second_moment(g) / PI + 1.0
        }))
    }

    /// `SJ⁺` from the sphere specialization (`K = 1`, `χ = 2`).
    pub fn sjplus(&self) -> Result<Estimate, GeometryError> {
        if self.surface != Surface::UnitSphere {
            return Err(GeometryError::NotSphere(self.surface));
        }
        Ok(self.both(|g| {
            let kg = neumaier(self.arcs.iter().map(|a| a.kg[g]));
            let area = neumaier(self.areas[g].iter().map(|(&i, &a)| i as f64 * a));
            let kg_ind = neumaier(self.arcs.iter().map(|a| a.kg[g] * a.index.to_f64()));
            let angles = neumaier(self.crossings.iter().map(|d| d.theta));
            let area2 = neumaier(self.areas[g].iter().map(|(&i, &a)| (i * i) as f64 * a));
            let m = kg + area;
            m * m / (8.0 * PI * PI) - (kg_ind - angles + 0.5 * area2) / PI + 1.0
        }))
    }

    /// Gauss–Bonnet for the subsurface `S_j` where the index exceeds `j`.
    pub fn level_check(&self, j: HalfInt) -> Result<LevelCheck, GeometryError> {
        if j.is_integer() {
            return Err(GeometryError::Config(format!("level {j} must be a half-integer")));
        }
        let d = &self.extraction.diagram;
        let ind = d.index_function(self.extraction.base)?;
        let chi = d.subsurface_chi(&ind, j)?;
        let below = (j.twice() - 1) / 2;
        let above = (j.twice() + 1) / 2;
        let rhs = self.both(|g| {
            let area = neumaier(self.areas[g].iter().filter(|(&i, _)| i > below).map(|(_, &a)| a));
            let line = neumaier(self.arcs.iter().filter(|a| a.index == j).map(|a| a.kg[g]));
            let corner = |level: i64| {
                neumaier(
                    self.crossings
                        .iter()
                        .zip(&self.crossing_index)
                        .filter(|(_, &i)| i == level)
                        .map(|(x, _)| PI - x.theta),
                )
            };
            self.k() * area + line + corner(below) - corner(above)
        });
        Ok(LevelCheck {
            level: j,
            lhs: TAU * chi as f64,
            rhs,
        })
    }

    /// Levels carrying at least one arc, ascending.
    pub fn occupied_levels(&self) -> Vec<HalfInt> {
        let mut v: Vec<HalfInt> = self.arcs.iter().map(|a| a.index).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// `I_q(Γ, b)` from the integral definition at each `q`.
pub fn numeric_iq(
    curve: &ParametricCurve,
    b: &Vec3,
    q_values: &[f64],
    cfg: &QuadConfig,
) -> Result<Vec<Estimate>, GeometryError> {
    let a = CurveAnalysis::new(curve, b, cfg)?;
    q_values.iter().map(|&q| a.iq(q)).collect()
}

/// `I_1 = (1/2π)(∫ k_g ds + ∬ K ind dA)`.
pub fn numeric_i1(curve: &ParametricCurve, b: &Vec3, cfg: &QuadConfig) -> Result<Estimate, GeometryError> {
    Ok(CurveAnalysis::new(curve, b, cfg)?.i1())
}

/// `J⁺` from the integral formula.
pub fn numeric_jplus(curve: &ParametricCurve, b: &Vec3, cfg: &QuadConfig) -> Result<Estimate, GeometryError> {
    if curve.surface().chi() == 0 {
        return Err(GeometryError::ChiZero);
    }
    CurveAnalysis::new(curve, b, cfg)?.jplus()
}

/// `SJ⁺` on the unit sphere.
pub fn numeric_sjplus(curve: &ParametricCurve, b: &Vec3, cfg: &QuadConfig) -> Result<Estimate, GeometryError> {
    if curve.surface() != Surface::UnitSphere {
        return Err(GeometryError::NotSphere(curve.surface()));
    }
    CurveAnalysis::new(curve, b, cfg)?.sjplus()
}

/// `(2π χ(S_j), rhs)` for the level-`j` Gauss–Bonnet identity.
pub fn gauss_bonnet_region_check(
    curve: &ParametricCurve,
    b: &Vec3,
    j: HalfInt,
    cfg: &QuadConfig,
) -> Result<(f64, Estimate), GeometryError> {
    let c = CurveAnalysis::new(curve, b, cfg)?.level_check(j)?;
    Ok((c.lhs, c.rhs))
}
