use super::curve::{ParametricCurve, Surface, Vec3};
use super::double::DoublePointNumeric;
use super::paths::{path_hits, Sampled};
use super::{GeometryError, QuadConfig};
use crate::diagram::{ArcSide, CurveDiagram, Region, SignedGaussCode};

/// Crossing visits in parameter order: `(t, crossing)` with crossings
/// numbered as in the input slice.
pub(crate) fn visits(crossings: &[DoublePointNumeric]) -> Vec<(f64, usize)> {
    let mut v: Vec<(f64, usize)> = crossings
        .iter()
        .enumerate()
        .flat_map(|(c, d)| [(d.t1, c), (d.t2, c)])
        .collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    v
}

/// Parameter interval `[start, end)` of arc `k`, with `end` possibly past 1.
pub(crate) fn arc_interval(visits: &[(f64, usize)], k: usize) -> (f64, f64) {
    if visits.is_empty() {
        return (0.0, 1.0);
    }
    let start = visits[k].0;
    let end = if k + 1 == visits.len() { visits[0].0 + 1.0 } else { visits[k + 1].0 };
    (start, end)
}

/// Arc containing parameter `t`.
pub(crate) fn arc_of(visits: &[(f64, usize)], t: f64) -> usize {
    if visits.is_empty() {
        return 0;
    }
    match visits.partition_point(|v| v.0 <= t) {
        0 => visits.len() - 1,
        k => k - 1,
    }
}

/// Point at distance about `delta` to the left (`delta > 0`) or right of
/// `Γ(t)`.
pub(crate) fn probe(curve: &ParametricCurve, t: f64, delta: f64) -> Vec3 {
    let x = curve.position(t);
    curve.surface().offset(&x, &curve.left_normal(t), delta)
}

/// Diagram read off a parametric curve, with the region containing the base.
#[derive(Debug, Clone)]
pub struct Extraction {
    pub diagram: CurveDiagram,
    pub base: usize,
    /// Numeric index of the start probe relative to the base; equals the
    /// combinatorial index of the region left of the start arc.
    pub probe_index: i64,
}

/// Walks a path from the start probe, updating the current region at each
/// crossing of an arc.
struct Locator<'a> {
    sampled: &'a Sampled<'a>,
    diagram: &'a CurveDiagram,
    visits: &'a [(f64, usize)],
    crossings: &'a [DoublePointNumeric],
    start: Vec3,
    start_region: usize,
}

impl Locator<'_> {
    fn locate(&self, p: &Vec3, cfg: &QuadConfig) -> Result<(usize, i64), GeometryError> {
        let hits = path_hits(self.sampled, &self.start, p, self.crossings, cfg)?;
        let mut r = self.start_region;
        for h in &hits {
            let arc = arc_of(self.visits, h.t);
            let (left, right) = (
                self.diagram.region_of(ArcSide::left(arc)),
                self.diagram.region_of(ArcSide::right(arc)),
            );
            let (from, to) = if h.sign > 0 { (right, left) } else { (left, right) };
            if r != from {
                return Err(GeometryError::Numerical(format!(
                    "face walk crossed arc {arc} from region {r}, which does not border it on that side"
                )));
            }
            r = to;
        }
        Ok((r, hits.iter().map(|h| h.sign).sum()))
    }
}

pub(crate) fn extract_from(
    sampled: &Sampled,
    b: &Vec3,
    crossings: &[DoublePointNumeric],
    cfg: &QuadConfig,
) -> Result<Extraction, GeometryError> {
    let curve = sampled.curve;
    let surface = curve.surface();
    let visits = visits(crossings);
    let ids: Vec<usize> = visits.iter().map(|v| v.1).collect();
    let signs: Vec<_> = crossings.iter().map(|d| d.sign).collect();
    let code = SignedGaussCode::from_visits(&ids, &signs);
    let cellular = CurveDiagram::cellular(code);
    if cellular.surface_chi() != 2 {
        return Err(GeometryError::Numerical(format!(
            "detected crossings give a code with carrier chi = {}, not a planar curve",
            cellular.surface_chi()
        )));
    }

    let start_arc = if visits.is_empty() { 0 } else { visits.len() - 1 };
    let (a, e) = arc_interval(&visits, start_arc);
    let start = probe(curve, 0.5 * (a + e), 1e-3);
    let needs_outer = surface == Surface::FlatTorus;
    if needs_outer && (sampled.lo.x <= 0.0 || sampled.lo.y <= 0.0 || sampled.hi.x >= 1.0 || sampled.hi.y >= 1.0) {
        return Err(GeometryError::ChartViolation(format!(
            "lifted curve spans [{:.4}, {:.4}] x [{:.4}, {:.4}]",
            sampled.lo.x, sampled.hi.x, sampled.lo.y, sampled.hi.y
        )));
    }

    let locator = Locator {
        sampled,
        diagram: &cellular,
        visits: &visits,
        crossings,
        start,
        start_region: cellular.region_of(ArcSide::left(start_arc)),
    };
    let diagram = if needs_outer {
        let outside = Vec3::new(0.5 * sampled.lo.x, 0.5 * sampled.lo.y, 0.0);
        let (outer, _) = locator.locate(&outside, cfg)?;
        let regions = cellular
            .regions()
            .iter()
            .enumerate()
            .map(|(r, reg)| Region::new(reg.cycles.clone(), u32::from(r == outer)))
            .collect();
        CurveDiagram::with_regions(cellular.code().clone(), regions, Some(1), 0)?
    } else {
        cellular.clone()
    };
    let (base, to_base) = locator.locate(b, cfg)?;
    let diagram = diagram.with_base(base)?;

    let probe_index = -to_base;
    let ind = diagram.index_function(base)?;
    let expected = ind.value(locator.start_region);
    if expected != crate::rat(probe_index) {
        return Err(GeometryError::Numerical(format!(
            "start probe has numeric index {probe_index} but lies in region {} of index {expected}",
            locator.start_region
        )));
    }
    Ok(Extraction {
        diagram,
        base,
        probe_index,
    })
}

/// Reads the signed Gauss code off the detected crossings in parameter order,
/// traces faces, and finds the region containing `b` by a face walk from a
/// probe left of the arc through `Γ(0)`.
///
/// On the torus the curve must stay inside the open square `(0, 1)²`; the
/// face reaching the square's boundary becomes the genus-1 region.
pub fn extract_diagram(
    curve: &ParametricCurve,
    b: &Vec3,
    cfg: &QuadConfig,
) -> Result<(CurveDiagram, usize), GeometryError> {
    cfg.validate()?;
    let sampled = Sampled::new(curve, cfg.samples)?;
    let crossings = super::find_double_points(curve, cfg)?;
    let e = extract_from(&sampled, b, &crossings, cfg)?;
    Ok((e.diagram, e.base))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_PI_3;
    use std::sync::Arc;

    use super::*;
    use crate::diagram::parse_diagram;
    use crate::geometry::{Figure8, Latitude, TorusCircle};

    #[test]
    fn latitude_gives_the_circle() {
        let c = ParametricCurve::new(Surface::UnitSphere, "lat", Arc::new(Latitude { alpha: FRAC_PI_3 })).unwrap();
        let (d, base) = extract_diagram(&c, &-Vec3::z(), &QuadConfig::default()).unwrap();
        let circle = parse_diagram("curve -\nbase 1").unwrap();
        assert_eq!(d.canonicalize(), circle.canonicalize());
        let (_, north) = extract_diagram(&c, &Vec3::z(), &QuadConfig::default()).unwrap();
        assert_ne!(base, north);
        assert_eq!(d.region_of(ArcSide::left(0)), north);
    }

    #[test]
    fn figure8_gives_one_crossing_based_outside() {
        let c = ParametricCurve::new(Surface::UnitSphere, "f8", Arc::new(Figure8)).unwrap();
        let (d, base) = extract_diagram(&c, &-Vec3::z(), &QuadConfig::default()).unwrap();
        assert_eq!(d.crossing_count(), 1);
        let outer = parse_diagram("curve 1+ 1+\nbase 0").unwrap();
        let flipped = parse_diagram("curve 1- 1-\nbase 0").unwrap();
        assert!(d.canonicalize() == outer.canonicalize() || d.canonicalize() == flipped.canonicalize());
        let ind = d.index_function(base).unwrap();
        let mut vals: Vec<i64> = (0..3).map(|r| ind.value(r).to_integer().try_into().unwrap()).collect();
        vals.sort();
        assert_eq!(vals, vec![-1, 0, 1]);
    }

    #[test]
    fn torus_circle_gets_a_genus_one_outside() {
        let c = ParametricCurve::new(Surface::FlatTorus, "c", Arc::new(TorusCircle { center: [0.5, 0.5], radius: 0.2 })).unwrap();
        let (d, base) = extract_diagram(&c, &Vec3::new(0.05, 0.05, 0.0), &QuadConfig::default()).unwrap();
        assert_eq!(d.surface_chi(), 0);
        assert_eq!(d.region(base).genus, 1);
        let fixture = parse_diagram("surface genus=1\ncurve -\nregion 0 genus=0 cycles=0\nregion 1 genus=1 cycles=1\nbase 1").unwrap();
        assert_eq!(d.canonicalize(), fixture.canonicalize());
    }

    #[test]
    fn torus_curve_leaving_the_chart_is_rejected() {
        let c = ParametricCurve::new(Surface::FlatTorus, "c", Arc::new(TorusCircle { center: [0.0, 0.5], radius: 0.2 })).unwrap();
        assert!(matches!(
            extract_diagram(&c, &Vec3::new(0.5, 0.05, 0.0), &QuadConfig::default()),
            Err(GeometryError::ChartViolation(_))
        ));
    }
}
