//! Supplying your own curve: a limaçon with an inner loop, centrally projected
//! onto the sphere.
//!
//! ```bash
//! cargo run --release -p qgb --example custom_curve
//! ```

use std::f64::consts::TAU;
use std::sync::Arc;

use qgb::geometry::{project_to_sphere, CurveAnalysis, CurveEvaluator, Jet, ParametricCurve, QuadConfig, Surface, Vec3};
use qgb::invariants::full_report;

/// `r = 0.2 + 0.5 cos s` in the plane `z = 1`.
#[derive(Debug)]
struct Limacon;

impl CurveEvaluator for Limacon {
    fn jet(&self, t: f64) -> Jet {
        let s = TAU * t;
        let (c, sn) = (s.cos(), s.sin());
        let r = 0.2 + 0.5 * c;
        let (dr, ddr) = (-0.5 * sn, -0.5 * c);
        let planar = Jet {
            pos: Vec3::new(r * c, r * sn, 1.0),
            d1: Vec3::new(dr * c - r * sn, dr * sn + r * c, 0.0) * TAU,
            d2: Vec3::new(ddr * c - 2.0 * dr * sn - r * c, ddr * sn + 2.0 * dr * c - r * sn, 0.0) * (TAU * TAU),
        };
        project_to_sphere(&planar)
    }
}

fn main() {
    let curve = ParametricCurve::new(Surface::UnitSphere, "limacon", Arc::new(Limacon)).unwrap();
    let a = CurveAnalysis::new(&curve, &-Vec3::z(), &QuadConfig::default()).unwrap();
    let ex = a.extraction();
    let exact = full_report(&ex.diagram, ex.base).unwrap();
    println!("extracted: curve {}, base region {}", ex.diagram.code(), ex.base);
    println!("exact I_q = {}", exact.iq);
    for q in [0.5, 2.0] {
        println!("q = {q}: numeric {:.12}, exact {:.12}", a.iq(q).unwrap().value, exact.iq.eval_real(q).unwrap());
    }
    println!("J+ numeric {:.12}, exact {}", a.jplus().unwrap().value, exact.jplus.unwrap());
}
