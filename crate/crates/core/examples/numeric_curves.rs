//! The integral definition of `I_q` by quadrature on the built-in parametric
//! curves, against the exact value of the extracted diagram.
//!
//! ```bash
//! cargo run --release -p qgb --example numeric_curves
//! ```

use qgb::fixtures::{circle_torus, figure8_sphere_param, great_circle, latitude};
use qgb::geometry::{CurveAnalysis, QuadConfig};
use qgb::invariants::full_report;

fn main() {
    let cfg = QuadConfig::default();
    let curves = [
        great_circle(),
        latitude(1.0).unwrap(),
        figure8_sphere_param(),
        circle_torus(0.2).unwrap(),
    ];
    for f in &curves {
        let a = CurveAnalysis::new(&f.curve, &f.base, &cfg).unwrap();
        let ex = a.extraction();
        let exact = full_report(&ex.diagram, ex.base).unwrap();
        println!("{} on {}: {} crossings, exact I_q = {}", f.curve.name(), f.curve.surface(), a.crossings().len(), exact.iq);
        for q in [0.5, 2.0, 3.0] {
            let v = a.iq(q).unwrap();
            let e = exact.iq.eval_real(q).unwrap();
            println!("  q = {q}: numeric {:.12} exact {e:.12} (error estimate {:.1e})", v.value, v.error);
        }
        match a.jplus() {
            Ok(j) => println!("  J+ numeric {:.12}, exact {}", j.value, exact.jplus.unwrap()),
            Err(e) => println!("  J+: {e}"),
        }
    }
}
