//! Gauss–Bonnet on each superlevel set `S_j` of the index for a curve with
//! three index levels.
//!
//! ```bash
//! cargo run --release -p qgb --example gauss_bonnet_levels
//! ```

use qgb::fixtures::figure8_sphere_param;
use qgb::geometry::{CurveAnalysis, QuadConfig};

fn main() {
    let f = figure8_sphere_param();
    let a = CurveAnalysis::new(&f.curve, &f.base, &QuadConfig::default()).unwrap();
    for (level, area) in a.level_areas() {
        println!("area where ind = {level:>2}: {area:.12}");
    }
    for d in a.crossings() {
        println!("double point at t = ({:.6}, {:.6}), angle {:.6}", d.t1, d.t2, d.theta);
    }
    for j in a.occupied_levels() {
        let c = a.level_check(j).unwrap();
        println!("j = {j:>4}: 2pi chi(S_j) = {:.12}  area + curvature + corners = {:.12}", c.lhs, c.rhs.value);
    }
}
