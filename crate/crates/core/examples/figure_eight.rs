//! The figure-eight on the sphere, taken apart step by step: faces, index
//! function, superlevel Euler characteristics, smoothing, invariants.
//!
//! ```bash
//! cargo run -p qgb --example figure_eight
//! ```

use qgb::diagram::{parse_diagram, SmoothedProfile, SubsurfaceProfile};
use qgb::invariants::{full_report, iq_euler, iq_topological};
use qgb::HalfInt;

fn main() {
    let d = parse_diagram("curve 1+ 1+\nbase 0").unwrap();
    for (i, c) in d.cycles().iter().enumerate() {
        let sides: Vec<String> = c.sides().iter().map(|s| s.to_string()).collect();
        println!("cycle {i}: sides {} corners {}", sides.join(" "), c.corners());
    }

    let ind = d.index_function(d.base()).unwrap();
    for r in 0..d.region_count() {
        println!("region {r}: index {}", ind.value(r));
    }
    let (arcs, crossings) = d.arc_and_crossing_indices(&ind);
    let show = |v: &[qgb::Rational]| v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ");
    println!("arc indices [{}], crossing indices [{}]", show(&arcs), show(&crossings));

    for twice in [-3, -1, 1, 3] {
        let j = HalfInt::from_twice(twice);
        println!("chi(S_{j}) = {}", d.subsurface_chi(&ind, j).unwrap());
    }
    let profile = SubsurfaceProfile::new(&d, &ind).unwrap();
    let smoothed = SmoothedProfile::from_smoothing(&d, &ind).unwrap();
    let levels: Vec<String> = smoothed.levels().map(|(i, c)| format!("{i}:{c}")).collect();
    println!("smoothed level chi {{{}}}", levels.join(", "));

    println!("I_q by subsurfaces       {}", iq_topological(&profile));
    println!("I_q by Euler integration {}", iq_euler(&smoothed, profile.crossing_indices()));

    let r = full_report(&d, d.base()).unwrap();
    println!("I_1 = {}, I_1' = {}, rot = {}", r.i1, r.i1_prime, r.rotation);
    println!("J+ = {}, J- = {}, SJ+ = {}", r.jplus.unwrap(), r.jminus.unwrap(), r.sjplus.unwrap());
}
