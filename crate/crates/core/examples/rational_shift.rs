//! Rational index functions `ι = ind + C`: pointwise evaluation of the shift
//! law, the Euler-integral form, and Viro's normalization `∫ ι₀ dχ = 0`.
//!
//! ```bash
//! cargo run -p qgb --example rational_shift
//! ```

use qgb::diagram::parse_diagram;
use qgb::invariants::{full_report, iq_rational_eval, iq_rational_eval_euler, viro_jminus};
use qgb::{frac, rat};

fn main() {
    let d = parse_diagram("curve 1+ 1+\nbase 0").unwrap();
    let r = full_report(&d, 0).unwrap();
    for (n, den) in [(0, 1), (1, 2), (1, 3), (-2, 3)] {
        let c = frac(n, den);
        let law = iq_rational_eval(&r.iq, r.surface_chi, &c, 4.0).unwrap();
        let euler = iq_rational_eval_euler(&r.smoothed, &[0], &c, 4.0).unwrap();
        println!("C = {c:>4}: I_4 = {law:.12} (shift law), {euler:.12} (Euler form)");
    }
    let m1 = rat(r.smoothed.moments().first);
    println!("Viro J- = {}, J+ - n = {}", viro_jminus(&r.smoothed, &m1, 2).unwrap(), r.jminus.unwrap());
}
