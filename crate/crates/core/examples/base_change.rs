//! Moving the base point: the shift law against direct recomputation at every
//! region, and the base independence of `J⁺`.
//!
//! ```bash
//! cargo run -p qgb --example base_change
//! ```

use qgb::invariants::{change_base, full_report};
use qgb::moves::random_diagram;
use num_traits::ToPrimitive;

fn main() {
    let d = random_diagram(4, 0, 11).unwrap();
    println!("diagram: curve {}", d.code());
    let reference = full_report(&d, 0).unwrap();
    let ind = d.index_function(0).unwrap();
    println!("base 0: I_q = {}", reference.iq);
    for b in 1..d.region_count() {
        // the new index is the old one minus ind(b)
        let c = -ind.value(b).to_integer().to_i64().unwrap();
        let shifted = change_base(&reference.iq, c, d.surface_chi());
        let direct = full_report(&d, b).unwrap();
        println!(
            "base {b} (C = {c:>2}): {}  law {}  J+ = {}",
            direct.iq,
            if shifted == direct.iq { "ok" } else { "MISMATCH" },
            direct.jplus.unwrap()
        );
    }
}
