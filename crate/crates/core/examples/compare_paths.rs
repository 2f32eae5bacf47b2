//! Both exact routes for `I_q` and `J⁻` over a batch of random diagrams on the
//! sphere and the genus-2 surface.
//!
//! ```bash
//! cargo run -p qgb --example compare_paths
//! ```

use qgb::invariants::compare_paths;
use qgb::moves::random_diagram;

fn main() {
    let (mut checked, mut failed) = (0, 0);
    for genus in [0, 2] {
        for seed in 0..40 {
            let n = (seed % 7) as usize;
            let d = random_diagram(n, genus, seed).unwrap();
            for b in 0..d.region_count() {
                let c = compare_paths(&d, b).unwrap();
                checked += 1;
                if !c.passes() {
                    failed += 1;
                    println!("mismatch: genus {genus} seed {seed} base {b}: {} vs {}", c.iq_topological, c.iq_euler);
                }
            }
        }
    }
    println!("{checked} based diagrams, {failed} mismatches");
}
