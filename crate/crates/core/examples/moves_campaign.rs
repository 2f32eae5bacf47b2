//! Random walk through self-tangency and triple-point moves, tracking how
//! `J⁺`, `J⁻` and the rotation number change.
//!
//! ```bash
//! cargo run -p qgb --example moves_campaign
//! ```

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qgb::invariants::full_report;
use qgb::moves::{apply_move, birth_sites, find_bigons, find_triangles, random_diagram, MoveSite};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut d = random_diagram(3, 0, 8).unwrap();
    for step in 0..25 {
        let mut sites: Vec<MoveSite> = find_bigons(&d);
        sites.extend(find_triangles(&d));
        if d.crossing_count() < 8 {
            let r = rand::Rng::gen_range(&mut rng, 0..d.region_count());
            sites.extend(birth_sites(&d, r).into_iter().filter(|s| s.plan.is_none()).map(MoveSite::Birth));
        }
        let Some(site) = sites.choose(&mut rng).cloned() else { break };
        let before = full_report(&d, d.base()).unwrap();
        let next = match apply_move(&d, &site) {
            Ok(n) => n,
            Err(e) => {
                println!("step {step:>2}: {site} skipped ({e})");
                continue;
            }
        };
        let after = full_report(&next, next.base()).unwrap();
        let dj = after.jplus.as_ref().unwrap() - before.jplus.as_ref().unwrap();
        let djm = after.jminus.as_ref().unwrap() - before.jminus.as_ref().unwrap();
        println!(
            "step {step:>2}: {site:<36} n {} -> {}  dJ+ = {dj:>2}  dJ- = {djm:>2}  rot {} -> {}",
            before.crossing_count, after.crossing_count, before.rotation, after.rotation
        );
        d = next;
    }
}
