use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::MoveError;
use crate::diagram::{CurveDiagram, Region, Sign, SignedGaussCode};

/// Attempts made by [`random_diagram`] before giving up.
pub const RETRY_BUDGET: usize = 2_000_000;

/// Rejection-samples a homologically trivial diagram with `n` crossings on
/// the closed surface of genus `genus`.
///
/// Each attempt shuffles the `2n` visits and draws signs uniformly. Codes
/// whose carrier surface has genus above `genus` are rejected; a smaller
/// carrier has the missing genus added to the region of cycle 0. The base is
/// drawn uniformly among the regions. Deterministic for a fixed seed.
pub fn random_diagram(n: usize, genus: u32, seed: u64) -> Result<CurveDiagram, MoveError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut visits: Vec<usize> = (0..2 * n).map(|v| v / 2).collect();
    for _ in 0..RETRY_BUDGET {
        visits.shuffle(&mut rng);
        let signs: Vec<Sign> = (0..n).map(|_| Sign::from_positive(rng.gen())).collect();
        let code = SignedGaussCode::from_visits(&visits, &signs);
        let cellular = CurveDiagram::cellular(code);
        let carrier_genus = (2 - cellular.carrier_chi()) / 2;
        if carrier_genus > i64::from(genus) {
            continue;
        }
        let mut regions = cellular.regions().to_vec();
        regions[0] = Region::new(regions[0].cycles.clone(), genus - carrier_genus as u32);
        let padded = CurveDiagram::with_regions(cellular.code().clone(), regions, Some(genus), 0)?;
        if !padded.is_homologically_trivial() {
            continue;
        }
        let base = rng.gen_range(0..padded.region_count());
        return Ok(padded.with_base(base)?);
    }
    Err(MoveError::ExhaustedRetries { attempts: RETRY_BUDGET })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    #[test]
    fn small_cases() {
        let circle = parse_diagram("curve -\nbase 1").unwrap();
        let fig8 = parse_diagram("curve 1+ 1+\nbase 0").unwrap();
        for seed in 0..6 {
            let c = random_diagram(0, 0, seed).unwrap();
            assert!((0..2).any(|b| circle.with_base(b).unwrap().canonicalize() == c.canonicalize()));
            let f = random_diagram(1, 0, seed).unwrap();
            assert!((0..3).any(|b| fig8.with_base(b).unwrap().canonicalize() == f.canonicalize()));
        }
    }

    #[test]
    fn deterministic_and_trivial() {
        for (n, g) in [(3, 0), (4, 2), (2, 1)] {
            let a = random_diagram(n, g, 11).unwrap();
            assert_eq!(a, random_diagram(n, g, 11).unwrap());
            assert_eq!(a.surface_genus(), g);
            assert_eq!(a.crossing_count(), n);
            assert!(a.index_function(a.base()).is_ok());
        }
    }
}
