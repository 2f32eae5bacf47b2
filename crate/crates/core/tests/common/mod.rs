#![allow(dead_code)]

use qgb::diagram::CurveDiagram;
use qgb::fixtures::DIAGRAMS;
use qgb::moves::random_diagram;

/// Random diagrams with up to 6 crossings on the sphere and the genus-2
/// surface, `per_genus` of each.
pub fn random_corpus(per_genus: u64) -> Vec<CurveDiagram> {
    let mut out = Vec::new();
    for genus in [0, 2] {
        for seed in 0..per_genus {
            let n = (seed % 7) as usize;
            out.push(random_diagram(n, genus, 1000 * u64::from(genus) + seed).expect("generator succeeds"));
        }
    }
    out
}

/// The homologically trivial fixtures followed by the random corpus.
pub fn corpus(per_genus: u64) -> Vec<CurveDiagram> {
    let mut out: Vec<CurveDiagram> = DIAGRAMS
        .iter()
        .map(|f| f.diagram())
        .filter(|d| d.is_homologically_trivial())
        .collect();
    out.extend(random_corpus(per_genus));
    out
}
