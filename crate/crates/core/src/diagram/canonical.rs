use std::fmt;

use super::{ArcSide, CurveDiagram, Sign};

/// Isomorphism invariant of a based diagram.
///
/// Minimum over all cyclic rotations of the code of: the visit sequence with
/// crossings relabeled by first appearance, the signs (flipped wherever the
/// rotation swaps which visit comes first), and every region as its genus plus
/// the smallest dart of each of its boundary cycles.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    visits: Vec<usize>,
    signs: Vec<Sign>,
    regions: Vec<(u32, Vec<usize>)>,
    base: (u32, Vec<usize>),
}

impl CanonicalForm {
    pub fn of(diagram: &CurveDiagram) -> Self {
        let len = diagram.code().len();
        (0..len.max(1))
            .map(|r| Self::rotated(diagram, r))
            .min()
            .expect("at least one rotation")
    }

    fn rotated(diagram: &CurveDiagram, r: usize) -> Self {
        let code = diagram.code();
        let len = code.len();
        let shift = |p: usize| if len == 0 { p } else { (p + len - r) % len };

        let mut relabel = vec![usize::MAX; code.crossing_count()];
        let mut visits = Vec::with_capacity(len);
        let mut order = Vec::with_capacity(code.crossing_count());
        for p in 0..len {
            let c = code.crossing_at((p + r) % len);
            if relabel[c] == usize::MAX {
                relabel[c] = order.len();
                order.push(c);
            }
            visits.push(relabel[c]);
        }
        let signs = order
            .iter()
            .map(|&c| {
                let [f, s] = code.positions(c);
                if shift(s) < shift(f) {
                    code.sign(c).flip()
                } else {
                    code.sign(c)
                }
            })
            .collect();

        let cycle_key: Vec<usize> = diagram
            .cycles()
            .iter()
            .map(|cycle| {
                cycle
                    .sides()
                    .iter()
                    .map(|s| ArcSide::new(shift(s.arc), s.side).dart())
                    .min()
                    .expect("cycles are nonempty")
            })
            .collect();
        let region_key = |rid: usize| {
            let region = diagram.region(rid);
            let mut keys: Vec<usize> = region.cycles.iter().map(|&c| cycle_key[c]).collect();
            keys.sort_unstable();
            (region.genus, keys)
        };
        let mut regions: Vec<_> = (0..diagram.region_count()).map(region_key).collect();
        regions.sort();
        Self {
            visits,
            signs,
            regions,
            base: region_key(diagram.base()),
        }
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.visits.is_empty() {
            write!(f, "-")?;
        }
        for (i, &c) in self.visits.iter().enumerate() {
            let s = if self.signs[c] == Sign::Pos { '+' } else { '-' };
            write!(f, "{}{}{}", if i > 0 { " " } else { "" }, c + 1, s)?;
        }
        write!(f, " |")?;
        for (g, darts) in &self.regions {
            write!(f, " g{g}{darts:?}")?;
        }
        write!(f, " | base g{}{:?}", self.base.0, self.base.1)
    }
}
