//! Self-tangency and triple-point moves, and random diagrams.
//!
//! Moves act on the combinatorial data only: the signed Gauss code is edited,
//! faces are re-traced, and every new boundary cycle is assigned to a region
//! by following which old region each new arc-side faces. All outputs pass the
//! same validation as parsed diagrams.

mod birth;
mod death;
mod random;
mod site;
mod triple;

use std::fmt;

use thiserror::Error;

use crate::diagram::{ArcSide, CurveDiagram, DiagramError};

pub use birth::{birth_sites, tangency_birth, tangency_birth_with_lens, BirthOutcome, BirthSite, BoundaryPosition, PlanPiece, SplitPlan};
pub use death::bigon_death;
pub use random::{random_diagram, RETRY_BUDGET};
pub use site::{parse_plan, parse_site};
pub use triple::triple_move;

/// Direction pattern of the two strands at a self-tangency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TangencyKind {
    /// The strands point the same way.
    Direct,
    /// The strands point opposite ways.
    Opposite,
}

impl fmt::Display for TangencyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TangencyKind::Direct => "direct",
            TangencyKind::Opposite => "opposite",
        })
    }
}

/// Where a move applies.
#[derive(Debug, Clone, PartialEq)]
pub enum MoveSite {
    /// A disk region with two corners, removed by a self-tangency.
    Bigon { region: usize, kind: TangencyKind },
    /// A disk region with three corners, flipped by a triple-point move.
    Triangle { region: usize },
    /// A self-tangency creating a new bigon.
    Birth(BirthSite),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MoveError {
    #[error("invalid site: {0}")]
    Site(String),
    #[error("region {region} is not a disk; a split plan must distribute the new boundary cycles {cycles:?}")]
    PlanRequired { region: usize, cycles: Vec<usize> },
    #[error("invalid split plan: {0}")]
    PlanInvalid(String),
    #[error("inconsistent move result: {0}")]
    Topology(String),
    #[error("no diagram accepted after {attempts} attempts")]
    ExhaustedRetries { attempts: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Applies any move.
pub fn apply_move(diagram: &CurveDiagram, site: &MoveSite) -> Result<CurveDiagram, MoveError> {
    match site {
        MoveSite::Bigon { region, .. } => bigon_death(diagram, *region),
        MoveSite::Triangle { region } => triple_move(diagram, *region),
        MoveSite::Birth(site) => tangency_birth(diagram, site),
    }
}

/// A disk region together with its boundary sides and corner crossings.
pub(crate) struct Polygon {
    pub sides: Vec<ArcSide>,
    /// `(from, to)` crossings of each side's arc.
    pub ends: Vec<(usize, usize)>,
}

/// Disk region with `corners` corners whose arcs are pairwise non-adjacent,
/// with distinct endpoints, and meet at `corners` distinct crossings.
pub(crate) fn polygon(diagram: &CurveDiagram, region: usize, corners: usize) -> Option<Polygon> {
    if region >= diagram.region_count() || !diagram.is_disk(region) {
        return None;
    }
    let cycle = &diagram.cycles()[diagram.region(region).cycles[0]];
    if cycle.corners() != corners {
        return None;
    }
    let sides = cycle.sides().to_vec();
    let len = diagram.code().len();
    let mut visits: Vec<usize> = sides.iter().flat_map(|s| [s.arc, (s.arc + 1) % len]).collect();
    visits.sort_unstable();
    visits.dedup();
    if visits.len() != 2 * corners {
        return None;
    }
    let ends: Vec<(usize, usize)> = sides.iter().map(|s| diagram.arc_ends(s.arc).expect("n > 0")).collect();
    let mut crossings: Vec<usize> = ends.iter().flat_map(|&(a, b)| [a, b]).collect();
    crossings.sort_unstable();
    crossings.dedup();
    if ends.iter().any(|(a, b)| a == b) || crossings.len() != corners {
        return None;
    }
    Some(Polygon { sides, ends })
}

/// Region filling the corner opposite to `side`'s face at the start
/// (`at_start`) or end of `side.arc`: it lies on the other side of the arc
/// that continues the strand through that crossing.
pub(crate) fn opposite_corner(diagram: &CurveDiagram, side: ArcSide, at_start: bool) -> usize {
    let len = diagram.code().len();
    let next = if at_start { (side.arc + len - 1) % len } else { (side.arc + 1) % len };
    diagram.region_of(ArcSide::new(next, side.side.opposite()))
}

fn bigon_kind(p: &Polygon) -> Option<TangencyKind> {
    let (a, b) = (p.ends[0], p.ends[1]);
    if a == b {
        Some(TangencyKind::Direct)
    } else if a.0 == b.1 && a.1 == b.0 {
        Some(TangencyKind::Opposite)
    } else {
        None
    }
}

pub(crate) fn bigon_at(diagram: &CurveDiagram, region: usize) -> Option<(Polygon, TangencyKind)> {
    let p = polygon(diagram, region, 2)?;
    let kind = bigon_kind(&p)?;
    Some((p, kind))
}

/// All bigon sites, ascending by region.
pub fn find_bigons(diagram: &CurveDiagram) -> Vec<MoveSite> {
    (0..diagram.region_count())
        .filter_map(|r| bigon_at(diagram, r).map(|(_, kind)| MoveSite::Bigon { region: r, kind }))
        .collect()
}

/// All triangle sites, ascending by region.
pub fn find_triangles(diagram: &CurveDiagram) -> Vec<MoveSite> {
    (0..diagram.region_count())
        .filter(|&r| polygon(diagram, r, 3).is_some())
        .map(|r| MoveSite::Triangle { region: r })
        .collect()
}

/// Region assignment for new cycles from per-dart labels; fails if a cycle
/// mixes labels.
pub(crate) fn label_cycles(
    cycles: &[crate::diagram::BoundaryCycle],
    label: impl Fn(ArcSide) -> usize,
) -> Result<Vec<usize>, MoveError> {
    cycles
        .iter()
        .enumerate()
        .map(|(id, cycle)| {
            let first = label(cycle.sides()[0]);
            match cycle.sides().iter().find(|&&s| label(s) != first) {
                Some(s) => Err(MoveError::Topology(format!(
                    "new boundary cycle {id} meets two different regions (at {} and {s})",
                    cycle.sides()[0]
                ))),
                None => Ok(first),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    #[test]
    fn no_sites_on_small_fixtures() {
        let circle = parse_diagram("curve -\nbase 1").unwrap();
        assert!(find_bigons(&circle).is_empty());
        let fig8 = parse_diagram("curve 1+ 1+\nbase 0").unwrap();
        assert!(find_bigons(&fig8).is_empty());
        assert!(find_triangles(&fig8).is_empty());
    }

    #[test]
    fn trefoil_shadow_has_triangles_and_bigons() {
        let d = parse_diagram("curve 1+ 2- 3+ 1+ 2- 3+\nbase 0").unwrap();
        assert_eq!(find_bigons(&d).len(), 3);
        assert_eq!(find_triangles(&d).len(), 2);
    }
}
