use std::fmt;

use super::{label_cycles, MoveError, TangencyKind};
use crate::diagram::{trace_boundary_cycles, ArcSide, CurveDiagram, Region, Side, Sign, SignedGaussCode};

/// A point on the boundary of a region: an arc-side facing the region and a
/// position in `(0, 1)` along the arc. Offsets only matter when both ends of a
/// birth lie on the same arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPosition {
    pub side: ArcSide,
    pub offset: f64,
}

impl BoundaryPosition {
    pub fn new(side: ArcSide, offset: f64) -> Self {
        Self { side, offset }
    }

    pub fn mid(side: ArcSide) -> Self {
        Self::new(side, 0.5)
    }
}

impl fmt::Display for BoundaryPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.offset == 0.5 {
            write!(f, "{}", self.side)
        } else {
            write!(f, "{}@{}", self.side, self.offset)
        }
    }
}

/// One region produced when a birth splits a non-disk region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanPiece {
    pub genus: u32,
    /// Boundary cycle ids of the diagram after the move.
    pub cycles: Vec<usize>,
    /// Whether this piece keeps the base point.
    pub base: bool,
}

/// How the pieces of a split region share its genus and boundary.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SplitPlan {
    pub pieces: Vec<PlanPiece>,
}

impl fmt::Display for SplitPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.pieces.iter().enumerate() {
            let cycles: Vec<String> = p.cycles.iter().map(usize::to_string).collect();
            write!(f, "{}{}g{}c{}", if i > 0 { "/" } else { "" }, if p.base { "*" } else { "" }, p.genus, cycles.join(","))?;
        }
        Ok(())
    }
}

/// A self-tangency birth: the strand at `first` is pushed through the region
/// and across the strand at `second`, creating a bigon on the far side of
/// `second`. The kind is fixed by the geometry: direct exactly when the two
/// positions face the region from different sides of their arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct BirthSite {
    pub region: usize,
    pub first: BoundaryPosition,
    pub second: BoundaryPosition,
    pub kind: TangencyKind,
    pub plan: Option<SplitPlan>,
}

impl BirthSite {
    /// A site with the kind the positions imply and no plan.
    pub fn between(region: usize, first: BoundaryPosition, second: BoundaryPosition) -> Self {
        Self {
            region,
            first,
            second,
            kind: kind_of(first.side, second.side),
            plan: None,
        }
    }
}

fn kind_of(a: ArcSide, b: ArcSide) -> TangencyKind {
    if a.side == b.side {
        TangencyKind::Opposite
    } else {
        TangencyKind::Direct
    }
}

/// A birth result with the id of the new bigon region.
#[derive(Debug, Clone)]
pub struct BirthOutcome {
    pub diagram: CurveDiagram,
    pub lens: usize,
}

/// All birth sites of one region: every ordered pair of distinct boundary
/// arc-sides, plus both orders along a single arc-side.
pub fn birth_sites(diagram: &CurveDiagram, region: usize) -> Vec<BirthSite> {
    let sides: Vec<ArcSide> = diagram
        .region(region)
        .cycles
        .iter()
        .flat_map(|&c| diagram.cycles()[c].sides().iter().copied())
        .collect();
    let mut out = Vec::new();
    for &a in &sides {
        for &b in &sides {
            if a == b {
                for (s, t) in [(1.0 / 3.0, 2.0 / 3.0), (2.0 / 3.0, 1.0 / 3.0)] {
                    out.push(BirthSite::between(region, BoundaryPosition::new(a, s), BoundaryPosition::new(b, t)));
                }
            } else {
                out.push(BirthSite::between(region, BoundaryPosition::mid(a), BoundaryPosition::mid(b)));
            }
        }
    }
    out
}

pub fn tangency_birth(diagram: &CurveDiagram, site: &BirthSite) -> Result<CurveDiagram, MoveError> {
    Ok(tangency_birth_with_lens(diagram, site)?.diagram)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Visit {
    Old(usize),
    /// `(strand, k)`: the `k`-th new visit of the first or second strand.
    New(usize, usize),
}

const LENS: usize = usize::MAX;

/// Performs the birth and reports which region is the new bigon.
///
/// In a local picture where the finger runs upward from `first` to `second`,
/// with `ε₁ = +1` if the region is on the left of the first arc and `ε₂ = +1`
/// if it is on the left of the second, the first strand runs along `ε₁·x`
/// and the second along `-ε₂·x`. The finger crosses the second strand at a
/// left and a right crossing with signs `ε₁ε₂` and `-ε₁ε₂` with respect to
/// (first strand, second strand).
pub fn tangency_birth_with_lens(diagram: &CurveDiagram, site: &BirthSite) -> Result<BirthOutcome, MoveError> {
    let r = site.region;
    if r >= diagram.region_count() {
        return Err(MoveError::Site(format!("region {r} does not exist")));
    }
    let (p1, p2) = (site.first, site.second);
    let arcs = diagram.arc_count();
    for p in [p1, p2] {
        if p.side.arc >= arcs || diagram.region_of(p.side) != r {
            return Err(MoveError::Site(format!("{} is not on the boundary of region {r}", p.side)));
        }
        if !(p.offset > 0.0 && p.offset < 1.0) {
            return Err(MoveError::Site(format!("offset {} must lie strictly between 0 and 1", p.offset)));
        }
    }
    if p1.side.arc == p2.side.arc && p1.offset == p2.offset {
        return Err(MoveError::Site("both positions are the same point; give distinct offsets".into()));
    }
    let kind = kind_of(p1.side, p2.side);
    if kind != site.kind {
        return Err(MoveError::Site(format!(
            "{} facing region {r} from the {} and {} faces it from the {}: a birth between them is {kind}, not {}",
            p1.side,
            side_name(p1.side.side),
            p2.side,
            side_name(p2.side.side),
            site.kind
        )));
    }

    let e1 = p1.side.side == Side::Left;
    let e2 = p2.side.side == Side::Left;
    let code = diagram.code();
    let n = code.crossing_count();
    let (left, right) = (n, n + 1);
    // crossing order along each strand
    let order1 = if e1 { [left, right] } else { [right, left] };
    let order2 = if e2 { [right, left] } else { [left, right] };

    let mut inserts = [(p1.side.arc, p1.offset, 0usize), (p2.side.arc, p2.offset, 1usize)];
    inserts.sort_by(|a, b| (a.0, a.1).partial_cmp(&(b.0, b.1)).expect("finite offsets"));
    let mut sequence: Vec<Visit> = Vec::with_capacity(code.len() + 4);
    for arc in 0..arcs {
        if !code.is_empty() {
            sequence.push(Visit::Old(arc));
        }
        for &(_, _, strand) in inserts.iter().filter(|i| i.0 == arc) {
            sequence.push(Visit::New(strand, 0));
            sequence.push(Visit::New(strand, 1));
        }
    }
    let crossing_of = |v: Visit| match v {
        Visit::Old(p) => code.crossing_at(p),
        Visit::New(0, k) => order1[k],
        Visit::New(_, k) => order2[k],
    };
    let visits: Vec<usize> = sequence.iter().map(|&v| crossing_of(v)).collect();

    let sign_left = e1 == e2;
    let mut signs: Vec<Sign> = code.signs().to_vec();
    for (c, positive) in [(left, sign_left), (right, !sign_left)] {
        let first = sequence.iter().find(|&&v| crossing_of(v) == c).expect("new crossing visited");
        let second_strand_first = matches!(first, Visit::New(1, _));
        signs.push(Sign::from_positive(positive != second_strand_first));
    }
    let new_code = SignedGaussCode::from_visits(&visits, &signs);

    let old_arc_of = |v: Visit| match v {
        Visit::Old(p) => p,
        Visit::New(strand, _) => [p1, p2][strand].side.arc,
    };
    let far1 = diagram.region_of(p1.side.opposite());
    let far2 = diagram.region_of(p2.side.opposite());
    let tip = sequence.iter().position(|&v| v == Visit::New(0, 0)).expect("inserted");
    let middle = sequence.iter().position(|&v| v == Visit::New(1, 0)).expect("inserted");
    let label = |s: ArcSide| -> usize {
        let lens_left_of_tip = !e1;
        let lens_left_of_middle = !e2;
        if s.arc == tip {
            return if (s.side == Side::Left) == lens_left_of_tip { LENS } else { far2 };
        }
        if s.arc == middle {
            return if (s.side == Side::Left) == lens_left_of_middle { LENS } else { far1 };
        }
        diagram.region_of(ArcSide::new(old_arc_of(sequence[s.arc]), s.side))
    };
    let new_cycles = trace_boundary_cycles(&new_code);
    let assigned = label_cycles(&new_cycles, label)?;

    let mut regions: Vec<Region> = diagram.regions().iter().map(|g| Region::new(Vec::new(), g.genus)).collect();
    let mut lens_cycles = Vec::new();
    let mut split = Vec::new();
    for (cycle, &owner) in assigned.iter().enumerate() {
        match owner {
            LENS => lens_cycles.push(cycle),
            o if o == r => split.push(cycle),
            o => regions[o].cycles.push(cycle),
        }
    }
    for (id, new) in regions.iter().enumerate() {
        if id != r && new.cycles.len() != diagram.region(id).cycles.len() {
            return Err(MoveError::Topology(format!(
                "region {id} went from {} to {} boundary cycles",
                diagram.region(id).cycles.len(),
                new.cycles.len()
            )));
        }
    }
    if lens_cycles.len() != 1 || new_cycles[lens_cycles[0]].corners() != 2 {
        return Err(MoveError::Topology("the new bigon is not a single two-cornered cycle".into()));
    }

    // the piece holding the image of the region's first arc-side
    let first_side = diagram.cycles()[diagram.region(r).cycles[0]].sides()[0];
    let image_arc = if code.is_empty() {
        sequence.len() - 1
    } else {
        sequence.iter().position(|&v| v == Visit::Old(first_side.arc)).expect("old visit kept")
    };
    let anchor = new_cycles
        .iter()
        .position(|c| c.contains(ArcSide::new(image_arc, first_side.side)))
        .expect("every dart is on a cycle");

    let target_chi = diagram.region(r).chi() + 1;
    let pieces = split_pieces(diagram, site, &split, anchor, target_chi)?;
    let base_piece = pieces.iter().position(|p| p.base);
    let mut base = diagram.base();
    for (i, piece) in pieces.into_iter().enumerate() {
        let id = if i == 0 { r } else { regions.len() };
        if diagram.base() == r && base_piece == Some(i) {
            base = id;
        }
        let region = Region::new(piece.cycles, piece.genus);
        if i == 0 {
            regions[r] = region;
        } else {
            regions.push(region);
        }
    }
    let lens = regions.len();
    regions.push(Region::new(lens_cycles, 0));
    let out = CurveDiagram::with_regions(new_code, regions, Some(diagram.surface_genus()), base)?;
    Ok(BirthOutcome { diagram: out, lens })
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Left => "left",
        Side::Right => "right",
    }
}

/// Pieces of the split region, the one containing `anchor` first, with the
/// base flag on exactly one piece.
fn split_pieces(
    diagram: &CurveDiagram,
    site: &BirthSite,
    split: &[usize],
    anchor: usize,
    target_chi: i64,
) -> Result<Vec<PlanPiece>, MoveError> {
    let r = site.region;
    let genus_for = |chi: i64, b: usize| -> Option<u32> {
        let twice = 2 - chi - b as i64;
        (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as u32)
    };
    let mut pieces = match (&site.plan, split.len()) {
        (None, 1) => {
            let genus = genus_for(target_chi, 1)
                .ok_or_else(|| MoveError::Topology(format!("region {r} cannot have chi = {target_chi} with one boundary cycle")))?;
            vec![PlanPiece {
                genus,
                cycles: split.to_vec(),
                base: false,
            }]
        }
        (None, _) if diagram.is_disk(r) => split
            .iter()
            .map(|&c| PlanPiece {
                genus: 0,
                cycles: vec![c],
                base: false,
            })
            .collect(),
        (None, _) => {
            return Err(MoveError::PlanRequired {
                region: r,
                cycles: split.to_vec(),
            })
        }
        (Some(plan), _) => {
            let mut seen: Vec<usize> = plan.pieces.iter().flat_map(|p| p.cycles.iter().copied()).collect();
            seen.sort_unstable();
            let mut want = split.to_vec();
            want.sort_unstable();
            if seen != want {
                return Err(MoveError::PlanInvalid(format!(
                    "pieces must partition the new boundary cycles {want:?}, got {seen:?}"
                )));
            }
            if plan.pieces.iter().any(|p| p.cycles.is_empty()) {
                return Err(MoveError::PlanInvalid("every piece needs a boundary cycle".into()));
            }
            let chi: i64 = plan
                .pieces
                .iter()
                .map(|p| 2 - 2 * i64::from(p.genus) - p.cycles.len() as i64)
                .sum();
            if chi != target_chi {
                return Err(MoveError::PlanInvalid(format!(
                    "pieces have total chi = {chi}, but the region must go from chi = {} to {target_chi}",
                    target_chi - 1
                )));
            }
            if plan.pieces.iter().filter(|p| p.base).count() > 1 {
                return Err(MoveError::PlanInvalid("more than one piece is marked as the base".into()));
            }
            if diagram.base() != r && plan.pieces.iter().any(|p| p.base) {
                return Err(MoveError::PlanInvalid(format!("the base is not in region {r}")));
            }
            plan.pieces.clone()
        }
    };
    let first = pieces
        .iter()
        .position(|p| p.cycles.contains(&anchor))
        .expect("anchor cycle belongs to the split region");
    pieces.swap(0, first);
    if !pieces.iter().any(|p| p.base) {
        pieces[0].base = true;
    }
    Ok(pieces)
}
