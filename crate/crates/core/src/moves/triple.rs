use super::{label_cycles, opposite_corner, polygon, MoveError};
use crate::diagram::{trace_boundary_cycles, ArcSide, CurveDiagram, Region, Side, SignedGaussCode};

/// Slides one strand of the triangle `region` across the crossing of the other
/// two.
///
/// Every triangle arc passes its two crossings in the opposite order
/// afterwards, so the two visits at its ends trade places in the code. The
/// triangle reappears on the other side of each of its arcs, now bordering the
/// regions that used to fill its opposite corners. Crossing signs are
/// kept, except where a swap across the start of the code changes which visit
/// comes first.
pub fn triple_move(diagram: &CurveDiagram, region: usize) -> Result<CurveDiagram, MoveError> {
    let tri = polygon(diagram, region, 3).ok_or_else(|| MoveError::Site(format!("region {region} is not a triangle")))?;
    let code = diagram.code();
    let len = code.len();

    // new position of the strand that passed old position p
    let mut moved_to: Vec<usize> = (0..len).collect();
    for s in &tri.sides {
        let (a, b) = (s.arc, (s.arc + 1) % len);
        moved_to[a] = b;
        moved_to[b] = a;
    }
    let mut visits = vec![0; len];
    for p in 0..len {
        visits[moved_to[p]] = code.crossing_at(p);
    }
    let signs: Vec<_> = (0..code.crossing_count())
        .map(|c| {
            let [f, s] = code.positions(c);
            if moved_to[f] > moved_to[s] {
                code.sign(c).flip()
            } else {
                code.sign(c)
            }
        })
        .collect();
    let new_code = SignedGaussCode::from_visits(&visits, &signs);

    // (region on the left, region on the right) of every arc
    let mut labels: Vec<[usize; 2]> = (0..len)
        .map(|a| [diagram.region_of(ArcSide::left(a)), diagram.region_of(ArcSide::right(a))])
        .collect();
    for (i, side) in tri.sides.iter().enumerate() {
        let (from, to) = tri.ends[i];
        // the vertex off this arc, seen from the next arc of the triangle
        let j = (i + 1) % 3;
        let (nf, nt) = tri.ends[j];
        let apex = if nf != from && nf != to { nf } else { nt };
        let next = tri.sides[j];
        let opposite = opposite_corner(diagram, next, nf == apex);
        let k = (i + 2) % 3;
        let check = opposite_corner(diagram, tri.sides[k], tri.ends[k].0 == apex);
        if opposite != check {
            return Err(MoveError::Topology(format!(
                "corner opposite the triangle at crossing {apex} is ambiguous ({opposite} or {check})"
            )));
        }
        let slot = |s: Side| usize::from(s == Side::Right);
        labels[side.arc][slot(side.side.opposite())] = region;
        labels[side.arc][slot(side.side)] = opposite;
    }
    let new_cycles = trace_boundary_cycles(&new_code);
    let assigned = label_cycles(&new_cycles, |s| labels[s.arc][usize::from(s.side == Side::Right)])?;

    let mut regions: Vec<Region> = diagram.regions().iter().map(|r| Region::new(Vec::new(), r.genus)).collect();
    for (cycle, &r) in assigned.iter().enumerate() {
        regions[r].cycles.push(cycle);
    }
    for (r, new) in regions.iter().enumerate() {
        if new.cycles.len() != diagram.region(r).cycles.len() {
            return Err(MoveError::Topology(format!(
                "region {r} went from {} to {} boundary cycles",
                diagram.region(r).cycles.len(),
                new.cycles.len()
            )));
        }
    }
    let out = CurveDiagram::with_regions(new_code, regions, Some(diagram.surface_genus()), diagram.base())?;
    if polygon(&out, region, 3).is_none() {
        return Err(MoveError::Topology(format!("region {region} is no longer a triangle")));
    }
    Ok(out)
}
