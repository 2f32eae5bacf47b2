use std::collections::BTreeMap;

use super::{bigon_at, label_cycles, opposite_corner, MoveError};
use crate::diagram::{trace_boundary_cycles, ArcSide, CurveDiagram, Region, SignedGaussCode};

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Removes the bigon `region` by pulling its two strands apart.
///
/// The two crossings disappear from the code. The bigon and the two regions
/// filling the corners opposite to it merge into one region; every other
/// region keeps its boundary count and genus.
pub fn bigon_death(diagram: &CurveDiagram, region: usize) -> Result<CurveDiagram, MoveError> {
    let (bigon, _) = bigon_at(diagram, region)
        .ok_or_else(|| MoveError::Site(format!("region {region} is not a bigon")))?;
    let code = diagram.code();
    let len = code.len();
    let [s0, s1] = [bigon.sides[0], bigon.sides[1]];
    let (p, q) = bigon.ends[0];

    let at_start = |side: ArcSide, crossing: usize| diagram.arc_ends(side.arc).expect("n > 0").0 == crossing;
    let mut opposite = [0; 2];
    for (slot, crossing) in [p, q].into_iter().enumerate() {
        let a = opposite_corner(diagram, s0, at_start(s0, crossing));
        let b = opposite_corner(diagram, s1, at_start(s1, crossing));
        if a != b {
            return Err(MoveError::Topology(format!(
                "the corner opposite the bigon at crossing {crossing} is ambiguous ({a} or {b})"
            )));
        }
        opposite[slot] = a;
    }

    let mut parent: Vec<usize> = (0..diagram.region_count()).collect();
    for &o in &opposite {
        let (a, b) = (find(&mut parent, region), find(&mut parent, o));
        parent[a.max(b)] = a.min(b);
    }
    let mut merged: Vec<usize> = vec![region, opposite[0], opposite[1]];
    merged.sort_unstable();
    merged.dedup();
    let merged_chi: i64 = merged.iter().map(|&r| diagram.region(r).chi()).sum::<i64>() - 2;

    let removed = [s0.arc, (s0.arc + 1) % len, s1.arc, (s1.arc + 1) % len];
    let survivors: Vec<usize> = (0..len).filter(|v| !removed.contains(v)).collect();
    let visits: Vec<usize> = survivors.iter().map(|&v| code.crossing_at(v)).collect();
    let new_code = SignedGaussCode::from_visits(&visits, code.signs());

    // each new arc starts at a surviving visit, so the old arc starting there
    // faces the same regions; with no survivors any non-lens arc will do
    let spare = (0..len).find(|&a| a != s0.arc && a != s1.arc).expect("four arcs at least");
    let old_arc = |new_arc: usize| survivors.get(new_arc).copied().unwrap_or(spare);
    let new_cycles = trace_boundary_cycles(&new_code);
    let labels = label_cycles(&new_cycles, |s| {
        let old = diagram.region_of(ArcSide::new(old_arc(s.arc), s.side));
        find(&mut parent.clone(), old)
    })?;

    let mut new_id: BTreeMap<usize, usize> = BTreeMap::new();
    for r in 0..diagram.region_count() {
        let root = find(&mut parent, r);
        let next = new_id.len();
        new_id.entry(root).or_insert(next);
    }
    let mut cycles_of: Vec<Vec<usize>> = vec![Vec::new(); new_id.len()];
    for (cycle, &root) in labels.iter().enumerate() {
        cycles_of[new_id[&root]].push(cycle);
    }

    let mut regions = Vec::with_capacity(new_id.len());
    for (&root, &id) in &new_id {
        let cycles = std::mem::take(&mut cycles_of[id]);
        let b = cycles.len() as i64;
        if b == 0 {
            return Err(MoveError::Topology(format!("old region {root} lost all its boundary cycles")));
        }
        let genus = if root == find(&mut parent, region) {
            let twice = 2 - merged_chi - b;
            if twice < 0 || twice % 2 != 0 {
                return Err(MoveError::Topology(format!(
                    "merged region has chi = {merged_chi} and {b} boundary cycles: no valid genus"
                )));
            }
            (twice / 2) as u32
        } else {
            let old = diagram.region(root);
            if old.cycles.len() as i64 != b {
                return Err(MoveError::Topology(format!(
                    "region {root} went from {} to {b} boundary cycles",
                    old.cycles.len()
                )));
            }
            old.genus
        };
        regions.push((id, Region::new(cycles, genus)));
    }
    regions.sort_by_key(|(id, _)| *id);
    let regions = regions.into_iter().map(|(_, r)| r).collect();
    let base = new_id[&find(&mut parent, diagram.base())];
    Ok(CurveDiagram::with_regions(new_code, regions, Some(diagram.surface_genus()), base)?)
}
