//! Combinatorial curve diagrams on closed oriented surfaces.
//!
//! A [`CurveDiagram`] is a signed Gauss code together with the grouping of
//! its traced boundary cycles into regions of `S \ Γ`, each region carrying a
//! genus. The default grouping (one genus-0 region per cycle) is the cellular
//! embedding on the carrier surface of the code.

mod canonical;
mod code;
mod faces;
mod format;
mod index;
mod profile;

use thiserror::Error;

pub use canonical::CanonicalForm;
pub use code::{Sign, SignedGaussCode};
pub use faces::{trace_boundary_cycles, ArcSide, BoundaryCycle, Side};
pub use format::{parse_diagram, render_diagram};
pub use index::IndexFunction;
pub use profile::{EulerMoments, SmoothedProfile, SubsurfaceProfile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Label { line: Option<usize>, message: String },
    #[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Topology { line: Option<usize>, message: String },
    #[error("curve is homologically nontrivial: region {region} would need two different index values")]
    HomologicallyNontrivial { region: usize },
    #[error("index function has a non-integer offset; shift it to an integer first")]
    RationalIndex,
    #[error("level {0} is not in 1/2 + Z")]
    NotHalfLevel(crate::HalfInt),
    #[error("region {0} does not exist")]
    UnknownRegion(usize),
}

impl DiagramError {
    pub(crate) fn topology(message: impl Into<String>) -> Self {
        DiagramError::Topology {
            line: None,
            message: message.into(),
        }
    }
}

/// A region of `S \ Γ`: a set of boundary cycles and a genus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Region {
    pub cycles: Vec<usize>,
    pub genus: u32,
}

impl Region {
    pub fn new(mut cycles: Vec<usize>, genus: u32) -> Self {
        cycles.sort_unstable();
        Self { cycles, genus }
    }

    /// `χ = 2 - 2g - b`.
    pub fn chi(&self) -> i64 {
        2 - 2 * i64::from(self.genus) - self.cycles.len() as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveDiagram {
    code: SignedGaussCode,
    faces: faces::Faces,
    regions: Vec<Region>,
    cycle_region: Vec<usize>,
    surface_chi: i64,
    base: usize,
}

impl CurveDiagram {
    /// Cellular embedding on the carrier surface: every cycle its own disk.
    pub fn cellular(code: SignedGaussCode) -> Self {
        let faces = faces::trace(&code);
        let regions = (0..faces.cycles.len()).map(|c| Region::new(vec![c], 0)).collect();
        Self::with_regions(code, regions, None, 0).expect("cellular embedding is always consistent")
    }

    /// Validates and assembles a diagram. `surface_genus`, when given, must
    /// agree with the Euler characteristic implied by the regions.
    pub fn with_regions(
        code: SignedGaussCode,
        regions: Vec<Region>,
        surface_genus: Option<u32>,
        base: usize,
    ) -> Result<Self, DiagramError> {
        let faces = faces::trace(&code);
        Self::assemble(code, faces, regions, surface_genus, base)
    }

    fn assemble(
        code: SignedGaussCode,
        faces: faces::Faces,
        regions: Vec<Region>,
        surface_genus: Option<u32>,
        base: usize,
    ) -> Result<Self, DiagramError> {
        let cycle_count = faces.cycles.len();
        let mut cycle_region = vec![usize::MAX; cycle_count];
        for (r, region) in regions.iter().enumerate() {
            if region.cycles.is_empty() {
                return Err(DiagramError::topology(format!("region {r} has no boundary cycles")));
            }
            for &c in &region.cycles {
                if c >= cycle_count {
                    return Err(DiagramError::topology(format!(
                        "region {r} names cycle {c}, but the curve has only {cycle_count} boundary cycles"
                    )));
                }
                if cycle_region[c] != usize::MAX {
                    return Err(DiagramError::topology(format!("cycle {c} is assigned to more than one region")));
                }
                cycle_region[c] = r;
            }
        }
        if let Some(c) = cycle_region.iter().position(|&r| r == usize::MAX) {
            return Err(DiagramError::topology(format!("cycle {c} is not assigned to any region")));
        }

        let n = code.crossing_count() as i64;
        let chi: i64 = regions.iter().map(Region::chi).sum::<i64>() - n;
        if chi > 2 || chi % 2 != 0 {
            return Err(DiagramError::topology(format!(
                "regions give Euler characteristic {chi}, which is not that of a closed connected oriented surface"
            )));
        }
        if let Some(g) = surface_genus {
            let declared = 2 - 2 * i64::from(g);
            if declared != chi {
                return Err(DiagramError::topology(format!(
                    "surface genus {g} has chi = {declared}, but the regions give chi = {chi}"
                )));
            }
        }
        if base >= regions.len() {
            return Err(DiagramError::UnknownRegion(base));
        }

        Ok(Self {
            code,
            faces,
            regions,
            cycle_region,
            surface_chi: chi,
            base,
        })
    }

    /// Same diagram with the base point moved to another region.
    pub fn with_base(&self, base: usize) -> Result<Self, DiagramError> {
        if base >= self.regions.len() {
            return Err(DiagramError::UnknownRegion(base));
        }
        let mut out = self.clone();
        out.base = base;
        Ok(out)
    }

    pub fn code(&self) -> &SignedGaussCode {
        &self.code
    }

    pub fn crossing_count(&self) -> usize {
        self.code.crossing_count()
    }

    /// Number of arcs: `2n`, or one closed arc when `n = 0`.
    pub fn arc_count(&self) -> usize {
        self.code.len().max(1)
    }

    pub fn cycles(&self) -> &[BoundaryCycle] {
        &self.faces.cycles
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region_count(&self) -> usize {
        self.regions.len()
    }

    pub fn region(&self, r: usize) -> &Region {
        &self.regions[r]
    }

    pub fn surface_chi(&self) -> i64 {
        self.surface_chi
    }

    pub fn surface_genus(&self) -> u32 {
        ((2 - self.surface_chi) / 2) as u32
    }

    /// Euler characteristic of the carrier surface, `n - 2n + #cycles`.
    pub fn carrier_chi(&self) -> i64 {
        self.faces.cycles.len() as i64 - self.crossing_count() as i64
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn cycle_of(&self, side: ArcSide) -> usize {
        self.faces.dart_cycle[side.dart()]
    }

    pub fn region_of_cycle(&self, cycle: usize) -> usize {
        self.cycle_region[cycle]
    }

    /// Region lying on the given side of an arc.
    pub fn region_of(&self, side: ArcSide) -> usize {
        self.cycle_region[self.cycle_of(side)]
    }

    /// Regions filling the four corners of a crossing.
    pub fn corner_regions(&self, crossing: usize) -> [usize; 4] {
        let c = &self.faces.corners[crossing];
        [
            self.region_of(c[0]),
            self.region_of(c[1]),
            self.region_of(c[2]),
            self.region_of(c[3]),
        ]
    }

    /// Arc-sides entering each corner of a crossing.
    pub fn corner_sides(&self, crossing: usize) -> &[ArcSide] {
        &self.faces.corners[crossing]
    }

    /// Endpoint crossings of an arc as `(from, to)`; `None` for the closed arc of `n = 0`.
    pub fn arc_ends(&self, arc: usize) -> Option<(usize, usize)> {
        if self.code.is_empty() {
            return None;
        }
        let len = self.code.len();
        Some((self.code.crossing_at(arc), self.code.crossing_at((arc + 1) % len)))
    }

    /// Total number of corners on a region's boundary.
    pub fn region_corners(&self, r: usize) -> usize {
        self.regions[r].cycles.iter().map(|&c| self.faces.cycles[c].corners()).sum()
    }

    /// True when the region is a disk: genus 0 with a single boundary cycle.
    pub fn is_disk(&self, r: usize) -> bool {
        let region = &self.regions[r];
        region.genus == 0 && region.cycles.len() == 1
    }

    pub fn is_homologically_trivial(&self) -> bool {
        self.index_function(self.base).is_ok()
    }

    pub fn canonicalize(&self) -> CanonicalForm {
        CanonicalForm::of(self)
    }
}

impl std::fmt::Display for CurveDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&render_diagram(self))
    }
}
