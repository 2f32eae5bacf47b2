//! Euler characteristics of the superlevel sets `S_j = {ind > j}` and of the
//! level sets of the smoothed curve.

use std::collections::BTreeMap;

use super::{ArcSide, CurveDiagram, DiagramError, IndexFunction};
use crate::HalfInt;

/// `χ(S_j)` and `a_j = χ(S_j) - [j < 0]·χ(S)` over the half-integer levels
/// `j` spanning the index range, plus the crossing indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsurfaceProfile {
    surface_chi: i64,
    /// `floor(j)` of the first stored level.
    lowest: i64,
    chi: Vec<i64>,
    crossing_indices: Vec<i64>,
}

fn check_level(j: HalfInt) -> Result<i64, DiagramError> {
    if j.is_integer() {
        Err(DiagramError::NotHalfLevel(j))
    } else {
        Ok(j.floor())
    }
}

/// `χ(S_j)` by additivity of the compactly supported Euler characteristic
/// over the open cells of `{ind > j}`: regions, open arcs and crossings.
fn chi_above(diagram: &CurveDiagram, values: &[i64], k: i64) -> i64 {
    let regions: i64 = diagram
        .regions()
        .iter()
        .zip(values)
        .filter(|(_, &v)| v > k)
        .map(|(r, _)| r.chi())
        .sum();
    if diagram.crossing_count() == 0 {
        // the closed crossing-free curve contributes 0
        return regions;
    }
    let arcs = (0..diagram.arc_count())
        .filter(|&a| {
            let l = values[diagram.region_of(ArcSide::left(a))];
            let r = values[diagram.region_of(ArcSide::right(a))];
            l.min(r) > k
        })
        .count() as i64;
    let crossings = (0..diagram.crossing_count())
        .filter(|&c| diagram.crossing_index(values, c) - 1 > k)
        .count() as i64;
    regions - arcs + crossings
}

impl CurveDiagram {
    /// `χ(S_j)` for a half-integer level `j`; needs an integer index function.
    pub fn subsurface_chi(&self, ind: &IndexFunction, j: HalfInt) -> Result<i64, DiagramError> {
        let k = check_level(j)?;
        let values = ind.integer_values()?;
        Ok(chi_above(self, &values, k))
    }
}

impl SubsurfaceProfile {
    pub fn new(diagram: &CurveDiagram, ind: &IndexFunction) -> Result<Self, DiagramError> {
        let values = ind.integer_values()?;
        let min = *values.iter().min().expect("a diagram has at least two regions");
        let max = *values.iter().max().expect("a diagram has at least two regions");
        let chi = (min - 1..=max).map(|k| chi_above(diagram, &values, k)).collect();
        let mut crossing_indices: Vec<i64> =
            (0..diagram.crossing_count()).map(|c| diagram.crossing_index(&values, c)).collect();
        crossing_indices.sort_unstable();
        Ok(Self {
            surface_chi: diagram.surface_chi(),
            lowest: min - 1,
            chi,
            crossing_indices,
        })
    }

    pub fn surface_chi(&self) -> i64 {
        self.surface_chi
    }

    /// Stored levels, lowest and highest.
    pub fn window(&self) -> (HalfInt, HalfInt) {
        (
            HalfInt::above(self.lowest),
            HalfInt::above(self.lowest + self.chi.len() as i64 - 1),
        )
    }

    /// `χ(S_j)`: `χ(S)` below the window, `0` above it.
    pub fn chi_at(&self, j: HalfInt) -> Result<i64, DiagramError> {
        Ok(self.chi_floor(check_level(j)?))
    }

    fn chi_floor(&self, k: i64) -> i64 {
        if k < self.lowest {
            self.surface_chi
        } else {
            self.chi.get((k - self.lowest) as usize).copied().unwrap_or(0)
        }
    }

    fn a_floor(&self, k: i64) -> i64 {
        let correction = if k < 0 { self.surface_chi } else { 0 };
        self.chi_floor(k) - correction
    }

    /// `a_j = χ(S_j) - [j < 0]·χ(S)`.
    pub fn a_at(&self, j: HalfInt) -> Result<i64, DiagramError> {
        Ok(self.a_floor(check_level(j)?))
    }

    /// Nonzero `a_j` in ascending `j`.
    pub fn a_terms(&self) -> impl Iterator<Item = (HalfInt, i64)> + '_ {
        (self.lowest..self.lowest + self.chi.len() as i64)
            .map(|k| (HalfInt::above(k), self.a_floor(k)))
            .filter(|(_, a)| *a != 0)
    }

    /// Sorted crossing indices.
    pub fn crossing_indices(&self) -> &[i64] {
        &self.crossing_indices
    }

    /// Sum of `a_j - a_{j+1}` across the window and one level past each end.
    pub fn telescoped(&self) -> i64 {
        (self.lowest - 1..=self.lowest + self.chi.len() as i64)
            .map(|k| self.a_floor(k) - self.a_floor(k + 1))
            .sum()
    }
}

/// The two moments of the smoothed index under Euler integration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EulerMoments {
    /// `∫ ind dχ = Σ i·χ_i`
    pub first: i64,
    /// `∫ ind² dχ = Σ i²·χ_i`
    pub second: i64,
}

/// `χ({ind_Γ̃ = i})` for each integer level of the smoothed curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SmoothedProfile {
    level_chi: BTreeMap<i64, i64>,
}

impl SmoothedProfile {
    /// Level Euler characteristics from the superlevel profile,
    /// `a_{i-1/2} - a_{i+1/2} + δ_{i,0}·χ(S)`.
    pub fn from_profile(profile: &SubsurfaceProfile) -> Self {
        let lo = profile.lowest + 1;
        let hi = profile.lowest + profile.chi.len() as i64 - 1;
        let mut level_chi = BTreeMap::new();
        for i in lo.min(0)..=hi.max(0) {
            let delta = if i == 0 { profile.surface_chi } else { 0 };
            level_chi.insert(i, profile.a_floor(i - 1) - profile.a_floor(i) + delta);
        }
        Self { level_chi }
    }

    /// Level Euler characteristics read off the smoothing directly: the level
    /// set `{ind_Γ̃ = i}` is the union of the regions of index `i`, joined by
    /// one band through every crossing of index `i`.
    pub fn from_smoothing(diagram: &CurveDiagram, ind: &IndexFunction) -> Result<Self, DiagramError> {
        let values = ind.integer_values()?;
        let mut level_chi: BTreeMap<i64, i64> = BTreeMap::new();
        for (region, &v) in diagram.regions().iter().zip(&values) {
            *level_chi.entry(v).or_default() += region.chi();
        }
        for c in 0..diagram.crossing_count() {
            *level_chi.entry(diagram.crossing_index(&values, c)).or_default() -= 1;
        }
        Ok(Self { level_chi })
    }

    pub fn from_levels<I: IntoIterator<Item = (i64, i64)>>(levels: I) -> Self {
        Self {
            level_chi: levels.into_iter().collect(),
        }
    }

    pub fn level_chi(&self, i: i64) -> i64 {
        self.level_chi.get(&i).copied().unwrap_or(0)
    }

    /// Levels with nonzero Euler characteristic, ascending.
    pub fn levels(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.level_chi.iter().filter(|(_, &c)| c != 0).map(|(&i, &c)| (i, c))
    }

    pub fn total(&self) -> i64 {
        self.level_chi.values().sum()
    }

    pub fn moments(&self) -> EulerMoments {
        let (first, second) = self
            .levels()
            .fold((0, 0), |(m1, m2), (i, c)| (m1 + i * c, m2 + i * i * c));
        EulerMoments { first, second }
    }
}

impl PartialEq<SmoothedProfile> for &SmoothedProfile {
    fn eq(&self, other: &SmoothedProfile) -> bool {
        self.levels().eq(other.levels())
    }
}
