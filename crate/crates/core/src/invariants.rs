//! `I_q`, rotation number and the `J` invariants.
//!
//! `I_q` is computed exactly in two ways: from the superlevel profile
//!
//! ```text
//! I_q = Σ_j a_j q^j - 1/2 Σ_d (q^(ind(d)+1/2) - q^(ind(d)-1/2))
//! ```
//!
//! and by Euler integration over the smoothed curve
//!
//! ```text
//! I_q = -1/2 Σ_d (q^(1/2) - q^(-1/2)) q^ind(d) + Σ_i χ_i (q^i - 1)/(q^(1/2) - q^(-1/2))
//! ```
//!
//! where `χ_i` is the Euler characteristic of the level `{ind_Γ̃ = i}`.

use std::fmt;

use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::diagram::{CurveDiagram, DiagramError, SmoothedProfile, SubsurfaceProfile};
use crate::laurent::{HalfLaurent, LaurentError};
use crate::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantError {
    #[error("undefined (chi = 0)")]
    ChiZero,
    #[error("not a sphere (chi = {0})")]
    NotSphere(i64),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

fn crossing_term(crossing_indices: &[i64]) -> HalfLaurent {
    let half = Rational::new(1.into(), 2.into());
    let mut sum = HalfLaurent::zero();
    for &c in crossing_indices {
        sum = sum + HalfLaurent::half_difference().mul_monomial(&half, 2 * c);
    }
    -sum
}

/// `I_q` from the coefficients `a_j = χ(S_j) - [j < 0]·χ(S)`.
pub fn iq_topological(profile: &SubsurfaceProfile) -> HalfLaurent {
    let levels = HalfLaurent::from_terms(profile.a_terms().map(|(j, a)| (j.twice(), rat(a))));
    levels + crossing_term(profile.crossing_indices())
}

/// `I_q` by Euler integration over the smoothed curve.
pub fn iq_euler(smoothed: &SmoothedProfile, crossing_indices: &[i64]) -> HalfLaurent {
    let mut levels = HalfLaurent::zero();
    for (i, chi) in smoothed.levels() {
        levels = levels + HalfLaurent::geom_div(i).mul_monomial(&rat(chi), 0);
    }
    levels + crossing_term(crossing_indices)
}

/// `I_q` for the base moved to a region where the old index is `-c`, so that
/// the new index is the old one plus `c`: `q^c·I_q + χ(S)·(q^c - 1)/(q^(1/2) - q^(-1/2))`.
pub fn change_base(iq: &HalfLaurent, c: i64, chi_s: i64) -> HalfLaurent {
    iq.mul_monomial(&Rational::one(), 2 * c) + HalfLaurent::geom_div(c).mul_monomial(&rat(chi_s), 0)
}

/// Rotation number as a representative and a modulus; modulus 0 means exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RotationNumber {
    pub value: i64,
    pub modulus: u64,
}

impl RotationNumber {
    pub fn residue(&self) -> i64 {
        if self.modulus == 0 {
            self.value
        } else {
            self.value.rem_euclid(self.modulus as i64)
        }
    }

    /// Equality in `Z / modulus`.
    pub fn equivalent(&self, other: &RotationNumber) -> bool {
        self.modulus == other.modulus && self.residue() == other.residue()
    }
}

impl fmt::Display for RotationNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} (mod {})", self.value, self.modulus)
        }
    }
}

pub fn rotation_number(i1: i64, chi_s: i64) -> RotationNumber {
    RotationNumber {
        value: i1,
        modulus: chi_s.unsigned_abs(),
    }
}

/// `J⁺ = I₁²/χ(S) - 2I₁′ + 1`.
pub fn jplus(i1: &Rational, i1_prime: &Rational, chi_s: i64) -> Result<Rational, InvariantError> {
    if chi_s == 0 {
        return Err(InvariantError::ChiZero);
    }
    Ok(i1 * i1 / rat(chi_s) - rat(2) * i1_prime + Rational::one())
}

/// `J⁻ = J⁺ - n`.
pub fn jminus(jplus: &Rational, n: usize) -> Rational {
    jplus - rat(n as i64)
}

/// `J⁻ = 1 - ∫ ι₀² dχ` with `ι₀ = ind + C₀` normalized by `∫ ι₀ dχ = 0`.
pub fn viro_jminus(smoothed: &SmoothedProfile, m1: &Rational, chi_s: i64) -> Result<Rational, InvariantError> {
    if chi_s == 0 {
        return Err(InvariantError::ChiZero);
    }
    let c0 = -m1 / rat(chi_s);
    let integral = smoothed.levels().fold(Rational::zero(), |acc, (i, chi)| {
        let v = rat(i) + &c0;
        acc + &v * &v * rat(chi)
    });
    Ok(Rational::one() - integral)
}

/// `SJ⁺`, defined on the sphere, where it is `J⁺`.
pub fn sjplus(jplus: &Rational, chi_s: i64) -> Result<Rational, InvariantError> {
    if chi_s != 2 {
        return Err(InvariantError::NotSphere(chi_s));
    }
    Ok(jplus.clone())
}

fn check_q(q: f64) -> Result<(), InvariantError> {
    if q > 0.0 {
        Ok(())
    } else {
        Err(LaurentError::NonPositiveQ(q).into())
    }
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `I_q` at real `q` for the index shifted by a rational `c`, by the shift law
/// `q^c·I_q(q) + χ(S)·(q^c - 1)/(q^(1/2) - q^(-1/2))`. At `q = 1` the limit
/// `I₁ + c·χ(S)` is returned.
pub fn iq_rational_eval(iq: &HalfLaurent, chi_s: i64, c: &Rational, q: f64) -> Result<f64, InvariantError> {
    check_q(q)?;
    let c = to_f64(c);
    if q == 1.0 {
        return Ok(to_f64(&iq.value_at_1()) + c * chi_s as f64);
    }
    let qc = q.powf(c);
    Ok(qc * iq.eval_real(q)? + chi_s as f64 * (qc - 1.0) / (q.sqrt() - 1.0 / q.sqrt()))
}

/// The same value evaluated directly from the Euler-integral form with the
/// shifted index `ι = ind + c` on every level and crossing.
pub fn iq_rational_eval_euler(
    smoothed: &SmoothedProfile,
    crossing_indices: &[i64],
    c: &Rational,
    q: f64,
) -> Result<f64, InvariantError> {
    check_q(q)?;
    let c = to_f64(c);
    if q == 1.0 {
        return Ok(smoothed.levels().map(|(i, chi)| (i as f64 + c) * chi as f64).sum());
    }
    let d = q.sqrt() - 1.0 / q.sqrt();
    let crossings: f64 = crossing_indices.iter().map(|&i| q.powf(i as f64 + c)).sum();
    let levels: f64 = smoothed
        .levels()
        .map(|(i, chi)| chi as f64 * (q.powf(i as f64 + c) - 1.0) / d)
        .sum();
    Ok(-0.5 * d * crossings + levels)
}

/// Everything computed for one based diagram.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport {
    pub base: usize,
    pub surface_chi: i64,
    pub crossing_count: usize,
    pub iq: HalfLaurent,
    pub i1: i64,
    pub i1_prime: Rational,
    pub rotation: RotationNumber,
    pub jplus: Result<Rational, InvariantError>,
    pub jminus: Result<Rational, InvariantError>,
    pub sjplus: Result<Rational, InvariantError>,
    pub smoothed: SmoothedProfile,
}

/// Both exact routes for one base.
#[derive(Debug, Clone, PartialEq)]
pub struct PathComparison {
    pub base: usize,
    pub iq_topological: HalfLaurent,
    pub iq_euler: HalfLaurent,
    pub jminus: Option<Rational>,
    pub viro_jminus: Option<Rational>,
}

impl PathComparison {
    pub fn passes(&self) -> bool {
        self.iq_topological == self.iq_euler && self.jminus == self.viro_jminus
    }
}

struct Profiles {
    profile: SubsurfaceProfile,
    smoothed: SmoothedProfile,
}

fn profiles(diagram: &CurveDiagram, base: usize) -> Result<Profiles, InvariantError> {
    let ind = diagram.index_function(base)?;
    let profile = SubsurfaceProfile::new(diagram, &ind)?;
    let smoothed = SmoothedProfile::from_smoothing(diagram, &ind)?;
    let derived = SmoothedProfile::from_profile(&profile);
    if smoothed != derived {
        return Err(InvariantError::CrossCheck(format!(
            "level Euler characteristics differ between the smoothing {:?} and the superlevel profile {:?}",
            smoothed.levels().collect::<Vec<_>>(),
            derived.levels().collect::<Vec<_>>()
        )));
    }
    Ok(Profiles { profile, smoothed })
}

/// Computes both exact routes for `I_q` and `J⁻` at one base.
pub fn compare_paths(diagram: &CurveDiagram, base: usize) -> Result<PathComparison, InvariantError> {
    let Profiles { profile, smoothed } = profiles(diagram, base)?;
    let iq_top = iq_topological(&profile);
    let iq_eul = iq_euler(&smoothed, profile.crossing_indices());
    let chi = diagram.surface_chi();
    let (jm, viro) = if chi == 0 {
        (None, None)
    } else {
        let jp = jplus(&iq_top.value_at_1(), &iq_top.derivative_at_1(), chi)?;
        let m1 = rat(smoothed.moments().first);
        (
            Some(jminus(&jp, diagram.crossing_count())),
            Some(viro_jminus(&smoothed, &m1, chi)?),
        )
    };
    Ok(PathComparison {
        base,
        iq_topological: iq_top,
        iq_euler: iq_eul,
        jminus: jm,
        viro_jminus: viro,
    })
}

/// Full report. Fails with [`InvariantError::CrossCheck`] if the two exact
/// routes for `I_q` disagree.
pub fn full_report(diagram: &CurveDiagram, base: usize) -> Result<InvariantReport, InvariantError> {
    let Profiles { profile, smoothed } = profiles(diagram, base)?;
    let iq = iq_topological(&profile);
    let euler = iq_euler(&smoothed, profile.crossing_indices());
    if iq != euler {
        return Err(InvariantError::CrossCheck(format!("I_q by subsurfaces is {iq}, by Euler integration {euler}")));
    }
    let value = iq.value_at_1();
    if !value.is_integer() {
        return Err(InvariantError::CrossCheck(format!("I_1 = {value} is not an integer")));
    }
    let i1 = value
        .to_integer()
        .to_i64()
        .ok_or_else(|| InvariantError::CrossCheck("I_1 out of range".into()))?;
    let i1_prime = iq.derivative_at_1();
    let chi = diagram.surface_chi();
    let n = diagram.crossing_count();
    let jp = jplus(&value, &i1_prime, chi);
    Ok(InvariantReport {
        base,
        surface_chi: chi,
        crossing_count: n,
        rotation: rotation_number(i1, chi),
        i1,
        jminus: jp.as_ref().map(|j| jminus(j, n)).map_err(Clone::clone),
        sjplus: jp.as_ref().map_err(Clone::clone).and_then(|j| sjplus(j, chi)),
        jplus: jp,
        iq,
        i1_prime,
        smoothed,
    })
}

/// `I_q` at the diagram's own base.
pub fn iq(diagram: &CurveDiagram) -> Result<HalfLaurent, InvariantError> {
    Ok(full_report(diagram, diagram.base())?.iq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;
    use crate::frac;

    fn fig8() -> CurveDiagram {
        parse_diagram("curve 1+ 1+\nbase 0").unwrap()
    }

    fn half_poly(terms: &[(i64, i64, i64)]) -> HalfLaurent {
        HalfLaurent::from_terms(terms.iter().map(|&(e, n, d)| (e, frac(n, d))))
    }

    #[test]
    fn figure_eight_both_routes() {
        let want = half_poly(&[(-1, -1, 2), (1, 1, 2)]);
        let d = fig8();
        let cmp = compare_paths(&d, 0).unwrap();
        assert_eq!(cmp.iq_topological, want);
        assert_eq!(cmp.iq_euler, want);
        assert_eq!(cmp.jminus, Some(rat(-1)));
        assert!(cmp.passes());
    }

    #[test]
    fn euler_route_by_hand() {
        let s = SmoothedProfile::from_levels([(0, 1), (1, 1)]);
        assert_eq!(iq_euler(&s, &[]), half_poly(&[(1, 1, 1)]));
    }

    #[test]
    fn base_change_examples() {
        let fig = half_poly(&[(-1, -1, 2), (1, 1, 2)]);
        assert_eq!(change_base(&fig, -1, 2), half_poly(&[(-3, -1, 2), (-1, -3, 2)]));
        assert_eq!(change_base(&fig, 0, 2), fig);
        let circle = half_poly(&[(1, 1, 1)]);
        assert_eq!(change_base(&circle, 1, 2), half_poly(&[(1, 2, 1), (3, 1, 1)]));
        // base inside the +1 loop
        assert_eq!(iq(&fig8().with_base(2).unwrap()).unwrap(), change_base(&fig, -1, 2));
    }

    #[test]
    fn j_values() {
        assert_eq!(jplus(&rat(1), &frac(1, 2), 2).unwrap(), frac(1, 2));
        assert_eq!(jplus(&rat(0), &frac(1, 2), 2).unwrap(), rat(0));
        assert_eq!(jplus(&rat(1), &frac(1, 2), 0), Err(InvariantError::ChiZero));
        assert_eq!(jminus(&rat(0), 1), rat(-1));
        let circle = SmoothedProfile::from_levels([(0, 1), (1, 1)]);
        assert_eq!(viro_jminus(&circle, &rat(1), 2).unwrap(), frac(1, 2));
        let fig = SmoothedProfile::from_levels([(-1, 1), (1, 1)]);
        assert_eq!(viro_jminus(&fig, &rat(0), 2).unwrap(), rat(-1));
        assert_eq!(sjplus(&rat(0), 0), Err(InvariantError::NotSphere(0)));
    }

    #[test]
    fn rotation_numbers() {
        let r = rotation_number(3, -2);
        assert_eq!(r.modulus, 2);
        assert!(r.equivalent(&rotation_number(1, 2)));
        assert_eq!(rotation_number(1, 0).to_string(), "1");
        assert_eq!(rotation_number(0, 2).to_string(), "0 (mod 2)");
    }

    #[test]
    fn reports() {
        let r = full_report(&fig8(), 0).unwrap();
        assert_eq!(r.i1, 0);
        assert_eq!(r.i1_prime, frac(1, 2));
        assert_eq!(r.sjplus, Ok(rat(0)));
        let torus = parse_diagram("surface genus=1\ncurve -\nregion 0 genus=1 cycles=1\nregion 1 genus=0 cycles=0\nbase 0\n")
            .unwrap();
        let r = full_report(&torus, 0).unwrap();
        assert_eq!(r.iq, half_poly(&[(1, 1, 1)]));
        assert_eq!(r.rotation, RotationNumber { value: 1, modulus: 0 });
        assert_eq!(r.jplus, Err(InvariantError::ChiZero));
        assert_eq!(r.jminus, Err(InvariantError::ChiZero));
    }

    #[test]
    fn rational_shift() {
        let d = fig8();
        let r = full_report(&d, 0).unwrap();
        let v = iq_rational_eval(&r.iq, 2, &frac(1, 2), 4.0).unwrap();
        assert!((v - 17.0 / 6.0).abs() < 1e-12);
        let ps = iq_rational_eval_euler(&r.smoothed, &[0], &frac(1, 2), 4.0).unwrap();
        assert!((v - ps).abs() < 1e-12);
        assert!((iq_rational_eval(&r.iq, 2, &rat(0), 4.0).unwrap() - 0.75).abs() < 1e-15);
        assert_eq!(iq_rational_eval(&r.iq, 2, &frac(1, 2), 1.0).unwrap(), 1.0);
        assert!(iq_rational_eval(&r.iq, 2, &rat(0), -1.0).is_err());
    }
}
