mod common;

use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

use qgb::diagram::{CurveDiagram, SmoothedProfile, SubsurfaceProfile};
use qgb::invariants::{change_base, compare_paths, full_report, iq_euler, iq_topological, viro_jminus};
use qgb::moves::random_diagram;
use qgb::{frac, rat, HalfInt, Rational};

fn check_identities(d: &CurveDiagram) {
    let chi = d.surface_chi();
    let n = d.crossing_count() as i64;
    let reports: Vec<_> = (0..d.region_count()).map(|b| full_report(d, b).unwrap()).collect();
    for (b, r) in reports.iter().enumerate() {
        let ind = d.index_function(b).unwrap();
        let profile = SubsurfaceProfile::new(d, &ind).unwrap();
        let smoothed = SmoothedProfile::from_smoothing(d, &ind).unwrap();
        assert_eq!(iq_topological(&profile), iq_euler(&smoothed, profile.crossing_indices()), "{d}\nbase {b}");

        let m = smoothed.moments();
        assert_eq!(r.iq.value_at_1(), rat(m.first));
        assert_eq!(r.iq.derivative_at_1(), frac(-n, 2) + frac(m.second, 2));
        assert_eq!(smoothed.total(), chi);
        assert!(r.iq.value_at_1().is_integer());
        let two = rat(2);
        assert!(r.iq.terms().all(|(_, c)| (c * &two).is_integer()));

        if chi != 0 {
            let jp = r.jplus.clone().unwrap();
            assert_eq!(jp, reports[0].jplus.clone().unwrap(), "J+ depends on the base");
            assert_eq!(viro_jminus(&smoothed, &rat(m.first), chi).unwrap(), jp - rat(n));
        }

        let (lo, hi) = profile.window();
        assert_eq!(d.subsurface_chi(&ind, HalfInt::from_twice(lo.twice() - 2)).unwrap(), chi);
        assert_eq!(d.subsurface_chi(&ind, HalfInt::from_twice(hi.twice() + 2)).unwrap(), 0);

        for (b2, r2) in reports.iter().enumerate() {
            let c = -ind.value(b2);
            assert!(c.is_integer());
            let c = c.to_integer().to_i64().unwrap();
            assert_eq!(change_base(&r.iq, c, chi), r2.iq, "base {b} -> {b2}");
            let shifted = ind.shifted(&rat(c));
            for reg in 0..d.region_count() {
                assert_eq!(shifted.value(reg), d.index_function(b2).unwrap().value(reg));
            }
        }
    }
}

#[test]
fn corpus_satisfies_every_identity() {
    let corpus = common::corpus(110);
    assert!(corpus.len() >= 200);
    for d in &corpus {
        check_identities(d);
    }
}

#[test]
fn jump_rule_holds_on_every_arc() {
    for d in common::corpus(60) {
        let ind = d.index_function(d.base()).unwrap();
        for a in 0..d.arc_count() {
            let l = ind.value(d.region_of(qgb::ArcSide::left(a)));
            let r = ind.value(d.region_of(qgb::ArcSide::right(a)));
            assert_eq!(l - r, Rational::one());
        }
        let (arcs, crossings) = d.arc_and_crossing_indices(&ind);
        assert_eq!(arcs.len(), d.arc_count());
        for (c, x) in crossings.iter().enumerate() {
            let mut corners: Vec<Rational> = d.corner_regions(c).iter().map(|&r| ind.value(r)).collect();
            corners.sort();
            let one = Rational::one();
            assert_eq!(corners, vec![x - &one, x.clone(), x.clone(), x + &one]);
        }
        assert!(ind.value(d.base()).is_zero());
    }
}

#[test]
fn chi_conservation_on_the_corpus() {
    for d in common::corpus(60) {
        let regions: i64 = d.regions().iter().map(|r| 2 - 2 * i64::from(r.genus) - r.cycles.len() as i64).sum();
        let n = d.crossing_count() as i64;
        if n == 0 {
            let total: i64 = d.regions().iter().map(|r| r.chi()).sum();
            assert_eq!(total, d.surface_chi());
        } else {
            assert_eq!(regions - n, d.surface_chi());
        }
        let carrier = n - 2 * n + d.cycles().len() as i64;
        assert_eq!(carrier, d.carrier_chi());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_diagrams_agree_across_paths(n in 0usize..=6, genus in prop::sample::select(vec![0u32, 1, 2]), seed in any::<u64>()) {
        let d = random_diagram(n, genus, seed).unwrap();
        for b in 0..d.region_count() {
            prop_assert!(compare_paths(&d, b).unwrap().passes());
        }
        check_identities(&d);
    }
}
