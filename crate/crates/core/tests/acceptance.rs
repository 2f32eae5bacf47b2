//! One line per acceptance criterion, written straight to stderr so it shows
//! without `--nocapture`.

mod common;

use std::io::Write;

use num_traits::ToPrimitive;

use qgb::diagram::{CurveDiagram, SmoothedProfile};
use qgb::fixtures::{circle_torus, diagram_fixture, figure8_sphere_param, great_circle, latitude, DEFAULT_ALPHA};
use qgb::geometry::{numeric_i1, numeric_jplus, CurveAnalysis, QuadConfig};
use qgb::invariants::{
    change_base, compare_paths, full_report, iq_rational_eval, InvariantError, InvariantReport,
};
use qgb::moves::{
    bigon_death, birth_sites, find_bigons, find_triangles, tangency_birth_with_lens, triple_move, MoveError, MoveSite,
    TangencyKind,
};
use qgb::{frac, rat, HalfLaurent, Rational};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn from_failures(failures: Vec<String>, summary: String) -> Self {
        let pass = failures.is_empty();
        let detail = if pass {
            summary
        } else {
            format!("{summary}; {} failure(s), first: {}", failures.len(), failures[0])
        };
        Self { pass, detail }
    }
}

fn report(d: &CurveDiagram, base: usize) -> InvariantReport {
    full_report(d, base).unwrap()
}

fn fixture(name: &str) -> CurveDiagram {
    diagram_fixture(name).unwrap().diagram()
}

fn poly(terms: &[(i64, Rational)]) -> HalfLaurent {
    HalfLaurent::from_terms(terms.iter().cloned())
}

fn criterion_1() -> Outcome {
    let mut f = Vec::new();
    let mut expect = |what: &str, ok: bool| {
        if !ok {
            f.push(what.to_string());
        }
    };
    let half = frac(1, 2);

    let c = report(&fixture("circle_sphere"), fixture("circle_sphere").base());
    expect("circle_sphere I_q", c.iq == poly(&[(1, rat(1))]));
    expect("circle_sphere rot", c.rotation.residue() == 1 && c.rotation.modulus == 2);
    for j in [&c.jplus, &c.jminus, &c.sjplus] {
        expect("circle_sphere J", j.as_ref().ok() == Some(&half));
    }

    let d = fixture("figure8_sphere");
    let e = report(&d, d.base());
    expect("figure8 I_q", e.iq == poly(&[(1, half.clone()), (-1, -half.clone())]));
    expect("figure8 I_1", e.i1 == 0);
    expect("figure8 I_1'", e.i1_prime == half);
    expect("figure8 rot", e.rotation.residue() == 0 && e.rotation.modulus == 2);
    expect("figure8 J+", e.jplus.as_ref().ok() == Some(&rat(0)));
    expect("figure8 J-", e.jminus.as_ref().ok() == Some(&rat(-1)));
    expect("figure8 SJ+", e.sjplus.as_ref().ok() == Some(&rat(0)));

    let t = fixture("circle_torus");
    let r = report(&t, t.base());
    expect("circle_torus I_q", r.iq == poly(&[(1, rat(1))]));
    expect("circle_torus rot", r.rotation.value == 1 && r.rotation.modulus == 0);
    expect("circle_torus J+", r.jplus == Err(InvariantError::ChiZero));

    let ind = d.index_function(d.base()).unwrap();
    let plus_loop = (0..d.region_count()).find(|&b| ind.value(b) == rat(1)).unwrap();
    let p = report(&d, plus_loop);
    expect("figure8 +1 loop I_q", p.iq == poly(&[(-1, frac(-3, 2)), (-3, frac(-1, 2))]));
    expect("figure8 +1 loop J+", p.jplus.as_ref().ok() == Some(&rat(0)));
    Outcome::from_failures(f, "four fixtures exact".into())
}

fn criterion_2() -> Outcome {
    let mut f = Vec::new();
    let (mut random, mut based) = (0, 0);
    let corpus = common::corpus(110);
    let trivial = corpus.len() - common::random_corpus(110).len();
    for (k, d) in corpus.iter().enumerate() {
        if k >= trivial {
            random += 1;
        }
        for b in 0..d.region_count() {
            based += 1;
            let c = compare_paths(d, b).unwrap();
            if !c.passes() {
                f.push(format!("{} base {b}", d.code()));
            }
        }
    }
    if random < 200 {
        f.push(format!("only {random} random diagrams"));
    }
    Outcome::from_failures(f, format!("{random} random diagrams, {based} based diagrams, mismatches 0"))
}

fn criterion_3() -> Outcome {
    let mut f = Vec::new();
    let corpus = common::corpus(110);
    for d in &corpus {
        let chi = d.surface_chi();
        let n = d.crossing_count() as i64;
        let reports: Vec<_> = (0..d.region_count()).map(|b| report(d, b)).collect();
        for (b, r) in reports.iter().enumerate() {
            let ind = d.index_function(b).unwrap();
            let s = SmoothedProfile::from_smoothing(d, &ind).unwrap();
            let first: i64 = s.levels().map(|(i, c)| i * c).sum();
            let second: i64 = s.levels().map(|(i, c)| i * i * c).sum();
            let total: i64 = s.levels().map(|(_, c)| c).sum();
            let tag = format!("{} base {b}", d.code());
            if r.iq.value_at_1() != rat(first) {
                f.push(format!("value_at_1 {tag}"));
            }
            if r.iq.derivative_at_1() != frac(-n, 2) + frac(second, 2) {
                f.push(format!("derivative_at_1 {tag}"));
            }
            if !r.iq.value_at_1().is_integer() || rat(r.i1) != r.iq.value_at_1() {
                f.push(format!("I_1 integer {tag}"));
            }
            if total != chi {
                f.push(format!("sum level chi {tag}"));
            }
            if chi != 0 && r.jplus != reports[0].jplus {
                f.push(format!("J+ base dependence {tag}"));
            }
            for (b2, r2) in reports.iter().enumerate() {
                let c = (-ind.value(b2)).to_integer().to_i64().unwrap();
                if change_base(&r.iq, c, chi) != r2.iq {
                    f.push(format!("change_base {tag} -> {b2}"));
                }
            }
        }
    }
    Outcome::from_failures(f, format!("{} diagrams, all base pairs", corpus.len()))
}

fn criterion_4() -> Outcome {
    let mut f = Vec::new();
    let mut applied = 0;
    for d in common::random_corpus(60) {
        let before = report(&d, d.base());
        let jp = |r: &InvariantReport| r.jplus.clone().unwrap();
        for site in find_triangles(&d) {
            let MoveSite::Triangle { region } = site else { continue };
            let after = report(&triple_move(&d, region).unwrap(), d.base());
            applied += 1;
            if jp(&after) != jp(&before) {
                f.push(format!("triple dJ+ on {}", d.code()));
            }
            if !after.rotation.equivalent(&before.rotation) {
                f.push(format!("triple rot on {}", d.code()));
            }
        }
        for region in 0..d.region_count() {
            for site in birth_sites(&d, region).into_iter().take(2) {
                let out = match tangency_birth_with_lens(&d, &site) {
                    Ok(o) => o,
                    Err(MoveError::PlanRequired { .. }) => continue,
                    Err(e) => {
                        f.push(format!("birth rejected: {e}"));
                        continue;
                    }
                };
                applied += 1;
                let after = report(&out.diagram, out.diagram.base());
                let want = if site.kind == TangencyKind::Direct { rat(2) } else { rat(0) };
                if jp(&after) - jp(&before) != want {
                    f.push(format!("birth {:?} dJ+ on {}", site.kind, d.code()));
                }
                if !after.rotation.equivalent(&before.rotation) {
                    f.push(format!("birth rot on {}", d.code()));
                }
                let back = bigon_death(&out.diagram, out.lens).unwrap();
                if back.canonicalize() != d.canonicalize() {
                    f.push(format!("round trip on {}", d.code()));
                }
            }
        }
        for site in find_bigons(&d) {
            let MoveSite::Bigon { region, .. } = site else { continue };
            let after = report(&bigon_death(&d, region).unwrap(), 0);
            applied += 1;
            if !after.rotation.equivalent(&before.rotation) {
                f.push(format!("death rot on {}", d.code()));
            }
        }
    }
    if applied < 200 {
        f.push(format!("only {applied} applications"));
    }
    Outcome::from_failures(f, format!("{applied} move applications, violations 0"))
}

fn criterion_5() -> Outcome {
    let cfg = QuadConfig::default();
    let mut f = Vec::new();
    let mut worst = 0.0_f64;
    let cases = [
        (circle_torus(0.2).unwrap(), 1e-6),
        (latitude(DEFAULT_ALPHA).unwrap(), 5e-3),
        (great_circle(), 5e-3),
        (figure8_sphere_param(), 1e-2),
    ];
    for (fx, tol) in &cases {
        let name = fx.curve.name();
        let a = CurveAnalysis::new(&fx.curve, &fx.base, &cfg).unwrap();
        let ex = a.extraction();
        let exact = report(&ex.diagram, ex.base);
        for q in [0.5, 2.0, 3.0] {
            let diff = (a.iq(q).unwrap().value - exact.iq.eval_real(q).unwrap()).abs();
            worst = worst.max(diff);
            if diff > *tol {
                f.push(format!("{name} I_q at q={q}: diff {diff:e}"));
            }
        }
        let i1 = numeric_i1(&fx.curve, &fx.base, &cfg).unwrap().value;
        if (i1 - exact.i1 as f64).abs() > *tol {
            f.push(format!("{name} I_1 {i1}"));
        }
        if let Ok(j) = &exact.jplus {
            let num = numeric_jplus(&fx.curve, &fx.base, &cfg).unwrap().value;
            if (num - j.to_f64().unwrap()).abs() > 5e-3 {
                f.push(format!("{name} J+ {num}"));
            }
        }
    }
    Outcome::from_failures(f, format!("4 curves, q in {{1/2, 2, 3}}, worst diff {worst:.2e}"))
}

fn criterion_6() -> Outcome {
    let cfg = QuadConfig::default();
    let mut f = Vec::new();
    let mut worst = 0.0_f64;
    let mut levels = 0;
    for fx in [latitude(DEFAULT_ALPHA).unwrap(), great_circle(), figure8_sphere_param()] {
        let a = CurveAnalysis::new(&fx.curve, &fx.base, &cfg).unwrap();
        for j in a.occupied_levels() {
            let c = a.level_check(j).unwrap();
            let rel = (c.lhs - c.rhs.value).abs() / c.lhs.abs().max(1.0);
            worst = worst.max(rel);
            levels += 1;
            if rel > 1e-2 {
                f.push(format!("{} level {j}: rel {rel:e}", fx.curve.name()));
            }
        }
    }
    Outcome::from_failures(f, format!("{levels} occupied levels, worst relative error {worst:.2e}"))
}

fn criterion_7() -> Outcome {
    let mut f = Vec::new();
    let d = fixture("figure8_sphere");
    let r = report(&d, d.base());
    let v = iq_rational_eval(&r.iq, r.surface_chi, &frac(1, 2), 4.0).unwrap();
    if (v - 17.0 / 6.0).abs() > 1e-9 {
        f.push(format!("C = 1/2 at q = 4 gave {v}"));
    }
    let mut worst = 0.0_f64;
    for d in common::corpus(30) {
        let chi = d.surface_chi();
        let r = report(&d, d.base());
        for c in -3..=3 {
            let exact = change_base(&r.iq, c, chi);
            for q in [0.5, 2.0, 3.0, 4.0] {
                let want = exact.eval_real(q).unwrap();
                let got = iq_rational_eval(&r.iq, chi, &rat(c), q).unwrap();
                let rel = (got - want).abs() / want.abs().max(1.0);
                worst = worst.max(rel);
                if rel > 1e-12 {
                    f.push(format!("{} C={c} q={q}: {got} vs {want}", d.code()));
                }
            }
        }
    }
    Outcome::from_failures(f, format!("I_4 at C=1/2 = {v:.12}; integer C worst relative {worst:.2e}"))
}

#[test]
fn acceptance_criteria() {
    let criteria: [fn() -> Outcome; 7] =
        [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7];
    let mut all = true;
    let mut stderr = std::io::stderr();
    for (k, c) in criteria.iter().enumerate() {
        let o = c();
        all &= o.pass;
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        writeln!(stderr, "criterion {}: {verdict} ({})", k + 1, o.detail).unwrap();
    }
    assert!(all, "acceptance criteria failed");
}
