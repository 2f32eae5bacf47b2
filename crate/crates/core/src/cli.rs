//! The `qgb` command line.
//!
//! Diagram arguments are file paths, `fixture:<name>` for a built-in diagram,
//! or `random:<crossings>:<genus>:<seed>`. Exit codes: 0 success, 1 input or
//! usage error, 2 homologically nontrivial curve, 3 failed cross-check.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::diagram::{parse_diagram, render_diagram, CurveDiagram, DiagramError};
use crate::fixtures::{self, ParametricFixture};
use crate::geometry::{CurveAnalysis, Estimate, GeometryError, QuadConfig, Surface, Vec3};
use crate::invariants::{compare_paths, full_report, InvariantError, InvariantReport};
use crate::moves::{apply_move, parse_site, random_diagram, MoveError};
use crate::Rational;

#[derive(Debug, Parser)]
#[command(name = "qgb", version, about = "Quantum Gauss-Bonnet invariant of curves on surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a diagram file and report its regions.
    Validate {
        path: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// I_q, rotation number and the J invariants.
    Invariant {
        path: String,
        /// Region to use as base instead of the file's.
        #[arg(long)]
        base: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Both exact routes for I_q and J- at every base region.
    Compare {
        path: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Apply one move and report the change of J+, n and rot.
    Move {
        path: String,
        /// bigon:<r>, triangle:<r> or birth:<r>:<pos>:<pos>:<direct|opposite>[:plan=...]
        #[arg(long)]
        site: String,
        /// Where to write the new diagram; stdout when absent.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Integral definition against the exact values on a parametric fixture.
    Numeric(NumericArgs),
    /// Generate a random homologically trivial diagram.
    Random {
        #[arg(long)]
        crossings: usize,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// List the built-in fixtures.
    Catalog {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct NumericArgs {
    #[arg(long)]
    pub fixture: String,
    /// Colatitude of the latitude fixture.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Radius of the torus circle.
    #[arg(long)]
    pub rho: Option<f64>,
    /// Base point `x,y,z` (torus: `x,y,0`); the fixture's when absent.
    #[arg(long, value_delimiter = ',', num_args = 3, allow_negative_numbers = true)]
    pub base: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 1.0, 2.0, 3.0])]
    pub q: Vec<f64>,
    /// Finest quadrature grids; each is also evaluated at half size.
    #[arg(long, value_delimiter = ',', default_values_t = [QuadConfig::default().grid])]
    pub grid: Vec<usize>,
    #[arg(long)]
    pub detect_grid: Option<usize>,
    /// Absolute tolerance for I_q, I_1 and J+; per fixture when absent.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Relative tolerance of the per-level Gauss-Bonnet checks.
    #[arg(long, default_value_t = 1e-2)]
    pub level_tol: f64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Nontrivial(String),
    CrossCheck(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Nontrivial(_) => 2,
            Failure::CrossCheck(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Nontrivial(m) | Failure::CrossCheck(m) => m,
        }
    }
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        match e {
            DiagramError::HomologicallyNontrivial { .. } => Failure::Nontrivial(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Diagram(d) => d.into(),
            InvariantError::CrossCheck(_) => Failure::CrossCheck(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<MoveError> for Failure {
    fn from(e: MoveError) -> Self {
        match e {
            MoveError::Diagram(d) => d.into(),
            MoveError::Topology(_) => Failure::CrossCheck(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::Diagram(d) => d.into(),
            GeometryError::Nontrivial(_) => Failure::Nontrivial(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Formats a real with 9 significant digits.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..9).contains(&exp) {
        let s = format!("{:.*}", (8 - exp) as usize, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.8e}")
    }
}

/// The value [`sig9`] prints, as a JSON number.
fn num(x: f64) -> Value {
    sig9(x).parse::<f64>().map(Value::from).unwrap_or(Value::Null)
}

fn rational_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

/// Loads a diagram from a path, `fixture:<name>` or `random:<n>:<genus>:<seed>`.
fn load(path: &str) -> Result<CurveDiagram, Failure> {
    if let Some(name) = path.strip_prefix("fixture:") {
        let f = fixtures::diagram_fixture(name).ok_or_else(|| {
            let names: Vec<&str> = fixtures::DIAGRAMS.iter().map(|f| f.name).collect();
            Failure::Input(format!("unknown fixture `{name}`; available: {}", names.join(", ")))
        })?;
        return parse_diagram(f.text).map_err(|e| Failure::Input(format!("{path}: {e}")));
    }
    if let Some(spec) = path.strip_prefix("random:") {
        let parts: Vec<&str> = spec.split(':').collect();
        let bad = || Failure::Input(format!("`{path}`: expected random:<crossings>:<genus>:<seed>"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let n = parts[0].parse().map_err(|_| bad())?;
        let g = parts[1].parse().map_err(|_| bad())?;
        let seed = parts[2].parse().map_err(|_| bad())?;
        return Ok(random_diagram(n, g, seed)?);
    }
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    parse_diagram(&text).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn emit(out: &mut dyn Write, format: Format, text: &str, value: Value) -> std::io::Result<()> {
    match format {
        Format::Text => out.write_all(text.as_bytes()),
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("serializable")),
    }
}

fn cmd_validate(path: &str, format: Format, out: &mut dyn Write) -> Outcome {
    let d = load(path)?;
    let trivial = d.is_homologically_trivial();
    let ind = d.index_function(d.base()).ok();
    let mut text = String::new();
    writeln!(text, "chi={}, regions={}", d.surface_chi(), d.region_count()).unwrap();
    writeln!(text, "crossings={}, boundary cycles={}, base={}", d.crossing_count(), d.cycles().len(), d.base()).unwrap();
    let mut regions = Vec::new();
    for (r, reg) in d.regions().iter().enumerate() {
        let cycles: Vec<String> = reg.cycles.iter().map(usize::to_string).collect();
        let index = ind.as_ref().map(|i| i.value(r));
        let shown = index.as_ref().map(|v| format!(" ind={v}")).unwrap_or_default();
        let sides: Vec<String> = reg
            .cycles
            .iter()
            .flat_map(|&c| d.cycles()[c].sides().iter().map(|s| s.to_string()))
            .collect();
        writeln!(
            text,
            "region {r}: genus={} cycles={} corners={} chi={}{shown} sides={}",
            reg.genus,
            cycles.join(","),
            d.region_corners(r),
            reg.chi(),
            sides.join(",")
        )
        .unwrap();
        regions.push(json!({
            "id": r,
            "genus": reg.genus,
            "cycles": reg.cycles,
            "corners": d.region_corners(r),
            "chi": reg.chi(),
            "index": index.as_ref().map(rational_json),
            "sides": sides,
        }));
    }
    writeln!(text, "{}", if trivial { "homologically trivial" } else { "homologically nontrivial" }).unwrap();
    let value = json!({
        "chi": d.surface_chi(),
        "crossings": d.crossing_count(),
        "base": d.base(),
        "regions": regions,
        "homologically_trivial": trivial,
    });
    emit(out, format, &text, value)?;
    Ok(if trivial { 0 } else { 2 })
}

fn optional(name: &str, v: &Result<Rational, InvariantError>, text: &mut String) -> Value {
    match v {
        Ok(r) => {
            writeln!(text, "{name} = {r}").unwrap();
            rational_json(r)
        }
        Err(e) => {
            writeln!(text, "{name}: {e}").unwrap();
            Value::Null
        }
    }
}

fn report_json(r: &InvariantReport, text: &mut String) -> Value {
    writeln!(text, "base = {}", r.base).unwrap();
    writeln!(text, "chi = {}", r.surface_chi).unwrap();
    writeln!(text, "crossings = {}", r.crossing_count).unwrap();
    writeln!(text, "iq = {}", r.iq).unwrap();
    writeln!(text, "i1 = {}", r.i1).unwrap();
    writeln!(text, "i1' = {}", r.i1_prime).unwrap();
    writeln!(text, "rot = {}", r.rotation).unwrap();
    let jplus = optional("jplus", &r.jplus, text);
    let jminus = optional("jminus", &r.jminus, text);
    let sjplus = optional("sjplus", &r.sjplus, text);
    let levels: Vec<String> = r.smoothed.levels().map(|(i, c)| format!("{i}:{c}")).collect();
    writeln!(text, "smoothed level chi = {{{}}}", levels.join(", ")).unwrap();
    let reason = |v: &Result<Rational, InvariantError>| v.as_ref().err().map(|e| e.to_string());
    json!({
        "base": r.base,
        "surface_chi": r.surface_chi,
        "crossing_count": r.crossing_count,
        "iq": r.iq.to_string(),
        "iq_terms": r.iq.terms().map(|(e, c)| json!([rational_json(&Rational::new(e.into(), 2.into())), rational_json(c)])).collect::<Vec<_>>(),
        "i1": r.i1,
        "i1_prime": rational_json(&r.i1_prime),
        "rotation": {"value": r.rotation.value, "modulus": r.rotation.modulus},
        "jplus": jplus,
        "jplus_reason": reason(&r.jplus),
        "jminus": jminus,
        "jminus_reason": reason(&r.jminus),
        "sjplus": sjplus,
        "sjplus_reason": reason(&r.sjplus),
        "smoothed_level_chi": r.smoothed.levels().map(|(i, c)| json!([i, c])).collect::<Vec<_>>(),
    })
}

fn cmd_invariant(path: &str, base: Option<usize>, format: Format, out: &mut dyn Write) -> Outcome {
    let mut d = load(path)?;
    if let Some(b) = base {
        d = d.with_base(b)?;
    }
    let r = full_report(&d, d.base())?;
    let mut text = String::new();
    let value = report_json(&r, &mut text);
    emit(out, format, &text, value)?;
    Ok(0)
}

fn cmd_compare(path: &str, format: Format, out: &mut dyn Write) -> Outcome {
    let d = load(path)?;
    if !d.is_homologically_trivial() {
        d.index_function(d.base())?;
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failures = 0;
    for b in 0..d.region_count() {
        let c = compare_paths(&d, b)?;
        let pass = c.passes();
        failures += usize::from(!pass);
        let jm = |v: &Option<Rational>| v.as_ref().map(|r| r.to_string()).unwrap_or_else(|| "undefined (chi = 0)".into());
        writeln!(
            text,
            "base {b}: iq_topological = {} | iq_euler = {} | jminus = {} | viro_jminus = {} | {}",
            c.iq_topological,
            c.iq_euler,
            jm(&c.jminus),
            jm(&c.viro_jminus),
            if pass { "PASS" } else { "FAIL" }
        )
        .unwrap();
        rows.push(json!({
            "base": b,
            "iq_topological": c.iq_topological.to_string(),
            "iq_euler": c.iq_euler.to_string(),
            "jminus": c.jminus.as_ref().map(rational_json),
            "viro_jminus": c.viro_jminus.as_ref().map(rational_json),
            "pass": pass,
        }));
    }
    let bases = d.region_count();
    let verdict = if failures == 0 { "PASS" } else { "FAIL" };
    writeln!(text, "{verdict} (both paths, {bases} bases)").unwrap();
    emit(out, format, &text, json!({"bases": rows, "pass": failures == 0}))?;
    Ok(if failures == 0 { 0 } else { 3 })
}

fn cmd_move(path: &str, site: &str, output: Option<&PathBuf>, format: Format, out: &mut dyn Write) -> Outcome {
    let d = load(path)?;
    let site = parse_site(&d, site)?;
    let before = full_report(&d, d.base())?;
    let moved = apply_move(&d, &site)?;
    let after = full_report(&moved, moved.base())?;
    let rendered = render_diagram(&moved);

    let delta_n = after.crossing_count as i64 - before.crossing_count as i64;
    let delta_j = match (&before.jplus, &after.jplus) {
        (Ok(a), Ok(b)) => Ok(b - a),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    let rot_kept = before.rotation.equivalent(&after.rotation);
    let mut text = String::new();
    writeln!(text, "# site {site}").unwrap();
    match &delta_j {
        Ok(v) => writeln!(text, "# delta_jplus = {v}").unwrap(),
        Err(e) => writeln!(text, "# delta_jplus: {e}").unwrap(),
    }
    writeln!(text, "# delta_n = {delta_n}").unwrap();
    writeln!(
        text,
        "# delta_rot = {} ({} -> {}{})",
        after.rotation.value - before.rotation.value,
        before.rotation,
        after.rotation,
        if rot_kept { "" } else { ", class changed" }
    )
    .unwrap();
    if let Some(p) = output {
        std::fs::write(p, &rendered).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
    } else if format == Format::Text {
        text.push_str(&rendered);
    }
    let value = json!({
        "site": site.to_string(),
        "delta_jplus": delta_j.as_ref().ok().map(rational_json),
        "delta_n": delta_n,
        "delta_rot": after.rotation.value - before.rotation.value,
        "rotation_class_kept": rot_kept,
        "diagram": rendered,
    });
    emit(out, format, &text, value)?;
    Ok(if rot_kept { 0 } else { 3 })
}

fn cmd_random(n: usize, genus: u32, seed: u64, output: Option<&PathBuf>, out: &mut dyn Write) -> Outcome {
    let d = random_diagram(n, genus, seed)?;
    let text = format!("# random diagram: crossings={n} genus={genus} seed={seed}\n{}", render_diagram(&d));
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(0)
}

fn cmd_catalog(format: Format, out: &mut dyn Write) -> Outcome {
    let mut text = String::from("diagram fixtures (use as fixture:<name>):\n");
    for f in fixtures::DIAGRAMS {
        writeln!(text, "  {:<24} {}", f.name, f.description).unwrap();
    }
    text.push_str("parametric fixtures (numeric --fixture <name>):\n");
    for (name, description) in fixtures::PARAMETRIC_NAMES {
        writeln!(text, "  {name:<24} {description}").unwrap();
    }
    let value = json!({
        "diagrams": fixtures::DIAGRAMS.iter().map(|f| json!({"name": f.name, "description": f.description, "text": f.text})).collect::<Vec<_>>(),
        "parametric": fixtures::PARAMETRIC_NAMES.iter().map(|(n, d)| json!({"name": n, "description": d})).collect::<Vec<_>>(),
    });
    emit(out, format, &text, value)?;
    Ok(0)
}

/// Default absolute tolerance of the numeric comparisons per fixture.
pub fn default_tolerance(surface: Surface, name: &str) -> f64 {
    match (surface, name) {
        (Surface::FlatTorus, _) => 1e-6,
        (_, "figure8_sphere_param") => 1e-2,
        _ => 5e-3,
    }
}

struct Table {
    text: String,
    failures: usize,
}

impl Table {
    fn row(&mut self, label: &str, numeric: &Estimate, exact: f64, tol: f64) -> Value {
        let diff = (numeric.value - exact).abs();
        let pass = diff <= tol;
        self.failures += usize::from(!pass);
        writeln!(
            self.text,
            "  {label:<14} numeric {:>16}  exact {:>16}  diff {:>12}  error {:>12}  tol {:>8}  {}",
            sig9(numeric.value),
            sig9(exact),
            sig9(diff),
            sig9(numeric.error),
            sig9(tol),
            if pass { "PASS" } else { "FAIL" }
        )
        .unwrap();
        json!({"numeric": num(numeric.value), "exact": num(exact), "diff": num(diff), "error": num(numeric.error), "tol": num(tol), "pass": pass})
    }
}

fn cmd_numeric(args: &NumericArgs, out: &mut dyn Write) -> Outcome {
    let ParametricFixture { curve, base } = fixtures::parametric_fixture(&args.fixture, args.alpha, args.rho)?;
    let b = match &args.base {
        Some(v) => Vec3::new(v[0], v[1], v[2]),
        None => base,
    };
    let mut cfg = QuadConfig::default();
    if let Some(g) = args.detect_grid {
        cfg.detect_grid = g;
    }
    if args.grid.is_empty() {
        return Err(Failure::Input("at least one grid size is required".into()));
    }
    if let Some(q) = args.q.iter().find(|q| !(q.is_finite() && **q > 0.0)) {
        return Err(Failure::Input(format!("q must be positive, got {q}")));
    }
    let surface = curve.surface();
    let tol = args.tol.unwrap_or_else(|| default_tolerance(surface, &args.fixture));

    let mut table = Table {
        text: String::new(),
        failures: 0,
    };
    writeln!(
        table.text,
        "fixture {} on {surface}, base ({}, {}, {})",
        curve.name(),
        sig9(b.x),
        sig9(b.y),
        sig9(b.z)
    )
    .unwrap();
    let mut grids = Vec::new();
    let mut exact_json = Value::Null;
    let mut previous: Option<(usize, Vec<Estimate>)> = None;
    let mut convergence = Vec::new();
    for &g in &args.grid {
        let a = CurveAnalysis::new(&curve, &b, &cfg.with_grid(g))?;
        let ex = a.extraction();
        let exact = full_report(&ex.diagram, ex.base)?;
        if exact_json.is_null() {
            writeln!(table.text, "extracted diagram: curve {} on genus {}, base region {}", ex.diagram.code(), ex.diagram.surface_genus(), ex.base).unwrap();
            writeln!(table.text, "exact iq = {}", exact.iq).unwrap();
            exact_json = json!({
                "diagram": render_diagram(&ex.diagram),
                "iq": exact.iq.to_string(),
                "i1": exact.i1,
                "jplus": exact.jplus.as_ref().ok().map(rational_json),
            });
        }
        writeln!(table.text, "grid {g} (error from grid {}):", g / 2).unwrap();
        let mut iq_rows = Vec::new();
        let mut values = Vec::new();
        for &q in &args.q {
            let v = a.iq(q)?;
            let e = exact.iq.eval_real(q).map_err(|e| Failure::Input(e.to_string()))?;
            let mut row = table.row(&format!("I_q q={}", sig9(q)), &v, e, tol);
            row["q"] = num(q);
            iq_rows.push(row);
            values.push(v);
        }
        let i1 = table.row("I_1", &a.i1(), exact.i1 as f64, tol);
        let to_f64 = |r: &Rational| {
            use num_traits::ToPrimitive;
            r.to_f64().unwrap_or(f64::NAN)
        };
        let mut jplus = Value::Null;
        let mut sjplus = Value::Null;
        match (a.jplus(), &exact.jplus) {
            (Ok(n), Ok(e)) => jplus = table.row("J+", &n, to_f64(e), tol),
            (Err(e), _) => writeln!(table.text, "  J+             {e}").unwrap(),
            (_, Err(e)) => writeln!(table.text, "  J+             {e}").unwrap(),
        }
        match (a.sjplus(), &exact.sjplus) {
            (Ok(n), Ok(e)) => sjplus = table.row("SJ+", &n, to_f64(e), tol),
            (Err(e), _) => writeln!(table.text, "  SJ+            {e}").unwrap(),
            (_, Err(e)) => writeln!(table.text, "  SJ+            {e}").unwrap(),
        }
        let mut levels = Vec::new();
        for j in a.occupied_levels() {
            let c = a.level_check(j)?;
            let rel = (c.lhs - c.rhs.value).abs() / c.lhs.abs().max(1.0);
            let pass = rel <= args.level_tol;
            table.failures += usize::from(!pass);
            writeln!(
                table.text,
                "  GB level {:<5} 2pi*chi {:>16}  rhs {:>16}  rel diff {:>12}  error {:>12}  tol {:>8}  {}",
                j.to_string(),
                sig9(c.lhs),
                sig9(c.rhs.value),
                sig9(rel),
                sig9(c.rhs.error),
                sig9(args.level_tol),
                if pass { "PASS" } else { "FAIL" }
            )
            .unwrap();
            levels.push(json!({"level": j.to_string(), "lhs": num(c.lhs), "rhs": num(c.rhs.value), "error": num(c.rhs.error), "rel_diff": num(rel), "pass": pass}));
        }
        if let Some((pg, pv)) = &previous {
            for ((q, old), new) in args.q.iter().zip(pv).zip(&values) {
                let change = (new.value - old.value).abs();
                let pass = change <= old.error;
                table.failures += usize::from(!pass);
                writeln!(
                    table.text,
                    "  change q={:<6} grid {pg} -> {g}: {:>12} vs error {:>12}  {}",
                    sig9(*q),
                    sig9(change),
                    sig9(old.error),
                    if pass { "PASS" } else { "FAIL" }
                )
                .unwrap();
                convergence.push(json!({"q": num(*q), "from": pg, "to": g, "change": num(change), "error": num(old.error), "pass": pass}));
            }
        }
        grids.push(json!({"grid": g, "iq": iq_rows, "i1": i1, "jplus": jplus, "sjplus": sjplus, "levels": levels}));
        previous = Some((g, values));
    }
    let pass = table.failures == 0;
    writeln!(table.text, "{}", if pass { "PASS" } else { "FAIL" }).unwrap();
    let value = json!({
        "fixture": curve.name(),
        "surface": surface.to_string(),
        "base": [num(b.x), num(b.y), num(b.z)],
        "exact": exact_json,
        "grids": grids,
        "convergence": convergence,
        "pass": pass,
    });
    emit(out, args.format, &table.text, value)?;
    Ok(if pass { 0 } else { 3 })
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Validate { path, format } => cmd_validate(path, *format, out),
        Command::Invariant { path, base, format } => cmd_invariant(path, *base, *format, out),
        Command::Compare { path, format } => cmd_compare(path, *format, out),
        Command::Move {
            path,
            site,
            output,
            format,
        } => cmd_move(path, site, output.as_ref(), *format, out),
        Command::Numeric(args) => cmd_numeric(args, out),
        Command::Random {
            crossings,
            genus,
            seed,
            output,
        } => cmd_random(*crossings, *genus, *seed, output.as_ref(), out),
        Command::Catalog { format } => cmd_catalog(*format, out),
    }
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("qgb").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn sig9_rounds_to_nine_digits() {
        assert_eq!(sig9(2f64.sqrt()), "1.41421356");
        assert_eq!(sig9(17.0 / 6.0), "2.83333333");
        assert_eq!(sig9(0.5), "0.5");
        assert_eq!(sig9(1.234e-7), "1.23400000e-7");
        assert_eq!(sig9(0.0), "0");
    }

    #[test]
    fn invariant_of_figure8() {
        let (code, out, _) = run_str(&["invariant", "fixture:figure8_sphere"]);
        assert_eq!(code, 0);
        assert!(out.contains("iq = -1/2*q^(-1/2) + 1/2*q^(1/2)"), "{out}");
        assert!(out.contains("rot = 0 (mod 2)") && out.contains("jplus = 0"), "{out}");
    }

    #[test]
    fn usage_errors_exit_1() {
        assert_eq!(run_str(&["frobnicate"]).0, 1);
        assert_eq!(run_str(&["invariant", "fixture:nope"]).0, 1);
        assert_eq!(run_str(&["--help"]).0, 0);
    }
}
