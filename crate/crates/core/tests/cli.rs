use std::io::Write;
use std::process::Command;

use qgb::moves::{find_triangles, random_diagram, MoveSite};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qgb").chain(args.iter().copied());
    let code = qgb::cli::run(argv.map(std::ffi::OsString::from), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, out, err) = run(&a);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn temp_diagram(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn validate_reports_and_exit_codes() {
    let (code, out, _) = run(&["validate", "fixture:circle_sphere"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("chi=2, regions=2\n"), "{out}");
    assert!(out.contains("homologically trivial"));

    let (code, out, _) = run(&["validate", "fixture:essential_torus_circle"]);
    assert_eq!(code, 2);
    assert!(out.contains("homologically nontrivial"));

    let bad = temp_diagram("curve 1+ 1-\nbase 0\n");
    let (code, _, err) = run(&["validate", bad.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("different signs"), "{err}");

    let (code, _, err) = run(&["validate", "/nonexistent/diagram.txt"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
}

#[test]
fn invariant_text_and_json_agree() {
    let (code, out, _) = run(&["invariant", "fixture:figure8_sphere"]);
    assert_eq!(code, 0);
    for line in [
        "iq = -1/2*q^(-1/2) + 1/2*q^(1/2)",
        "i1 = 0",
        "i1' = 1/2",
        "rot = 0 (mod 2)",
        "jplus = 0",
        "jminus = -1",
        "sjplus = 0",
    ] {
        assert!(out.lines().any(|l| l == line), "missing `{line}` in\n{out}");
    }
    let v = json(&["invariant", "fixture:figure8_sphere"]);
    assert_eq!(v["iq"], "-1/2*q^(-1/2) + 1/2*q^(1/2)");
    assert_eq!(v["i1"], 0);
    assert_eq!(v["i1_prime"], "1/2");
    assert_eq!(v["jplus"], "0");
    assert_eq!(v["jminus"], "-1");
    assert_eq!(v["rotation"]["modulus"], 2);

    let v = json(&["invariant", "fixture:figure8_sphere", "--base", "2"]);
    assert_eq!(v["iq"], "-1/2*q^(-3/2) - 3/2*q^(-1/2)");
    assert_eq!(v["jplus"], "0");
}

#[test]
fn invariant_on_the_torus_leaves_jplus_undefined() {
    let (code, out, _) = run(&["invariant", "fixture:circle_torus"]);
    assert_eq!(code, 0);
    assert!(out.contains("iq = q^(1/2)"));
    assert!(out.contains("rot = 1\n"));
    assert!(out.contains("jplus: undefined (chi = 0)"));
    let v = json(&["invariant", "fixture:circle_torus"]);
    assert!(v["jplus"].is_null());
    assert!(v["jplus_reason"].is_string());
}

#[test]
fn compare_passes_on_fixtures_and_random_diagrams() {
    for path in ["fixture:figure8_sphere", "random:5:0:42", "random:4:2:7"] {
        let (code, out, _) = run(&["compare", path]);
        assert_eq!(code, 0, "{path}\n{out}");
        let last = out.lines().last().unwrap();
        assert!(last.starts_with("PASS (both paths, "), "{last}");
        assert!(!out.contains("FAIL"));
    }
}

#[test]
fn move_reports_deltas() {
    let (code, out, _) = run(&["move", "fixture:figure8_sphere", "--site", "birth:0:0L:1R:direct"]);
    assert_eq!(code, 0);
    assert!(out.contains("# delta_jplus = 2\n"), "{out}");
    assert!(out.contains("# delta_n = 2\n"));
    assert!(out.contains("curve "));

    let (code, out, _) = run(&["move", "fixture:figure8_sphere", "--site", "birth:0:0L@0.25:0L@0.75:opposite"]);
    assert_eq!(code, 0);
    assert!(out.contains("# delta_jplus = 0\n"), "{out}");

    let (code, _, err) = run(&["move", "fixture:figure8_sphere", "--site", "bigon:0"]);
    assert_eq!(code, 1);
    assert!(err.contains("not a bigon"));
}

#[test]
fn triangle_move_through_a_written_diagram() {
    let (d, region) = (0..)
        .find_map(|seed| {
            let d = random_diagram(3, 0, seed).unwrap();
            let t = find_triangles(&d).into_iter().next()?;
            let MoveSite::Triangle { region } = t else { unreachable!() };
            Some((d, region))
        })
        .unwrap();
    let file = temp_diagram(&d.to_string());
    let dir = tempfile::tempdir().unwrap();
    let moved = dir.path().join("moved.txt");
    let site = format!("triangle:{region}");
    let (code, out, err) = run(&["move", file.path().to_str().unwrap(), "--site", &site, "-o", moved.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("# delta_jplus = 0\n"), "{out}");
    let (code, _, _) = run(&["compare", moved.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn numeric_fixtures_pass() {
    for args in [
        vec!["numeric", "--fixture", "latitude"],
        vec!["numeric", "--fixture", "circle_torus", "--rho", "0.2"],
        vec!["numeric", "--fixture", "figure8_sphere_param", "--q", "0.5,2,3"],
    ] {
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{args:?}\n{out}{err}");
        assert_eq!(out.lines().last(), Some("PASS"), "{out}");
    }
    let (code, _, _) = run(&["numeric", "--fixture", "great_circle", "--alpha", "1"]);
    assert_eq!(code, 1);
    let v = json(&["numeric", "--fixture", "great_circle", "--q", "2"]);
    assert_eq!(v["pass"], true, "{v}");
}

#[test]
fn random_is_deterministic() {
    let a = run(&["random", "--crossings", "4", "--genus", "2", "--seed", "11"]);
    let b = run(&["random", "--crossings", "4", "--genus", "2", "--seed", "11"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
    let (_, out, _) = run(&["random", "--crossings", "0", "--genus", "0", "--seed", "5"]);
    assert!(out.lines().any(|l| l == "curve -"), "{out}");
}

#[test]
fn catalog_lists_all_fixtures() {
    let (code, out, _) = run(&["catalog"]);
    assert_eq!(code, 0);
    for name in ["circle_sphere", "figure8_sphere", "circle_torus", "essential_torus_circle", "great_circle", "latitude", "figure8_sphere_param"] {
        assert!(out.contains(name), "{name}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qgb");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["invariant", "fixture:circle_sphere"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("iq = q^(1/2)"));
    assert_eq!(status(&["validate", "fixture:essential_torus_circle"]).status.code(), Some(2));
    assert_eq!(status(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(status(&["--help"]).status.code(), Some(0));
}
