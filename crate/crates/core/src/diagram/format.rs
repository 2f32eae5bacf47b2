//! Text format for diagrams.
//!
//! ```text
//! # a contractible circle on the torus
//! surface genus=1
//! curve -
//! region 0 genus=1 cycles=1
//! region 1 genus=0 cycles=0
//! base 0
//! ```
//!
//! `curve` takes `2n` tokens `<label><+|->` or a single `-` for the embedded
//! circle. Cycle ids in `region` lines follow [`trace_boundary_cycles`]. When no
//! `region` lines appear every cycle is its own genus-0 region with id equal to
//! the cycle id.
//!
//! [`trace_boundary_cycles`]: super::trace_boundary_cycles

use std::fmt::Write;

use super::{faces, CurveDiagram, DiagramError, Region, Sign, SignedGaussCode};

fn parse_err(line: usize, message: impl Into<String>) -> DiagramError {
    DiagramError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_uint<T: std::str::FromStr>(line: usize, what: &str, s: &str) -> Result<T, DiagramError> {
    s.parse()
        .map_err(|_| parse_err(line, format!("{what}: expected a nonnegative integer, got `{s}`")))
}

/// `key=value` with a fixed key.
fn keyed<'a>(line: usize, key: &str, token: Option<&'a str>) -> Result<&'a str, DiagramError> {
    let token = token.ok_or_else(|| parse_err(line, format!("missing `{key}=`")))?;
    token
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| parse_err(line, format!("expected `{key}=...`, got `{token}`")))
}

fn parse_token(line: usize, token: &str) -> Result<(u32, Sign), DiagramError> {
    let (label, sign) = match token.as_bytes().last() {
        Some(b'+') => (&token[..token.len() - 1], Sign::Pos),
        Some(b'-') => (&token[..token.len() - 1], Sign::Neg),
        _ => return Err(parse_err(line, format!("crossing token `{token}` must end in + or -"))),
    };
    match label.parse::<u32>() {
        Ok(l) if l > 0 => Ok((l, sign)),
        _ => Err(parse_err(line, format!("crossing label in `{token}` must be a positive integer"))),
    }
}

fn at_line(err: DiagramError, line: usize) -> DiagramError {
    match err {
        DiagramError::Label { message, .. } => DiagramError::Label {
            line: Some(line),
            message,
        },
        DiagramError::Topology { message, .. } => DiagramError::Topology {
            line: Some(line),
            message,
        },
        other => other,
    }
}

/// Parses and validates a diagram file.
pub fn parse_diagram(text: &str) -> Result<CurveDiagram, DiagramError> {
    let mut surface: Option<(usize, u32)> = None;
    let mut curve: Option<(usize, Vec<(u32, Sign)>)> = None;
    let mut regions: Vec<(usize, usize, Region)> = Vec::new();
    let mut base: Option<(usize, usize)> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let directive = words.next().expect("nonempty line has a word");
        match directive {
            "surface" => {
                if surface.is_some() {
                    return Err(parse_err(line, "duplicate `surface` line"));
                }
                let g = parse_uint(line, "genus", keyed(line, "genus", words.next())?)?;
                surface = Some((line, g));
            }
            "curve" => {
                if curve.is_some() {
                    return Err(parse_err(line, "duplicate `curve` line"));
                }
                let tokens: Vec<&str> = words.by_ref().collect();
                let parsed = match tokens.as_slice() {
                    [] => return Err(parse_err(line, "`curve` needs tokens, or `-` for a crossing-free circle")),
                    ["-"] => Vec::new(),
                    _ => tokens.iter().map(|t| parse_token(line, t)).collect::<Result<_, _>>()?,
                };
                curve = Some((line, parsed));
            }
            "region" => {
                let rid = parse_uint(line, "region id", words.next().ok_or_else(|| parse_err(line, "missing region id"))?)?;
                let genus = parse_uint(line, "genus", keyed(line, "genus", words.next())?)?;
                let cycles = keyed(line, "cycles", words.next())?
                    .split(',')
                    .map(|c| parse_uint(line, "cycle id", c))
                    .collect::<Result<Vec<usize>, _>>()?;
                regions.push((line, rid, Region::new(cycles, genus)));
            }
            "base" => {
                if base.is_some() {
                    return Err(parse_err(line, "duplicate `base` line"));
                }
                let rid = parse_uint(line, "base region", words.next().ok_or_else(|| parse_err(line, "missing base region"))?)?;
                base = Some((line, rid));
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
        if let Some(extra) = words.next() {
            return Err(parse_err(line, format!("unexpected trailing `{extra}`")));
        }
    }

    let last_line = text.lines().count().max(1);
    let (curve_line, tokens) = curve.ok_or_else(|| parse_err(last_line, "missing `curve` line"))?;
    let (base_line, base) = base.ok_or_else(|| parse_err(last_line, "missing `base` line"))?;
    let code = SignedGaussCode::from_tokens(&tokens).map_err(|e| at_line(e, curve_line))?;
    let traced = faces::trace(&code);

    let (topology_line, region_list) = if regions.is_empty() {
        let cellular: Vec<_> = (0..traced.cycles.len()).map(|c| Region::new(vec![c], 0)).collect();
        (surface.map_or(curve_line, |(l, _)| l), cellular)
    } else {
        regions.sort_by_key(|(_, rid, _)| *rid);
        for (expected, (line, rid, _)) in regions.iter().enumerate() {
            if *rid != expected {
                return Err(DiagramError::Topology {
                    line: Some(*line),
                    message: format!("region ids must be 0..{} without gaps or repeats; found {rid}", regions.len()),
                });
            }
        }
        let first = regions.iter().map(|(l, _, _)| *l).min().expect("nonempty");
        (surface.map_or(first, |(l, _)| l), regions.into_iter().map(|(_, _, r)| r).collect())
    };
    if base >= region_list.len() {
        return Err(DiagramError::Topology {
            line: Some(base_line),
            message: format!("base region {base} does not exist ({} regions)", region_list.len()),
        });
    }
    CurveDiagram::assemble(code, traced, region_list, surface.map(|(_, g)| g), base)
        .map_err(|e| at_line(e, topology_line))
}

/// Renders a diagram with explicit `surface`, `region` and `base` lines.
pub fn render_diagram(diagram: &CurveDiagram) -> String {
    let mut out = String::new();
    writeln!(out, "surface genus={}", diagram.surface_genus()).unwrap();
    writeln!(out, "curve {}", diagram.code()).unwrap();
    for (rid, region) in diagram.regions().iter().enumerate() {
        let cycles: Vec<String> = region.cycles.iter().map(usize::to_string).collect();
        writeln!(out, "region {rid} genus={} cycles={}", region.genus, cycles.join(",")).unwrap();
    }
    writeln!(out, "base {}", diagram.base()).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fixtures() {
        let circle = parse_diagram("curve -\nbase 1\n").unwrap();
        assert_eq!(circle.crossing_count(), 0);
        assert_eq!(circle.region_count(), 2);
        assert_eq!(circle.surface_chi(), 2);

        let fig8 = parse_diagram("# figure eight\ncurve 1+ 1+\nbase 0\n").unwrap();
        assert_eq!(fig8.crossing_count(), 1);
        assert_eq!(fig8.region_count(), 3);
        assert_eq!(fig8.surface_chi(), 2);
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_diagram("curve 1+ 2+ 3+ 1+ 2+\nbase 0\n").unwrap_err();
        assert!(matches!(e, DiagramError::Label { line: Some(1), .. }), "{e:?}");
        let e = parse_diagram("\ncurve 1+ 1x\nbase 0\n").unwrap_err();
        assert!(matches!(e, DiagramError::Parse { line: 2, .. }), "{e:?}");
        let e = parse_diagram("surface genus=1\ncurve 1+ 1+\nbase 0\n").unwrap_err();
        assert!(matches!(e, DiagramError::Topology { line: Some(1), .. }), "{e:?}");
        let e = parse_diagram("curve -\nregion 0 genus=0 cycles=0\nbase 0\n").unwrap_err();
        assert!(matches!(e, DiagramError::Topology { line: Some(2), .. }), "{e:?}");
        let e = parse_diagram("curve -\n").unwrap_err();
        assert!(matches!(e, DiagramError::Parse { .. }));
        let e = parse_diagram("curve -\nbase 5\n").unwrap_err();
        assert!(matches!(e, DiagramError::Topology { line: Some(2), .. }), "{e:?}");
        let e = parse_diagram("curve -\nmystery 3\nbase 0\n").unwrap_err();
        assert!(matches!(e, DiagramError::Parse { line: 2, .. }));
    }

    #[test]
    fn render_round_trips() {
        let text = "surface genus=1\ncurve -\nregion 1 genus=0 cycles=0\nregion 0 genus=1 cycles=1\nbase 0\n";
        let d = parse_diagram(text).unwrap();
        let rendered = render_diagram(&d);
        assert_eq!(rendered, "surface genus=1\ncurve -\nregion 0 genus=1 cycles=1\nregion 1 genus=0 cycles=0\nbase 0\n");
        assert_eq!(parse_diagram(&rendered).unwrap(), d);

        let fig8 = parse_diagram("curve 3- 3-\nbase 2\n").unwrap();
        assert_eq!(parse_diagram(&render_diagram(&fig8)).unwrap(), fig8);
    }
}
