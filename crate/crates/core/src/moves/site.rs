//! Text syntax for move sites.
//!
//! ```text
//! bigon:<region>
//! triangle:<region>
//! birth:<region>:<pos1>:<pos2>:<direct|opposite>[:plan=<plan>]
//! ```
//!
//! A position is an arc-side such as `3L` or `0R`, optionally with an offset
//! along the arc: `3L@0.25`. A plan lists pieces separated by `/`, each
//! `[*]g<genus>c<cycle>,<cycle>,...`, with `*` marking the piece that keeps the
//! base; this is the same form [`SplitPlan`] displays.

use super::birth::{BirthSite, BoundaryPosition, PlanPiece, SplitPlan};
use super::{find_bigons, MoveError, MoveSite, TangencyKind};
use crate::diagram::{ArcSide, CurveDiagram, Side};

fn site_err(message: impl Into<String>) -> MoveError {
    MoveError::Site(message.into())
}

fn parse_usize(what: &str, s: &str) -> Result<usize, MoveError> {
    s.parse()
        .map_err(|_| site_err(format!("{what}: expected a nonnegative integer, got `{s}`")))
}

fn parse_position(s: &str) -> Result<BoundaryPosition, MoveError> {
    let (side, offset) = match s.split_once('@') {
        Some((side, off)) => (
            side,
            off.parse::<f64>()
                .map_err(|_| site_err(format!("offset `{off}` is not a number")))?,
        ),
        None => (s, 0.5),
    };
    let (arc, which) = match side.as_bytes().last() {
        Some(b'L') => (&side[..side.len() - 1], Side::Left),
        Some(b'R') => (&side[..side.len() - 1], Side::Right),
        _ => return Err(site_err(format!("position `{s}` must be an arc id followed by L or R"))),
    };
    Ok(BoundaryPosition::new(ArcSide::new(parse_usize("arc", arc)?, which), offset))
}

fn parse_kind(s: &str) -> Result<TangencyKind, MoveError> {
    match s {
        "direct" => Ok(TangencyKind::Direct),
        "opposite" => Ok(TangencyKind::Opposite),
        _ => Err(site_err(format!("tangency kind must be direct or opposite, got `{s}`"))),
    }
}

pub fn parse_plan(s: &str) -> Result<SplitPlan, MoveError> {
    let pieces = s
        .split('/')
        .map(|piece| {
            let (base, rest) = match piece.strip_prefix('*') {
                Some(rest) => (true, rest),
                None => (false, piece),
            };
            let rest = rest
                .strip_prefix('g')
                .ok_or_else(|| site_err(format!("plan piece `{piece}` must start with g<genus>")))?;
            let (genus, cycles) = rest
                .split_once('c')
                .ok_or_else(|| site_err(format!("plan piece `{piece}` must list cycles after c")))?;
            let genus = genus
                .parse()
                .map_err(|_| site_err(format!("genus `{genus}` is not a nonnegative integer")))?;
            let cycles = if cycles.is_empty() {
                Vec::new()
            } else {
                cycles.split(',').map(|c| parse_usize("cycle", c)).collect::<Result<_, _>>()?
            };
            Ok(PlanPiece { genus, cycles, base })
        })
        .collect::<Result<_, MoveError>>()?;
    Ok(SplitPlan { pieces })
}

/// Parses a site for `diagram`. Bigon kinds are read off the diagram; a
/// region that is not a bigon is reported by the move itself.
pub fn parse_site(diagram: &CurveDiagram, text: &str) -> Result<MoveSite, MoveError> {
    let parts: Vec<&str> = text.trim().split(':').collect();
    match parts.as_slice() {
        ["bigon", r] => {
            let region = parse_usize("region", r)?;
            let kind = find_bigons(diagram)
                .into_iter()
                .find_map(|s| match s {
                    MoveSite::Bigon { region: b, kind } if b == region => Some(kind),
                    _ => None,
                })
                .unwrap_or(TangencyKind::Direct);
            Ok(MoveSite::Bigon { region, kind })
        }
        ["triangle", r] => Ok(MoveSite::Triangle {
            region: parse_usize("region", r)?,
        }),
        ["birth", r, p1, p2, kind, rest @ ..] => {
            let plan = match rest {
                [] => None,
                [p] => Some(parse_plan(
                    p.strip_prefix("plan=")
                        .ok_or_else(|| site_err(format!("expected plan=<spec>, got `{p}`")))?,
                )?),
                _ => return Err(site_err("too many fields in birth site")),
            };
            Ok(MoveSite::Birth(BirthSite {
                region: parse_usize("region", r)?,
                first: parse_position(p1)?,
                second: parse_position(p2)?,
                kind: parse_kind(kind)?,
                plan,
            }))
        }
        _ => Err(site_err(format!(
            "unrecognised site `{text}`; expected bigon:<r>, triangle:<r> or birth:<r>:<pos>:<pos>:<direct|opposite>[:plan=...]"
        ))),
    }
}

impl std::fmt::Display for MoveSite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MoveSite::Bigon { region, .. } => write!(f, "bigon:{region}"),
            MoveSite::Triangle { region } => write!(f, "triangle:{region}"),
            MoveSite::Birth(s) => {
                write!(f, "birth:{}:{}:{}:{}", s.region, s.first, s.second, s.kind)?;
                if let Some(p) = &s.plan {
                    write!(f, ":plan={p}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;
    use crate::moves::birth_sites;

    #[test]
    fn sites_round_trip_through_text() {
        let d = parse_diagram("curve 1+ 1+\nbase 0").unwrap();
        for r in 0..d.region_count() {
            for s in birth_sites(&d, r) {
                let site = MoveSite::Birth(s);
                assert_eq!(parse_site(&d, &site.to_string()).unwrap(), site);
            }
        }
        assert_eq!(parse_site(&d, "triangle:2").unwrap(), MoveSite::Triangle { region: 2 });
    }

    #[test]
    fn plans_parse() {
        let p = parse_plan("*g0c1,2/g1c").unwrap();
        assert_eq!(p.pieces.len(), 2);
        assert!(p.pieces[0].base && p.pieces[0].cycles == vec![1, 2]);
        assert_eq!(p.pieces[1].genus, 1);
        assert!(p.pieces[1].cycles.is_empty());
        assert_eq!(p.to_string(), "*g0c1,2/g1c");
    }

    #[test]
    fn malformed_sites_are_rejected() {
        let d = parse_diagram("curve -\nbase 1").unwrap();
        for bad in ["bigon", "bigon:x", "birth:0:0L:0X:direct", "birth:0:0L:0R:sideways", "birth:0:0L:0R:direct:p", "kink:0"] {
            assert!(matches!(parse_site(&d, bad), Err(MoveError::Site(_))), "{bad}");
        }
    }
}
