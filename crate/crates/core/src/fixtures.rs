//! Built-in diagrams and parametric curves.
//!
//! Diagram fixtures are stored as diagram-file text and parsed on demand;
//! parametric fixtures come with a default base point in the outer region.

use std::f64::consts::FRAC_PI_3;
use std::sync::Arc;

use crate::diagram::{parse_diagram, CurveDiagram};
use crate::geometry::{Figure8, GeometryError, Latitude, ParametricCurve, Surface, TorusCircle, Vec3};

/// A named diagram file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagramFixture {
    pub name: &'static str,
    pub description: &'static str,
    pub text: &'static str,
}

impl DiagramFixture {
    pub fn diagram(&self) -> CurveDiagram {
        parse_diagram(self.text).expect("built-in fixture is valid")
    }
}

pub const DIAGRAMS: [DiagramFixture; 4] = [
    DiagramFixture {
        name: "circle_sphere",
        description: "embedded circle on the sphere, base outside",
        text: "# embedded circle, base on its right\ncurve -\nbase 1\n",
    },
    DiagramFixture {
        name: "figure8_sphere",
        description: "figure-eight on the sphere, base in the outer region",
        text: "# one crossing; regions 1 and 2 are the loops\ncurve 1+ 1+\nbase 0\n",
    },
    DiagramFixture {
        name: "circle_torus",
        description: "contractible circle on the torus, base in the genus-1 region",
        text: "surface genus=1\ncurve -\nregion 0 genus=0 cycles=0\nregion 1 genus=1 cycles=1\nbase 1\n",
    },
    DiagramFixture {
        name: "essential_torus_circle",
        description: "meridian of the torus; homologically nontrivial",
        text: "surface genus=1\ncurve -\nregion 0 genus=0 cycles=0,1\nbase 0\n",
    },
];

pub fn diagram_fixture(name: &str) -> Option<&'static DiagramFixture> {
    DIAGRAMS.iter().find(|f| f.name == name)
}

/// A parametric curve with a default base point.
#[derive(Debug, Clone)]
pub struct ParametricFixture {
    pub curve: ParametricCurve,
    pub base: Vec3,
}

pub const PARAMETRIC_NAMES: [(&str, &str); 4] = [
    ("great_circle", "equator of the unit sphere"),
    ("latitude", "circle at colatitude alpha (default pi/3), counterclockwise seen from the north pole"),
    ("circle_torus", "circle of radius rho (default 0.2) centred in the flat torus square"),
    ("figure8_sphere_param", "central projection of a planar figure-eight, one crossing"),
];

pub const DEFAULT_ALPHA: f64 = FRAC_PI_3;
pub const DEFAULT_RHO: f64 = 0.2;

fn south() -> Vec3 {
    -Vec3::z()
}

pub fn great_circle() -> ParametricFixture {
    latitude_named("great_circle", std::f64::consts::FRAC_PI_2).expect("equator is valid")
}

pub fn latitude(alpha: f64) -> Result<ParametricFixture, GeometryError> {
    latitude_named("latitude", alpha)
}

fn latitude_named(name: &str, alpha: f64) -> Result<ParametricFixture, GeometryError> {
    if !(alpha > 0.0 && alpha < std::f64::consts::PI) {
        return Err(GeometryError::Config(format!("colatitude {alpha} must lie in (0, pi)")));
    }
    Ok(ParametricFixture {
        curve: ParametricCurve::new(Surface::UnitSphere, name, Arc::new(Latitude { alpha }))?,
        base: south(),
    })
}

pub fn circle_torus(rho: f64) -> Result<ParametricFixture, GeometryError> {
    if !(rho > 0.0 && rho < 0.45) {
        return Err(GeometryError::Config(format!("radius {rho} must lie in (0, 0.45)")));
    }
    Ok(ParametricFixture {
        curve: ParametricCurve::new(
            Surface::FlatTorus,
            "circle_torus",
            Arc::new(TorusCircle {
                center: [0.5, 0.5],
                radius: rho,
            }),
        )?,
        base: Vec3::new(0.025, 0.025, 0.0),
    })
}

pub fn figure8_sphere_param() -> ParametricFixture {
    ParametricFixture {
        curve: ParametricCurve::new(Surface::UnitSphere, "figure8_sphere_param", Arc::new(Figure8)).expect("valid curve"),
        base: south(),
    }
}

/// Looks up a parametric fixture; `alpha` and `rho` default when absent and
/// are rejected for fixtures that take no such parameter.
pub fn parametric_fixture(name: &str, alpha: Option<f64>, rho: Option<f64>) -> Result<ParametricFixture, GeometryError> {
    let unused = |what: &str, given: bool| {
        if given {
            Err(GeometryError::Config(format!("fixture {name} takes no {what} parameter")))
        } else {
            Ok(())
        }
    };
    match name {
        "great_circle" => {
            unused("alpha", alpha.is_some())?;
            unused("rho", rho.is_some())?;
            Ok(great_circle())
        }
        "latitude" => {
            unused("rho", rho.is_some())?;
            latitude(alpha.unwrap_or(DEFAULT_ALPHA))
        }
        "circle_torus" => {
            unused("alpha", alpha.is_some())?;
            circle_torus(rho.unwrap_or(DEFAULT_RHO))
        }
        "figure8_sphere_param" => {
            unused("alpha", alpha.is_some())?;
            unused("rho", rho.is_some())?;
            Ok(figure8_sphere_param())
        }
        _ => Err(GeometryError::Config(format!("unknown parametric fixture `{name}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::distance_to_curve;
    use crate::geometry::QuadConfig;

    #[test]
    fn diagram_fixtures_parse() {
        for f in DIAGRAMS {
            let d = f.diagram();
            assert_eq!(d.is_homologically_trivial(), f.name != "essential_torus_circle", "{}", f.name);
        }
        assert_eq!(diagram_fixture("circle_torus").unwrap().diagram().surface_chi(), 0);
        assert!(diagram_fixture("nope").is_none());
    }

    #[test]
    fn parametric_bases_are_off_the_curve() {
        let cfg = QuadConfig::default();
        for (name, _) in PARAMETRIC_NAMES {
            let f = parametric_fixture(name, None, None).unwrap();
            assert!(distance_to_curve(&f.curve, &f.base, &cfg).unwrap() > 0.1, "{name}");
        }
    }

    #[test]
    fn parameters_are_checked() {
        assert!(parametric_fixture("latitude", Some(4.0), None).is_err());
        assert!(parametric_fixture("great_circle", Some(1.0), None).is_err());
        assert!(parametric_fixture("circle_torus", None, Some(0.3)).is_ok());
        assert!(parametric_fixture("circle_torus", None, Some(0.6)).is_err());
    }
}
