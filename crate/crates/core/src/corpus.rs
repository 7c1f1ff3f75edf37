//! Shape specifications and reproducible random convex polygons.
//!
//! Random polygons are convex hulls of points drawn uniformly from the unit
//! disc with an `XorShiftRng` (Marsaglia xorshift128) seeded through
//! `seed_from_u64`, so a `(seed, points)` pair names the same polygon on
//! every platform.

use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, Point};
use rand::{Rng, SeedableRng};
use rand_xorshift::XorShiftRng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};

/// Hulls with fewer vertices than this are redrawn.
pub const MIN_HULL_VERTICES: usize = 4;
const MAX_REDRAWS: usize = 1000;

/// `n` points uniform in the unit disc.
pub fn random_point_cloud(rng: &mut XorShiftRng, n: usize) -> Vec<Point> {
    (0..n)
        .map(|_| {
            let r = rng.random::<f64>().sqrt();
            let theta = 2.0 * PI * rng.random::<f64>();
            [r * theta.cos(), r * theta.sin()]
        })
        .collect()
}

/// Hull of `points` uniform points in the unit disc, redrawn until it is a
/// valid strictly convex polygon with at least [`MIN_HULL_VERTICES`] vertices.
pub fn random_convex_polygon(seed: u64, points: usize) -> Result<ConvexPolygon> {
    if points < MIN_HULL_VERTICES {
        return Err(Error::Domain(format!(
            "need at least {MIN_HULL_VERTICES} points per hull, got {points}"
        )));
    }
    let mut rng = XorShiftRng::seed_from_u64(seed);
    for _ in 0..MAX_REDRAWS {
        let cloud = random_point_cloud(&mut rng, points);
        if let Ok(poly) = ConvexPolygon::hull(&cloud) {
            if poly.len() >= MIN_HULL_VERTICES {
                return Ok(poly);
            }
        }
    }
    Err(Error::Internal(format!("seed {seed}: no valid hull after {MAX_REDRAWS} draws")))
}

/// A named family of polygons.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ShapeSpec {
    /// Regular polygons with `m` sides each, all of the given perimeter.
    Regular { sides: Vec<usize>, perimeter: f64 },
    Rectangle { width: f64, height: f64 },
    /// `count` hulls of `points` random points, seeds `seed, seed + 1, ...`.
    Random { points: usize, seed: u64, count: usize },
    File { path: PathBuf },
}

/// One polygon of a corpus with its row labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Shape {
    /// Short identifier such as `regular-8` or `random-17`.
    pub id: String,
    /// Side count, file path, or generator parameters.
    pub label: String,
    pub polygon: ConvexPolygon,
}

impl ShapeSpec {
    /// Parses `regular:M[,M...]`, `rectangle:AxB`, `random:N` and `file:PATH`.
    /// `perimeter` applies to regular shapes, `seed`/`count` to random ones.
    pub fn parse(spec: &str, perimeter: f64, seed: u64, count: usize) -> Result<Self> {
        let (kind, arg) = spec
            .split_once(':')
            .ok_or_else(|| Error::Input(format!("shape spec `{spec}` must look like kind:argument")))?;
        let bad = |what: &str| Error::Input(format!("shape spec `{spec}`: {what}"));
        match kind {
            "regular" => {
                let sides = arg
                    .split(',')
                    .map(|m| m.trim().parse::<usize>().map_err(|_| bad("side counts must be integers")))
                    .collect::<Result<Vec<_>>>()?;
                if sides.iter().any(|&m| m < 3) {
                    return Err(bad("regular polygons need at least 3 sides"));
                }
                if !(perimeter.is_finite() && perimeter > 0.0) {
                    return Err(bad("perimeter must be positive"));
                }
                Ok(Self::Regular { sides, perimeter })
            }
            "rectangle" => {
                let (a, b) = arg.split_once('x').ok_or_else(|| bad("expected rectangle:AxB"))?;
                let width = a.trim().parse::<f64>().map_err(|_| bad("width is not a number"))?;
                let height = b.trim().parse::<f64>().map_err(|_| bad("height is not a number"))?;
                if !(width > 0.0 && height > 0.0 && width.is_finite() && height.is_finite()) {
                    return Err(bad("sides must be positive"));
                }
                Ok(Self::Rectangle { width, height })
            }
            "random" => {
                let points = arg.trim().parse::<usize>().map_err(|_| bad("point count must be an integer"))?;
                if points < MIN_HULL_VERTICES {
                    return Err(bad("need at least 4 points"));
                }
                if count == 0 {
                    return Err(bad("empty corpus"));
                }
                Ok(Self::Random { points, seed, count })
            }
            "file" => {
                if arg.is_empty() {
                    return Err(bad("missing path"));
                }
                Ok(Self::File { path: PathBuf::from(arg) })
            }
            _ => Err(bad("unknown kind; use regular, rectangle, random or file")),
        }
    }

    /// Materializes the corpus in a fixed order.
    pub fn build(&self, hull_repair: bool) -> Result<Vec<Shape>> {
        match self {
            Self::Regular { sides, perimeter } => sides
                .iter()
                .map(|&m| {
                    Ok(Shape {
                        id: format!("regular-{m}"),
                        label: m.to_string(),
                        polygon: ConvexPolygon::regular_with_perimeter(m, *perimeter)?,
                    })
                })
                .collect(),
            Self::Rectangle { width, height } => Ok(vec![Shape {
                id: "rectangle".into(),
                label: format!("{width}x{height}"),
                polygon: ConvexPolygon::rectangle(*width, *height)?,
            }]),
            Self::Random { points, seed, count } => (0..*count as u64)
                .map(|i| {
                    let s = seed.wrapping_add(i);
                    Ok(Shape {
                        id: format!("random-{s}"),
                        label: format!("{points}@{s}"),
                        polygon: random_convex_polygon(s, *points)?,
                    })
                })
                .collect(),
            Self::File { path } => Ok(vec![Shape {
                id: "file".into(),
                label: path.display().to_string(),
                polygon: read_polygon(path, hull_repair)?,
            }]),
        }
    }
}

impl fmt::Display for ShapeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Regular { sides, .. } => {
                let s: Vec<String> = sides.iter().map(|m| m.to_string()).collect();
                write!(f, "regular:{}", s.join(","))
            }
            Self::Rectangle { width, height } => write!(f, "rectangle:{width}x{height}"),
            Self::Random { points, .. } => write!(f, "random:{points}"),
            Self::File { path } => write!(f, "file:{}", path.display()),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolygonDocument {
    Bare(Vec<Point>),
    Wrapped { polygon: Vec<Point> },
}

/// Parses a vertex list: either a JSON array of `[x, y]` pairs or an object
/// with a `polygon` field (as in replay files). With `hull_repair` the
/// convex hull of the points is used instead of rejecting invalid input.
pub fn parse_polygon(text: &str, hull_repair: bool) -> Result<ConvexPolygon> {
    let doc: PolygonDocument =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("polygon JSON: {e}")))?;
    let points = match doc {
        PolygonDocument::Bare(p) | PolygonDocument::Wrapped { polygon: p } => p,
    };
    if hull_repair {
        ConvexPolygon::hull(&points)
    } else {
        ConvexPolygon::new(points)
    }
}

pub fn read_polygon(path: &Path, hull_repair: bool) -> Result<ConvexPolygon> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse_polygon(&text, hull_repair)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        assert_eq!(
            ShapeSpec::parse("regular:8,16", 6.0, 0, 1).unwrap(),
            ShapeSpec::Regular { sides: vec![8, 16], perimeter: 6.0 }
        );
        assert_eq!(
            ShapeSpec::parse("rectangle:4x0.25", 1.0, 0, 1).unwrap(),
            ShapeSpec::Rectangle { width: 4.0, height: 0.25 }
        );
        assert_eq!(
            ShapeSpec::parse("random:12", 1.0, 5, 3).unwrap(),
            ShapeSpec::Random { points: 12, seed: 5, count: 3 }
        );
        for bad in ["regular", "regular:2", "rectangle:4", "random:3", "hexagon:6", "file:", "regular:x"] {
            assert!(ShapeSpec::parse(bad, 1.0, 0, 1).is_err(), "{bad}");
        }
        assert!(ShapeSpec::parse("random:12", 1.0, 0, 0).is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["regular:8,16,32", "rectangle:2x0.5", "random:12", "file:a.json"] {
            assert_eq!(ShapeSpec::parse(s, 1.0, 0, 1).unwrap().to_string(), s);
        }
    }

    #[test]
    fn random_corpus_is_reproducible() {
        let spec = ShapeSpec::parse("random:12", 1.0, 42, 5).unwrap();
        let a = spec.build(false).unwrap();
        let b = spec.build(false).unwrap();
        assert_eq!(a, b);
        assert_eq!(a[2].id, "random-44");
        assert_eq!(a[2].polygon, random_convex_polygon(44, 12).unwrap());
        assert!(a.iter().all(|s| s.polygon.len() >= MIN_HULL_VERTICES));
    }

    #[test]
    fn random_points_lie_in_disc() {
        let mut rng = XorShiftRng::seed_from_u64(1);
        assert!(random_point_cloud(&mut rng, 1000).iter().all(|p| p[0].hypot(p[1]) <= 1.0));
    }

    #[test]
    fn polygon_documents() {
        let sq = "[[0,0],[1,0],[1,1],[0,1]]";
        assert_eq!(parse_polygon(sq, false).unwrap().area(), 1.0);
        let wrapped = r#"{"polygon": [[0,0],[1,0],[1,1],[0,1]], "config": {}}"#;
        assert_eq!(parse_polygon(wrapped, false).unwrap().area(), 1.0);
        let clockwise = "[[0,0],[0,1],[1,1],[1,0]]";
        assert!(parse_polygon(clockwise, false).is_err());
        assert_eq!(parse_polygon(clockwise, true).unwrap().area(), 1.0);
        let dent = "[[0,0],[2,0],[1,0.5],[2,2],[0,2]]";
        assert!(parse_polygon(dent, false).is_err());
        assert!(parse_polygon("not json", false).is_err());
    }
}
