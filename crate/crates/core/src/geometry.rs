//! Planar convex polygons and their inner parallel bodies
//! `Omega_s = {x in Omega : dist(x, boundary) > s}`.

use crate::error::{Error, Result};
use crate::radial::BallSpec;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub type Point = [f64; 2];

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn norm(a: Point) -> f64 {
    a[0].hypot(a[1])
}

/// Strictly convex polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl TryFrom<Vec<Point>> for ConvexPolygon {
    type Error = Error;

    fn try_from(vertices: Vec<Point>) -> Result<Self> {
        Self::new(vertices)
    }
}

impl From<ConvexPolygon> for Vec<Point> {
    fn from(p: ConvexPolygon) -> Self {
        p.vertices
    }
}

/// Relative tolerance used for duplicate and collinearity rejection.
pub const VERTEX_TOL: f64 = 1e-12;

fn diameter_of(vertices: &[Point]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in vertices.iter().enumerate() {
        for b in &vertices[i + 1..] {
            d = d.max(norm(sub(*a, *b)));
        }
    }
    d
}

/// Signed area, computed relative to the first vertex to avoid cancellation
/// on small polygons far from the origin.
fn shoelace(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    let o = vertices[0];
    0.5 * (1..n.saturating_sub(1))
        .map(|i| cross(sub(vertices[i], o), sub(vertices[i + 1], o)))
        .sum::<f64>()
}

fn boundary_length(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    (0..n).map(|i| norm(sub(vertices[(i + 1) % n], vertices[i]))).sum()
}

impl ConvexPolygon {
    /// Validates a counterclockwise, strictly convex vertex list.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidPolygon(format!("need at least 3 vertices, got {n}")));
        }
        if vertices.iter().any(|p| !(p[0].is_finite() && p[1].is_finite())) {
            return Err(Error::InvalidPolygon("non-finite coordinate".into()));
        }
        let diam = diameter_of(&vertices);
        if diam == 0.0 {
            return Err(Error::InvalidPolygon("all vertices coincide".into()));
        }
        for i in 0..n {
            for j in i + 1..n {
                if norm(sub(vertices[i], vertices[j])) <= VERTEX_TOL * diam {
                    return Err(Error::InvalidPolygon(format!("vertices {i} and {j} coincide")));
                }
            }
        }
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let turn = cross(sub(b, a), sub(c, b));
            if turn <= VERTEX_TOL * diam * diam {
                return Err(Error::InvalidPolygon(format!(
                    "not strictly convex counterclockwise at vertex {} (turn {turn:e})",
                    (i + 1) % n
                )));
            }
        }
        // turning more than once around is caught by the angle sum
        let total: f64 = (0..n)
            .map(|i| {
                let e0 = sub(vertices[(i + 1) % n], vertices[i]);
                let e1 = sub(vertices[(i + 2) % n], vertices[(i + 1) % n]);
                cross(e0, e1).atan2(dot(e0, e1))
            })
            .sum();
        if (total - 2.0 * PI).abs() > 1e-6 {
            return Err(Error::InvalidPolygon(format!("boundary winds {:.3} turns", total / (2.0 * PI))));
        }
        if shoelace(&vertices) <= 0.0 {
            return Err(Error::InvalidPolygon("nonpositive area".into()));
        }
        Ok(Self { vertices })
    }

    /// Convex hull of a point cloud (Andrew's monotone chain).
    pub fn hull(points: &[Point]) -> Result<Self> {
        let mut pts: Vec<Point> = points.to_vec();
        pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
        pts.dedup();
        if pts.len() < 3 {
            return Err(Error::InvalidPolygon("fewer than 3 distinct points".into()));
        }
        let diam = diameter_of(&pts);
        let keep = |h: &Vec<Point>, p: Point| {
            let m = h.len();
            m >= 2 && cross(sub(h[m - 1], h[m - 2]), sub(p, h[m - 1])) <= VERTEX_TOL * diam * diam
        };
        let mut lower: Vec<Point> = Vec::new();
        for &p in &pts {
            while keep(&lower, p) {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Point> = Vec::new();
        for &p in pts.iter().rev() {
            while keep(&upper, p) {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Self::new(lower)
    }

    /// Regular `m`-gon with circumradius `r`, one vertex on the positive x axis.
    pub fn regular(m: usize, circumradius: f64) -> Result<Self> {
        if m < 3 || !(circumradius > 0.0 && circumradius.is_finite()) {
            return Err(Error::InvalidPolygon(format!("regular polygon needs m >= 3 and r > 0 (m {m}, r {circumradius})")));
        }
        let vertices = (0..m)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / m as f64;
                [circumradius * t.cos(), circumradius * t.sin()]
            })
            .collect();
        Self::new(vertices)
    }

    /// Regular `m`-gon with prescribed perimeter.
    pub fn regular_with_perimeter(m: usize, perimeter: f64) -> Result<Self> {
        let side = perimeter / m as f64;
        Self::regular(m, side / (2.0 * (PI / m as f64).sin()))
    }

    /// Axis-aligned `width x height` rectangle with lower-left corner at the origin.
    pub fn rectangle(width: f64, height: f64) -> Result<Self> {
        Self::new(vec![[0.0, 0.0], [width, 0.0], [width, height], [0.0, height]])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn perimeter(&self) -> f64 {
        boundary_length(&self.vertices)
    }

    pub fn area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    pub fn diameter(&self) -> f64 {
        diameter_of(&self.vertices)
    }

    /// Area centroid.
    pub fn centroid(&self) -> Point {
        let n = self.vertices.len();
        let o = self.vertices[0];
        let (mut cx, mut cy) = (0.0, 0.0);
        for i in 0..n {
            let a = sub(self.vertices[i], o);
            let b = sub(self.vertices[(i + 1) % n], o);
            let c = cross(a, b);
            cx += (a[0] + b[0]) * c;
            cy += (a[1] + b[1]) * c;
        }
        let six_a = 6.0 * self.area();
        [o[0] + cx / six_a, o[1] + cy / six_a]
    }

    /// Rigid motion: rotation by `angle` about the origin, then translation.
    pub fn transformed(&self, angle: f64, shift: Point) -> Result<Self> {
        let (s, c) = angle.sin_cos();
        Self::new(
            self.vertices
                .iter()
                .map(|p| [c * p[0] - s * p[1] + shift[0], s * p[0] + c * p[1] + shift[1]])
                .collect(),
        )
    }

    /// Supporting lines `n_i . x = b_i` with outward unit normals, one per edge.
    pub fn edge_lines(&self) -> Vec<(Point, f64)> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let a = self.vertices[i];
                let e = sub(self.vertices[(i + 1) % n], a);
                let len = norm(e);
                let normal = [e[1] / len, -e[0] / len];
                (normal, dot(normal, a))
            })
            .collect()
    }

    /// Exterior angles at each vertex (vertex `i` sits between edges `i-1` and `i`).
    pub fn exterior_angles(&self) -> Vec<f64> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let e0 = sub(self.vertices[i], self.vertices[(i + n - 1) % n]);
                let e1 = sub(self.vertices[(i + 1) % n], self.vertices[i]);
                cross(e0, e1).atan2(dot(e0, e1))
            })
            .collect()
    }

    /// Short hex digest of the exact vertex coordinates.
    pub fn fingerprint(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        for p in &self.vertices {
            h.update(p[0].to_bits().to_le_bytes());
            h.update(p[1].to_bits().to_le_bytes());
        }
        h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

/// Inner parallel body: a polygon, or empty once `s >= r_Omega`.
#[derive(Debug, Clone, PartialEq)]
pub enum Eroded {
    Polygon(ConvexPolygon),
    Empty,
}

impl Eroded {
    pub fn perimeter(&self) -> f64 {
        match self {
            Eroded::Polygon(p) => p.perimeter(),
            Eroded::Empty => 0.0,
        }
    }

    pub fn area(&self) -> f64 {
        match self {
            Eroded::Polygon(p) => p.area(),
            Eroded::Empty => 0.0,
        }
    }

    pub fn polygon(&self) -> Option<&ConvexPolygon> {
        match self {
            Eroded::Polygon(p) => Some(p),
            Eroded::Empty => None,
        }
    }
}

/// Clips a convex polygon by the half-plane `n . x <= b`.
fn clip(poly: &[Point], normal: Point, b: f64) -> Vec<Point> {
    let m = poly.len();
    let mut out = Vec::with_capacity(m + 1);
    for i in 0..m {
        let p = poly[i];
        let q = poly[(i + 1) % m];
        let dp = dot(normal, p) - b;
        let dq = dot(normal, q) - b;
        if dp <= 0.0 {
            out.push(p);
        }
        if (dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0) {
            let t = dp / (dp - dq);
            out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
    out
}

/// Removes near-duplicate and non-convex vertices; `tol` is a length.
fn clean(mut pts: Vec<Point>, tol: f64) -> Vec<Point> {
    loop {
        let n = pts.len();
        if n < 3 {
            return pts;
        }
        let mut removed = false;
        for i in 0..n {
            let j = (i + 1) % n;
            if norm(sub(pts[i], pts[j])) <= tol {
                pts.remove(j);
                removed = true;
                break;
            }
        }
        if removed {
            continue;
        }
        for i in 0..n {
            let a = pts[(i + n - 1) % n];
            let b = pts[i];
            let c = pts[(i + 1) % n];
            let e0 = sub(b, a);
            let e1 = sub(c, b);
            if cross(e0, e1) <= 1e-14 * norm(e0) * norm(e1) {
                pts.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            return pts;
        }
    }
}

/// `Omega_s`: intersection of the edge half-planes shifted inward by `s`.
pub fn inner_parallel(poly: &ConvexPolygon, s: f64) -> Result<Eroded> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(Error::Domain(format!("erosion depth must be nonnegative, got {s}")));
    }
    if s == 0.0 {
        return Ok(Eroded::Polygon(poly.clone()));
    }
    let mut pts = poly.vertices.clone();
    for (normal, b) in poly.edge_lines() {
        pts = clip(&pts, normal, b - s);
        if pts.len() < 3 {
            return Ok(Eroded::Empty);
        }
    }
    let tol = VERTEX_TOL * poly.diameter();
    let pts = clean(pts, tol);
    if pts.len() < 3 || shoelace(&pts) <= 0.0 {
        return Ok(Eroded::Empty);
    }
    match ConvexPolygon::new(pts) {
        Ok(p) => Ok(Eroded::Polygon(p)),
        // slivers that fail strict validation have no interior at this resolution
        Err(_) => Ok(Eroded::Empty),
    }
}

/// Inradius by bisection on the emptiness of `Omega_s`.
pub fn inradius(poly: &ConvexPolygon) -> f64 {
    // an inscribed disc of radius r satisfies r P / 2 <= |Omega|
    let mut hi = 2.0 * poly.area() / poly.perimeter() * (1.0 + 1e-9);
    let mut lo = 0.0;
    while hi - lo > 1e-13 * hi {
        let mid = 0.5 * (lo + hi);
        match inner_parallel(poly, mid).expect("valid depth") {
            Eroded::Polygon(_) => lo = mid,
            Eroded::Empty => hi = mid,
        }
    }
    0.5 * (lo + hi)
}

/// Perimeter of the outer parallel body `Omega + rho B_1` (planar Steiner formula).
pub fn outer_offset_perimeter(poly: &ConvexPolygon, rho: f64) -> Result<f64> {
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(Error::Domain(format!("offset must be nonnegative, got {rho}")));
    }
    Ok(poly.perimeter() + 2.0 * PI * rho)
}

/// Disc with the same perimeter: `R_* = P / (2 pi)`.
pub fn ball_of_same_perimeter(poly: &ConvexPolygon) -> BallSpec {
    BallSpec {
        dim: 2,
        radius: poly.perimeter() / (2.0 * PI),
    }
}

/// One interval `[start, end]` of the parallel profile, on which
/// `P(s) = perimeter + slope (s - start)` and `A(s) = area - perimeter (s - start) - slope (s - start)^2 / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileInterval {
    pub start: f64,
    pub end: f64,
    pub perimeter: f64,
    pub area: f64,
    pub slope: f64,
    pub edges: usize,
}

impl ProfileInterval {
    pub fn perimeter_at(&self, s: f64) -> f64 {
        self.perimeter + self.slope * (s - self.start)
    }

    pub fn area_at(&self, s: f64) -> f64 {
        let d = s - self.start;
        self.area - self.perimeter * d - 0.5 * self.slope * d * d
    }
}

/// Piecewise description of `s -> (P(Omega_s), |Omega_s|)` on `[0, r_Omega]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParallelProfile {
    pub intervals: Vec<ProfileInterval>,
    pub inradius: f64,
}

impl ParallelProfile {
    /// `0 = s_0 < s_1 < ... < s_m = r_Omega`.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self.intervals.iter().map(|iv| iv.start).collect();
        b.push(self.inradius);
        b
    }

    fn interval(&self, s: f64) -> Option<&ProfileInterval> {
        if s < 0.0 || s > self.inradius {
            return None;
        }
        self.intervals
            .iter()
            .find(|iv| s < iv.end)
            .or(self.intervals.last())
    }

    /// `P(Omega_s)`; zero beyond the inradius.
    pub fn perimeter_at(&self, s: f64) -> f64 {
        self.interval(s).map_or(0.0, |iv| iv.perimeter_at(s).max(0.0))
    }

    /// `|Omega_s|`; zero beyond the inradius.
    pub fn area_at(&self, s: f64) -> f64 {
        self.interval(s).map_or(0.0, |iv| iv.area_at(s).max(0.0))
    }

    /// `dP/ds` on the interval containing `s`.
    pub fn slope_at(&self, s: f64) -> Option<f64> {
        self.interval(s).map(|iv| iv.slope)
    }
}

/// Intersection of the lines `n_a . x = b_a - s` and `n_b . x = b_b - s`.
fn line_meet(la: (Point, f64), lb: (Point, f64), s: f64) -> Point {
    let (na, ba) = la;
    let (nb, bb) = lb;
    let det = cross(na, nb);
    let (ra, rb) = (ba - s, bb - s);
    [(ra * nb[1] - rb * na[1]) / det, (na[0] * rb - nb[0] * ra) / det]
}

/// `tan(eps / 2)` for the exterior angle `eps` between unit normals.
fn half_tan(na: Point, nb: Point) -> f64 {
    (1.0 - dot(na, nb)) / cross(na, nb)
}

/// Exact piecewise profile of the inner parallel bodies.
///
/// Between combinatorial events each surviving edge shortens at rate
/// `tan(eps_a/2) + tan(eps_b/2)` (its two end angles), so
/// `P' = -2 sum tan(eps_v/2)` and `A' = -P`. An event is the depth at which
/// an edge shrinks to zero length; the two neighbors then become adjacent.
/// The sweep ends when fewer than three edges remain or two adjacent
/// normals stop turning counterclockwise (collapse to a segment).
pub fn parallel_profile(poly: &ConvexPolygon) -> ParallelProfile {
    let lines = poly.edge_lines();
    let scale = inradius_upper_bound(poly);
    let merge_tol = 1e-10 * scale;
    let mut active: Vec<usize> = (0..lines.len()).collect();
    let mut s = 0.0;
    let mut intervals = Vec::new();

    loop {
        let m = active.len();
        let verts: Vec<Point> = (0..m)
            .map(|j| line_meet(lines[active[(j + m - 1) % m]], lines[active[j]], s))
            .collect();
        // edge j runs from verts[j] to verts[j+1]
        let lengths: Vec<f64> = (0..m).map(|j| norm(sub(verts[(j + 1) % m], verts[j]))).collect();
        let tans: Vec<f64> = (0..m)
            .map(|j| half_tan(lines[active[(j + m - 1) % m]].0, lines[active[j]].0))
            .collect();
        let rates: Vec<f64> = (0..m).map(|j| tans[j] + tans[(j + 1) % m]).collect();
        let perimeter: f64 = lengths.iter().sum();
        let area = shoelace(&verts);
        let slope = -2.0 * tans.iter().sum::<f64>();

        let times: Vec<f64> = (0..m).map(|j| s + lengths[j].max(0.0) / rates[j]).collect();
        let next = times.iter().copied().fold(f64::INFINITY, f64::min);
        intervals.push(ProfileInterval {
            start: s,
            end: next,
            perimeter,
            area,
            slope,
            edges: m,
        });

        let survivors: Vec<usize> = (0..m)
            .filter(|&j| times[j] > next + merge_tol)
            .map(|j| active[j])
            .collect();
        s = next;
        let k = survivors.len();
        let collapsed = k < 3
            || (0..k).any(|j| {
                let na = lines[survivors[j]].0;
                let nb = lines[survivors[(j + 1) % k]].0;
                cross(na, nb) <= 1e-12
            });
        if collapsed {
            break;
        }
        active = survivors;
    }
    ParallelProfile {
        intervals,
        inradius: s,
    }
}

fn inradius_upper_bound(poly: &ConvexPolygon) -> f64 {
    2.0 * poly.area() / poly.perimeter()
}
