use crate::geometry::{ConvexPolygon, Point};
use std::collections::HashMap;

/// Conforming P1 triangulation of a convex polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct TriMesh {
    pub points: Vec<Point>,
    /// Counterclockwise vertex triples.
    pub triangles: Vec<[usize; 3]>,
    /// Edges on the polygon boundary, oriented counterclockwise.
    pub boundary_edges: Vec<[usize; 2]>,
    /// Longest edge length.
    pub h: f64,
}

impl TriMesh {
    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangles[t].map(|i| self.points[i]);
        0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
    }

    pub fn total_area(&self) -> f64 {
        (0..self.triangles.len()).map(|t| self.triangle_area(t)).sum()
    }

    pub fn boundary_length(&self) -> f64 {
        self.boundary_edges
            .iter()
            .map(|&[a, b]| {
                let (p, q) = (self.points[a], self.points[b]);
                (q[0] - p[0]).hypot(q[1] - p[1])
            })
            .sum()
    }

    fn max_edge(&self) -> f64 {
        let mut h: f64 = 0.0;
        for tri in &self.triangles {
            for e in 0..3 {
                let p = self.points[tri[e]];
                let q = self.points[tri[(e + 1) % 3]];
                h = h.max((q[0] - p[0]).hypot(q[1] - p[1]));
            }
        }
        h
    }

    /// One round of red refinement: every triangle is split into four
    /// through its edge midpoints.
    pub fn refine(&self) -> TriMesh {
        let mut points = self.points.clone();
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, points: &mut Vec<Point>| -> usize {
            let key = (a.min(b), a.max(b));
            *midpoints.entry(key).or_insert_with(|| {
                let (p, q) = (points[a], points[b]);
                points.push([0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])]);
                points.len() - 1
            })
        };
        let mut triangles = Vec::with_capacity(4 * self.triangles.len());
        for &[a, b, c] in &self.triangles {
            let ab = midpoint(a, b, &mut points);
            let bc = midpoint(b, c, &mut points);
            let ca = midpoint(c, a, &mut points);
            triangles.push([a, ab, ca]);
            triangles.push([ab, b, bc]);
            triangles.push([ca, bc, c]);
            triangles.push([ab, bc, ca]);
        }
        let mut boundary_edges = Vec::with_capacity(2 * self.boundary_edges.len());
        for &[a, b] in &self.boundary_edges {
            let m = midpoint(a, b, &mut points);
            boundary_edges.push([a, m]);
            boundary_edges.push([m, b]);
        }
        let mut mesh = TriMesh {
            points,
            triangles,
            boundary_edges,
            h: 0.0,
        };
        mesh.h = mesh.max_edge();
        mesh
    }
}

/// Longest slab count used for elongated polygons.
const MAX_SLABS: usize = 64;

/// Base triangulation followed by `levels` rounds of red refinement.
///
/// The base mesh is the fan from the area centroid. Polygons at least twice
/// as long along their thinnest direction as they are wide are first cut
/// into `floor(length / width)` slabs perpendicular to that direction and
/// each slab is fanned from its own centroid, which keeps the base
/// triangles from becoming very obtuse.
pub fn triangulate(poly: &ConvexPolygon, levels: u32) -> TriMesh {
    let (axis, lo, length, width) = thinnest_direction(poly);
    let slabs = ((length / width).floor() as usize).clamp(1, MAX_SLABS);
    let mut mesh = if slabs < 2 { fan(poly) } else { slab_fans(poly, axis, lo, length, slabs) };
    mesh.h = mesh.max_edge();
    for _ in 0..levels {
        mesh = mesh.refine();
    }
    mesh
}

fn fan(poly: &ConvexPolygon) -> TriMesh {
    let m = poly.len();
    let mut points = Vec::with_capacity(m + 1);
    points.push(poly.centroid());
    points.extend_from_slice(poly.vertices());
    TriMesh {
        points,
        triangles: (0..m).map(|i| [0, 1 + i, 1 + (i + 1) % m]).collect(),
        boundary_edges: (0..m).map(|i| [1 + i, 1 + (i + 1) % m]).collect(),
        h: 0.0,
    }
}

fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// Unit edge direction along which the perpendicular extent (width) is
/// smallest, with the minimum coordinate, length and width along it.
fn thinnest_direction(poly: &ConvexPolygon) -> (Point, f64, f64, f64) {
    let v = poly.vertices();
    let m = v.len();
    let mut best = ([1.0, 0.0], 0.0, 0.0, f64::INFINITY);
    for i in 0..m {
        let (p, q) = (v[i], v[(i + 1) % m]);
        let len = (q[0] - p[0]).hypot(q[1] - p[1]);
        let axis = [(q[0] - p[0]) / len, (q[1] - p[1]) / len];
        let normal = [-axis[1], axis[0]];
        let t: Vec<f64> = v.iter().map(|&x| dot(axis, x)).collect();
        let n: Vec<f64> = v.iter().map(|&x| dot(normal, x)).collect();
        let fold = |xs: &[f64]| {
            let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            (lo, hi - lo)
        };
        let (t_lo, length) = fold(&t);
        let (_, width) = fold(&n);
        if width < best.3 {
            best = (axis, t_lo, length, width);
        }
    }
    best
}

fn slab_fans(poly: &ConvexPolygon, axis: Point, lo: f64, length: f64, slabs: usize) -> TriMesh {
    let v = poly.vertices();
    let m = v.len();
    let coord = |x: Point| dot(axis, x) - lo;
    let spacing = length / slabs as f64;
    // cuts keep clear of vertices so every cut meets two edge interiors
    let cuts: Vec<f64> = (1..slabs)
        .map(|j| {
            let mut c = j as f64 * spacing;
            while v.iter().any(|&x| (coord(x) - c).abs() < 1e-3 * spacing) {
                c += 0.01 * spacing;
            }
            c
        })
        .collect();

    // boundary cycle with the cut points inserted; `cut` tags inserted points
    struct Node {
        point: Point,
        cut: Option<usize>,
        t: f64,
    }
    let mut cycle: Vec<Node> = Vec::new();
    for i in 0..m {
        let (p, q) = (v[i], v[(i + 1) % m]);
        cycle.push(Node { point: p, cut: None, t: coord(p) });
        let (tp, tq) = (coord(p), coord(q));
        let mut crossings: Vec<(f64, usize)> = cuts
            .iter()
            .enumerate()
            .filter(|&(_, &c)| (tp < c && c < tq) || (tq < c && c < tp))
            .map(|(j, &c)| ((c - tp) / (tq - tp), j))
            .collect();
        crossings.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (s, j) in crossings {
            let point = [p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])];
            cycle.push(Node { point, cut: Some(j), t: cuts[j] });
        }
    }

    let mut points: Vec<Point> = cycle.iter().map(|n| n.point).collect();
    let nb = cycle.len();
    let boundary_edges = (0..nb).map(|i| [i, (i + 1) % nb]).collect();
    let mut triangles = Vec::new();
    for k in 0..slabs {
        let a = if k == 0 { f64::NEG_INFINITY } else { cuts[k - 1] };
        let b = cuts.get(k).copied().unwrap_or(f64::INFINITY);
        let members: Vec<usize> = (0..nb)
            .filter(|&i| match cycle[i].cut {
                Some(j) => j + 1 == k || j == k,
                None => a < cycle[i].t && cycle[i].t < b,
            })
            .collect();
        // filtering the counterclockwise cycle keeps the slab counterclockwise
        let ring = members;
        let centre = polygon_centroid(&ring.iter().map(|&i| points[i]).collect::<Vec<_>>());
        let c = points.len();
        points.push(centre);
        for r in 0..ring.len() {
            triangles.push([c, ring[r], ring[(r + 1) % ring.len()]]);
        }
    }
    TriMesh {
        points,
        triangles,
        boundary_edges,
        h: 0.0,
    }
}

fn polygon_centroid(v: &[Point]) -> Point {
    let o = v[0];
    let (mut a, mut cx, mut cy) = (0.0, 0.0, 0.0);
    for i in 1..v.len() - 1 {
        let (p, q) = ([v[i][0] - o[0], v[i][1] - o[1]], [v[i + 1][0] - o[0], v[i + 1][1] - o[1]]);
        let cr = p[0] * q[1] - p[1] * q[0];
        a += cr;
        cx += cr * (p[0] + q[0]);
        cy += cr * (p[1] + q[1]);
    }
    [o[0] + cx / (3.0 * a), o[1] + cy / (3.0 * a)]
}
