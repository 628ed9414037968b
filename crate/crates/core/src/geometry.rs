//! Planar convex polygon primitives.
//!
//! Everything here works on counterclockwise convex polygons in the plane.
//! A single relative tolerance ([`GeomConfig`]) scaled by the polygon diameter
//! governs containment, degeneracy and vertex deduplication.
//!
//! Conventions
//! - A [`HalfPlane`] with normal `ω` and offset `λ` is the closed set `{x·ω <= λ}`.
//!   Its boundary line is `{x·ω = λ}` and the opposite open side `{x·ω > λ}` is
//!   the *cap side*.
//! - Shadow coordinates along a direction `ω` are measured along `ω⊥ = (-ω₂, ω₁)`;
//!   a point is written `s·ω⊥ + t·ω`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{HeartError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-D cross product.
    #[inline]
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    #[inline]
    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Unit vector in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction(Point);

impl Direction {
    pub const E1: Direction = Direction(Point { x: 1.0, y: 0.0 });
    pub const E2: Direction = Direction(Point { x: 0.0, y: 1.0 });

    /// Normalizes `(x, y)`; fails on a zero or non-finite vector.
    pub fn new(x: f64, y: f64) -> Result<Self> {
        let n = x.hypot(y);
        if !(n.is_finite() && n > 0.0) {
            return Err(HeartError::InvalidDirection(format!("({x}, {y})")));
        }
        Ok(Self(Point::new(x / n, y / n)))
    }

    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self(Point::new(c, s))
    }

    #[inline]
    pub fn vec(self) -> Point {
        self.0
    }

    #[inline]
    pub fn x(self) -> f64 {
        self.0.x
    }

    #[inline]
    pub fn y(self) -> f64 {
        self.0.y
    }

    pub fn angle(self) -> f64 {
        self.0.y.atan2(self.0.x)
    }

    /// `ω⊥ = (-ω₂, ω₁)`, the axis carrying shadow coordinates.
    #[inline]
    pub fn perp(self) -> Direction {
        Direction(Point::new(-self.0.y, self.0.x))
    }

    #[inline]
    pub fn dot(self, p: Point) -> f64 {
        self.0.dot(p)
    }

    /// Reflection `A_ω v = v - 2(v·ω)ω` of a vector through the line `ω⊥`.
    #[inline]
    pub fn reflect_vec(self, v: Point) -> Point {
        v - self.0 * (2.0 * v.dot(self.0))
    }
}

impl Neg for Direction {
    type Output = Direction;
    fn neg(self) -> Direction {
        Direction(-self.0)
    }
}

/// Closed half-plane `{x : x·normal <= offset}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlane {
    pub normal: Direction,
    pub offset: f64,
}

impl HalfPlane {
    pub fn new(normal: Direction, offset: f64) -> Self {
        Self { normal, offset }
    }

    /// Signed distance of `p` past the boundary line (positive on the cap side).
    #[inline]
    pub fn excess(&self, p: Point) -> f64 {
        self.normal.dot(p) - self.offset
    }

    #[inline]
    pub fn contains(&self, p: Point, eps: f64) -> bool {
        self.excess(p) <= eps
    }

    /// The opposite closed half-plane `{x·ω >= λ}`, written as `{x·(-ω) <= -λ}`.
    pub fn complement(&self) -> HalfPlane {
        HalfPlane::new(-self.normal, -self.offset)
    }

    /// Reflection `T(x) = A_ω x + 2λω` through the boundary line.
    #[inline]
    pub fn reflect_point(&self, p: Point) -> Point {
        p - self.normal.vec() * (2.0 * self.excess(p))
    }
}

/// Shadow of a polygon along a direction: the interval of `ω⊥` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShadowInterval {
    pub lo: f64,
    pub hi: f64,
}

impl ShadowInterval {
    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    pub fn contains(&self, s: f64, eps: f64) -> bool {
        s >= self.lo - eps && s <= self.hi + eps
    }
}

/// Tolerance model: `eps = rel_eps * diameter`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeomConfig {
    pub rel_eps: f64,
}

impl Default for GeomConfig {
    fn default() -> Self {
        Self { rel_eps: 1e-9 }
    }
}

impl GeomConfig {
    pub fn new(rel_eps: f64) -> Result<Self> {
        if !(rel_eps.is_finite() && rel_eps > 0.0) {
            return Err(HeartError::ToleranceTooSmall { tol: rel_eps, floor: 0.0 });
        }
        Ok(Self { rel_eps })
    }

    /// Absolute tolerance for bodies of the given diameter.
    pub fn eps(&self, diameter: f64) -> f64 {
        self.rel_eps * diameter
    }

    pub fn eps_for(&self, k: &ConvexPolygon) -> f64 {
        self.eps(k.diameter())
    }
}

/// Convex polygon, vertices in counterclockwise order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl ConvexPolygon {
    /// Validates the vertex cycle with the default tolerance.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        Self::with_config(vertices, &GeomConfig::default())
    }

    pub fn with_config(vertices: Vec<Point>, cfg: &GeomConfig) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(HeartError::InvalidPolygon(format!("{n} vertices, need at least 3")));
        }
        if vertices.iter().any(|p| !(p.x.is_finite() && p.y.is_finite())) {
            return Err(HeartError::InvalidPolygon("non-finite coordinate".into()));
        }
        let diam = diameter_of(&vertices);
        let eps = cfg.eps(diam);
        for i in 0..n {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            if a.dist(b) <= eps {
                return Err(HeartError::InvalidPolygon(format!(
                    "vertices {i} and {} coincide",
                    (i + 1) % n
                )));
            }
        }
        if signed_area(&vertices) <= 0.0 {
            return Err(HeartError::InvalidPolygon("orientation is not counterclockwise".into()));
        }
        for i in 0..n {
            let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            // signed distance of c from the directed line a->b
            let turn = (b - a).cross(c - a) / a.dist(b);
            if turn < -eps {
                return Err(HeartError::InvalidPolygon(format!("reflex turn at vertex {}", (i + 1) % n)));
            }
        }
        // A convex cycle winds exactly once.
        let mut winding = 0.0;
        for i in 0..n {
            let e0 = vertices[(i + 1) % n] - vertices[i];
            let e1 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
            winding += e0.cross(e1).atan2(e0.dot(e1));
        }
        if (winding - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(HeartError::InvalidPolygon("vertex cycle is not simple".into()));
        }
        Ok(Self { vertices })
    }

    /// Builds a polygon from the output of a clipping step: deduplicates,
    /// drops collinear points and restores counterclockwise order.
    pub(crate) fn from_clipped(points: Vec<Point>, eps: f64) -> Option<Self> {
        let mut pts = dedup_cycle(points, eps);
        if signed_area(&pts) < 0.0 {
            pts.reverse();
        }
        let pts = drop_collinear(pts, eps);
        if pts.len() < 3 || signed_area(&pts) <= 0.0 {
            return None;
        }
        Some(Self { vertices: pts })
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

    /// Edge `i` runs from vertex `i` to vertex `i+1`.
    pub fn edge(&self, i: usize) -> (Point, Point) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    /// Outward unit normal of edge `i`.
    pub fn edge_normal(&self, i: usize) -> Direction {
        let (a, b) = self.edge(i);
        let t = b - a;
        Direction::new(t.y, -t.x).expect("validated polygon has no zero-length edge")
    }

    /// Supporting half-plane of edge `i`; the polygon is the intersection of these.
    pub fn edge_halfplane(&self, i: usize) -> HalfPlane {
        let n = self.edge_normal(i);
        HalfPlane::new(n, n.dot(self.vertices[i]))
    }

    pub fn edge_halfplanes(&self) -> Vec<HalfPlane> {
        (0..self.len()).map(|i| self.edge_halfplane(i)).collect()
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.dist(b)).sum()
    }

    pub fn centroid(&self) -> Point {
        centroid_of(&self.vertices)
    }

    pub fn diameter(&self) -> f64 {
        diameter_of(&self.vertices)
    }

    /// Distance from `p` to the boundary, positive inside, negative outside.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        (0..self.len())
            .map(|i| -self.edge_halfplane(i).excess(p))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains_point(&self, p: Point, eps: f64) -> bool {
        self.boundary_distance(p) >= -eps
    }

    pub fn translate(&self, v: Point) -> ConvexPolygon {
        Self { vertices: self.vertices.iter().map(|&p| p + v).collect() }
    }

    pub fn scale(&self, s: f64) -> ConvexPolygon {
        assert!(s > 0.0);
        Self { vertices: self.vertices.iter().map(|&p| p * s).collect() }
    }

    /// Mirror image through the boundary line of `h`, re-oriented counterclockwise.
    pub fn mirror(&self, h: &HalfPlane) -> ConvexPolygon {
        let mut v: Vec<Point> = self.vertices.iter().map(|&p| h.reflect_point(p)).collect();
        v.reverse();
        Self { vertices: v }
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        bbox_of(&self.vertices)
    }
}

/// Result of an intersection or clipping step; degenerate outcomes are kept.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    Empty,
    Point { at: Point },
    Segment { a: Point, b: Point },
    Polygon { polygon: ConvexPolygon },
}

impl Region {
    pub fn points(&self) -> Vec<Point> {
        match self {
            Region::Empty => vec![],
            Region::Point { at } => vec![*at],
            Region::Segment { a, b } => vec![*a, *b],
            Region::Polygon { polygon } => polygon.vertices.clone(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Region::Empty)
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Region::Empty => "empty",
            Region::Point { .. } => "point",
            Region::Segment { .. } => "segment",
            Region::Polygon { .. } => "polygon",
        }
    }

    pub fn area(&self) -> f64 {
        match self {
            Region::Polygon { polygon } => polygon.area(),
            _ => 0.0,
        }
    }

    /// `max x·ω` over the region; `-inf` when empty.
    pub fn support(&self, w: Direction) -> f64 {
        self.points().into_iter().map(|p| w.dot(p)).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn width(&self, w: Direction) -> f64 {
        self.support(w) + self.support(-w)
    }

    pub fn reflect(&self, h: &HalfPlane) -> Region {
        match self {
            Region::Empty => Region::Empty,
            Region::Point { at } => Region::Point { at: h.reflect_point(*at) },
            Region::Segment { a, b } => Region::Segment { a: h.reflect_point(*b), b: h.reflect_point(*a) },
            Region::Polygon { polygon } => Region::Polygon { polygon: polygon.mirror(h) },
        }
    }

    /// Euclidean distance from `p` to the region (0 inside).
    pub fn distance_to(&self, p: Point) -> f64 {
        match self {
            Region::Empty => f64::INFINITY,
            Region::Point { at } => p.dist(*at),
            Region::Segment { a, b } => point_segment_distance(p, *a, *b),
            Region::Polygon { polygon } => {
                if polygon.boundary_distance(p) >= 0.0 {
                    0.0
                } else {
                    polygon
                        .edges()
                        .map(|(a, b)| point_segment_distance(p, a, b))
                        .fold(f64::INFINITY, f64::min)
                }
            }
        }
    }

    /// Clips to `{x·n <= c}` with slack `eps` and reclassifies the result.
    pub fn clip_halfplane(&self, h: &HalfPlane, eps: f64) -> Region {
        let pts = self.points();
        if pts.is_empty() {
            return Region::Empty;
        }
        classify(clip_cycle(&pts, h, eps), eps)
    }
}

pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Symmetric Hausdorff distance between two regions.
pub fn hausdorff(a: &Region, b: &Region) -> f64 {
    // For convex sets the farthest point of one from the other is a vertex.
    let one = |x: &Region, y: &Region| x.points().into_iter().map(|p| y.distance_to(p)).fold(0.0, f64::max);
    one(a, b).max(one(b, a))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metrics {
    pub area: f64,
    pub perimeter: f64,
    pub centroid: Point,
    pub diameter: f64,
}

pub fn metrics(k: &ConvexPolygon) -> Metrics {
    Metrics {
        area: k.area(),
        perimeter: k.perimeter(),
        centroid: k.centroid(),
        diameter: k.diameter(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChebyshevCenter {
    pub incenter: Point,
    pub inradius: f64,
    /// False when the set of deepest points is a nondegenerate segment.
    pub unique: bool,
}

/// Deepest interior point: bisection on `r` for the last nonempty inner
/// parallel body `{x : n_i·x + r <= c_i}`, whose farthest vertex pair spans the
/// set of deepest points.
pub fn chebyshev_center(k: &ConvexPolygon, cfg: &GeomConfig) -> ChebyshevCenter {
    let planes = k.edge_halfplanes();
    let eps = cfg.eps_for(k);
    let diam = k.diameter();
    let inner = |r: f64| {
        let mut poly = k.vertices.clone();
        for h in &planes {
            poly = clip_exact(&poly, h.normal, h.offset - r);
            if poly.is_empty() {
                break;
            }
        }
        poly
    };
    let (mut lo, mut hi) = (0.0, 0.5 * diam);
    let mut body = k.vertices.clone();
    while hi - lo > 1e-15 * diam {
        let mid = 0.5 * (lo + hi);
        let b = inner(mid);
        if b.is_empty() {
            hi = mid;
        } else {
            lo = mid;
            body = b;
        }
    }
    let (a, b) = farthest_pair(&body);
    ChebyshevCenter {
        incenter: a.lerp(b, 0.5),
        inradius: lo,
        unique: a.dist(b) <= eps.max(1e-12 * diam) * 10.0,
    }
}

/// One Sutherland–Hodgman step against `{x·n <= c}` without a tolerance band.
fn clip_exact(poly: &[Point], n: Direction, c: f64) -> Vec<Point> {
    let m = poly.len();
    let mut out = Vec::with_capacity(m + 1);
    for i in 0..m {
        let p = poly[i];
        let q = poly[(i + 1) % m];
        let (fp, fq) = (n.dot(p) - c, n.dot(q) - c);
        if fp <= 0.0 {
            out.push(p);
        }
        if (fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0) {
            out.push(p.lerp(q, fp / (fp - fq)));
        }
    }
    out
}

/// `h_K(ω) = max_j x_j·ω`.
pub fn support(k: &ConvexPolygon, w: Direction) -> f64 {
    k.vertices.iter().map(|&p| w.dot(p)).fold(f64::NEG_INFINITY, f64::max)
}

/// `w_K(ω) = h_K(ω) + h_K(-ω)`.
pub fn width(k: &ConvexPolygon, w: Direction) -> f64 {
    support(k, w) + support(k, -w)
}

pub fn shadow(k: &ConvexPolygon, w: Direction) -> ShadowInterval {
    let u = w.perp();
    let (lo, hi) = k
        .vertices
        .iter()
        .map(|&p| u.dot(p))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s), hi.max(s)));
    ShadowInterval { lo, hi }
}

/// The cap `K ∩ {x·ω >= λ}` of `K` beyond the boundary line of `h`.
pub fn clip(k: &ConvexPolygon, h: &HalfPlane, cfg: &GeomConfig) -> Region {
    let eps = cfg.eps_for(k);
    classify(clip_cycle(&k.vertices, &h.complement(), eps), eps)
}

/// Mirror image of a polygon through the boundary line of `h`.
pub fn reflect(p: &ConvexPolygon, h: &HalfPlane) -> ConvexPolygon {
    p.mirror(h)
}

/// Whether every point of `a` lies in `b` up to slack `eps`.
pub fn contains(a: &Region, b: &ConvexPolygon, eps: f64) -> bool {
    let planes = b.edge_halfplanes();
    a.points().into_iter().all(|p| planes.iter().all(|h| h.contains(p, eps)))
}

/// Intersection of half-planes, computed by clipping the box `[lo, hi]` in turn.
pub fn halfplane_intersection(planes: &[HalfPlane], lo: Point, hi: Point, eps: f64) -> Region {
    let mut region = Region::Polygon {
        polygon: ConvexPolygon {
            vertices: vec![lo, Point::new(hi.x, lo.y), hi, Point::new(lo.x, hi.y)],
        },
    };
    for h in planes {
        region = region.clip_halfplane(h, eps);
        if region.is_empty() {
            break;
        }
    }
    region
}

/// Parameter interval of `K ∩ {s·ω⊥ + t·ω}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Chord {
    pub a: f64,
    pub b: f64,
}

impl Chord {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn len(&self) -> f64 {
        self.b - self.a
    }
}

/// Chord of `K` along `ω` over the shadow coordinate `s`; `None` outside the shadow.
///
/// Vertices within `eps` of the line contribute their own `t`; edges that
/// straddle the line contribute their crossing. An edge lying on the line thus
/// yields its full extent.
pub fn chord_with_eps(k: &ConvexPolygon, s: f64, w: Direction, eps: f64) -> Option<Chord> {
    let u = w.perp();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut push = |t: f64| {
        lo = lo.min(t);
        hi = hi.max(t);
    };
    let n = k.len();
    for i in 0..n {
        let (p, q) = k.edge(i);
        let (sp, sq) = (u.dot(p) - s, u.dot(q) - s);
        if sp.abs() <= eps {
            push(w.dot(p));
        }
        if (sp < -eps && sq > eps) || (sp > eps && sq < -eps) {
            let t = sp / (sp - sq);
            push(w.dot(p.lerp(q, t)));
        }
    }
    (lo <= hi).then_some(Chord { a: lo, b: hi })
}

pub fn chord(k: &ConvexPolygon, s: f64, w: Direction, cfg: &GeomConfig) -> Option<Chord> {
    chord_with_eps(k, s, w, cfg.eps_for(k))
}

// ---------------------------------------------------------------------------
// helpers

pub(crate) fn signed_area(v: &[Point]) -> f64 {
    let n = v.len();
    if n < 3 {
        return 0.0;
    }
    let o = v[0];
    let mut s = 0.0;
    for i in 1..n - 1 {
        s += (v[i] - o).cross(v[i + 1] - o);
    }
    0.5 * s
}

pub(crate) fn centroid_of(v: &[Point]) -> Point {
    let o = v[0];
    let (mut cx, mut cy, mut a2) = (0.0, 0.0, 0.0);
    for i in 1..v.len() - 1 {
        let (p, q) = (v[i] - o, v[i + 1] - o);
        let cr = p.cross(q);
        a2 += cr;
        cx += (p.x + q.x) * cr;
        cy += (p.y + q.y) * cr;
    }
    o + Point::new(cx / (3.0 * a2), cy / (3.0 * a2))
}

pub(crate) fn diameter_of(v: &[Point]) -> f64 {
    let (a, b) = farthest_pair(v);
    a.dist(b)
}

fn farthest_pair(v: &[Point]) -> (Point, Point) {
    let mut best = (v[0], v[0]);
    let mut d = -1.0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let dd = v[i].dist(v[j]);
            if dd > d {
                d = dd;
                best = (v[i], v[j]);
            }
        }
    }
    best
}

pub(crate) fn bbox_of(v: &[Point]) -> (Point, Point) {
    v.iter().fold(
        (Point::new(f64::INFINITY, f64::INFINITY), Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY)),
        |(lo, hi), p| (Point::new(lo.x.min(p.x), lo.y.min(p.y)), Point::new(hi.x.max(p.x), hi.y.max(p.y))),
    )
}

/// One Sutherland–Hodgman step against `{x·n <= c}`; points within `eps` of
/// the line count as inside. Works on degenerate cycles of one or two points.
fn clip_cycle(pts: &[Point], h: &HalfPlane, eps: f64) -> Vec<Point> {
    let n = pts.len();
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let (cur, nxt) = (pts[i], pts[(i + 1) % n]);
        let (dc, dn) = (h.excess(cur), h.excess(nxt));
        let (cur_in, nxt_in) = (dc <= eps, dn <= eps);
        if cur_in {
            out.push(cur);
        }
        if cur_in != nxt_in {
            // Crossing of the exact line; skipped when the inside endpoint
            // already sits in the tolerance band.
            let inside_d = if cur_in { dc } else { dn };
            if inside_d <= 0.0 {
                let t = dc / (dc - dn);
                out.push(cur.lerp(nxt, t));
            }
        }
    }
    out
}

fn dedup_cycle(pts: Vec<Point>, eps: f64) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(pts.len());
    for p in pts {
        if out.last().is_none_or(|q: &Point| q.dist(p) > eps) {
            out.push(p);
        }
    }
    while out.len() > 1 && out[0].dist(*out.last().unwrap()) <= eps {
        out.pop();
    }
    out
}

fn drop_collinear(mut pts: Vec<Point>, eps: f64) -> Vec<Point> {
    let mut changed = true;
    while changed && pts.len() >= 3 {
        changed = false;
        let n = pts.len();
        for i in 0..n {
            let (a, b, c) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
            let base = a.dist(c);
            if base > 0.0 && ((c - a).cross(b - a) / base).abs() <= eps {
                pts.remove(i);
                changed = true;
                break;
            }
        }
    }
    pts
}

/// Classifies a clipped point cycle as empty, point, segment or polygon by extent.
fn classify(pts: Vec<Point>, eps: f64) -> Region {
    let pts = dedup_cycle(pts, eps);
    if pts.is_empty() {
        return Region::Empty;
    }
    let (a, b) = farthest_pair(&pts);
    let len = a.dist(b);
    if len <= eps {
        let c = pts.iter().fold(Point::ORIGIN, |s, &p| s + p) * (1.0 / pts.len() as f64);
        return Region::Point { at: c };
    }
    let axis = (b - a) * (1.0 / len);
    let thickness = pts.iter().map(|&p| axis.cross(p - a).abs()).fold(0.0, f64::max);
    if thickness <= eps {
        return Region::Segment { a, b };
    }
    match ConvexPolygon::from_clipped(pts, eps) {
        Some(polygon) => Region::Polygon { polygon },
        None => Region::Segment { a, b },
    }
}

/// Regular `n`-gon centered at `c` with circumradius `r`, first vertex at angle `phase`.
pub fn regular_polygon(n: usize, r: f64, c: Point, phase: f64) -> Result<ConvexPolygon> {
    let v = (0..n)
        .map(|i| {
            let t = phase + std::f64::consts::TAU * i as f64 / n as f64;
            c + Point::new(r * t.cos(), r * t.sin())
        })
        .collect();
    ConvexPolygon::new(v)
}
