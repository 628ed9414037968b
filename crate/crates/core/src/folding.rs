//! Maximal folding function and the heart of a convex polygon.
//!
//! `R_K(ω)` is the smallest `λ` such that reflecting the cap `K ∩ {x·ω > λ}`
//! through the line `{x·ω = λ}` lands inside `K`. It equals the maximum over the
//! shadow of the chord-midpoint function `f_ω(s) = (a_ω(s) + b_ω(s)) / 2`, and for
//! a polygon `f_ω` is piecewise linear with breakpoints at the vertex
//! projections, so the maximum is found by visiting the vertices only
//! ([`folding_value`]). [`folding_oracle`] evaluates the defining minimum
//! directly by bisection on reflect-and-contain and is kept independent of the
//! chord route.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{HeartError, Result};
use crate::geometry::{
    self, chord_with_eps, contains, halfplane_intersection, ConvexPolygon, Direction, GeomConfig, HalfPlane, Point,
    Region,
};

/// Value of `R_K(ω)` together with the maximizing vertex projection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FoldingValue {
    pub direction: Direction,
    pub r: f64,
    /// Shadow coordinate (along `ω⊥`) where `f_ω` is maximal.
    pub witness: f64,
    /// Vertex whose projection is `witness`.
    pub witness_vertex: usize,
}

/// `R_K` sampled on a direction set, ordered by direction angle.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct FoldingProfile {
    pub entries: Vec<FoldingValue>,
}

impl FoldingProfile {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn halfplanes(&self) -> Vec<HalfPlane> {
        self.entries.iter().map(|e| HalfPlane::new(e.direction, e.r)).collect()
    }
}

/// Chord midpoint `f_ω(s)`.
pub fn f_omega(k: &ConvexPolygon, w: Direction, s: f64, cfg: &GeomConfig) -> Result<f64> {
    geometry::chord(k, s, w, cfg)
        .map(|c| c.midpoint())
        .ok_or(HeartError::OutsideShadow(s))
}

/// `f_ω` at every vertex projection, in vertex order.
fn vertex_midpoints(k: &ConvexPolygon, w: Direction, eps: f64) -> Vec<(f64, f64)> {
    let u = w.perp();
    k.vertices()
        .iter()
        .map(|&p| {
            let s = u.dot(p);
            // The vertex itself lies on the line, so the chord is never empty.
            let c = chord_with_eps(k, s, w, eps).expect("vertex projection lies in the shadow");
            (s, c.midpoint())
        })
        .collect()
}

/// `R_K(ω) = max_j f_ω(P_ω x_j)`; ties go to the smallest vertex index.
pub fn folding_value(k: &ConvexPolygon, w: Direction, cfg: &GeomConfig) -> FoldingValue {
    let mids = vertex_midpoints(k, w, cfg.eps_for(k));
    let mut best = 0;
    for (j, &(_, f)) in mids.iter().enumerate().skip(1) {
        if f > mids[best].1 {
            best = j;
        }
    }
    FoldingValue { direction: w, r: mids[best].1, witness: mids[best].0, witness_vertex: best }
}

/// `min_j f_ω(P_ω x_j)`, which equals `-R_K(-ω)`.
pub fn folding_min(k: &ConvexPolygon, w: Direction, cfg: &GeomConfig) -> f64 {
    vertex_midpoints(k, w, cfg.eps_for(k))
        .into_iter()
        .map(|(_, f)| f)
        .fold(f64::INFINITY, f64::min)
}

/// Whether the cap beyond `{x·ω = λ}` reflects into `K` (slack `eps`).
pub fn reflection_feasible(k: &ConvexPolygon, w: Direction, lambda: f64, cfg: &GeomConfig) -> bool {
    let h = HalfPlane::new(w, lambda);
    let cap = geometry::clip(k, &h, cfg);
    contains(&cap.reflect(&h), k, cfg.eps_for(k))
}

/// `R_K(ω)` straight from its definition, by bisection on `λ`.
///
/// `tol` is absolute and must be at least `10·eps`.
pub fn folding_oracle(k: &ConvexPolygon, w: Direction, tol: f64, cfg: &GeomConfig) -> Result<f64> {
    let floor = 10.0 * cfg.eps_for(k);
    if !(tol >= floor) {
        return Err(HeartError::ToleranceTooSmall { tol, floor });
    }
    let mut lo = -geometry::support(k, -w);
    let mut hi = geometry::support(k, w);
    // An empty cap always folds.
    assert!(reflection_feasible(k, w, hi, cfg), "reflection of an empty cap must be feasible");
    if reflection_feasible(k, w, lo, cfg) {
        return Ok(lo);
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if reflection_feasible(k, w, mid, cfg) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    debug_assert!(!reflection_feasible(k, w, lo, cfg));
    Ok(hi)
}

/// Heart approximation: the half-planes `{x·ω <= R_K(ω)}` over a finite
/// direction set, together with the edges of `K`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeartRegion {
    pub region: Region,
    #[serde(skip)]
    pub planes: Vec<HalfPlane>,
}

impl HeartRegion {
    pub fn kind(&self) -> &'static str {
        self.region.kind_name()
    }

    pub fn vertices(&self) -> Vec<Point> {
        self.region.points()
    }

    pub fn distance_to(&self, p: Point) -> f64 {
        self.region.distance_to(p)
    }

    pub fn support(&self, w: Direction) -> f64 {
        self.region.support(w)
    }

    pub fn width(&self, w: Direction) -> f64 {
        self.region.width(w)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Heart {
    pub region: HeartRegion,
    pub profile: FoldingProfile,
}

/// Uniform angles, edge normals of `K`, the coordinate axes, and `extra`;
/// sorted by angle in `[0, 2π)` with near-duplicates merged.
pub fn direction_set(k: &ConvexPolygon, n_dirs: usize, extra: &[Direction]) -> Vec<Direction> {
    let mut dirs: Vec<Direction> = (0..n_dirs).map(|i| Direction::from_angle(TAU * i as f64 / n_dirs as f64)).collect();
    dirs.extend((0..k.len()).map(|i| k.edge_normal(i)));
    dirs.extend([Direction::E1, -Direction::E1, Direction::E2, -Direction::E2]);
    dirs.extend_from_slice(extra);
    let key = |d: &Direction| d.angle().rem_euclid(TAU);
    dirs.sort_by(|a, b| key(a).total_cmp(&key(b)));
    let mut out: Vec<Direction> = Vec::with_capacity(dirs.len());
    for d in dirs {
        // keep the first of a near-duplicate run; exact axes sort before their rounded twins
        if out.last().is_none_or(|p: &Direction| p.vec().dist(d.vec()) > 1e-12) {
            out.push(d);
        }
    }
    if out.len() > 1 && out[0].vec().dist(out[out.len() - 1].vec()) <= 1e-12 {
        out.pop();
    }
    out
}

/// Folding profile over an explicit direction set.
pub fn folding_profile(k: &ConvexPolygon, dirs: &[Direction], cfg: &GeomConfig) -> FoldingProfile {
    FoldingProfile { entries: dirs.iter().map(|&w| folding_value(k, w, cfg)).collect() }
}

/// Outer approximation of the heart on `n_dirs` uniform directions plus the
/// edge normals, the axes and `extra`. Refining the direction set can only
/// shrink the result.
pub fn heart(k: &ConvexPolygon, n_dirs: usize, extra: &[Direction], cfg: &GeomConfig) -> Result<Heart> {
    if n_dirs < 8 {
        return Err(HeartError::InvalidDirection(format!("need at least 8 directions, got {n_dirs}")));
    }
    let dirs = direction_set(k, n_dirs, extra);
    let profile = folding_profile(k, &dirs, cfg);
    let region = heart_from_profile(k, &profile, cfg)?;
    Ok(Heart { region, profile })
}

pub fn heart_from_profile(k: &ConvexPolygon, profile: &FoldingProfile, cfg: &GeomConfig) -> Result<HeartRegion> {
    let mut planes = k.edge_halfplanes();
    planes.extend(profile.halfplanes());
    let (lo, hi) = k.bounding_box();
    let region = halfplane_intersection(&planes, lo, hi, cfg.eps_for(k));
    if region.is_empty() {
        return Err(HeartError::EmptyHeart);
    }
    Ok(HeartRegion { region, planes })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WidthBound {
    /// `R_K(ω) + R_K(-ω) = osc f_ω`.
    pub bound: f64,
    pub r_plus: f64,
    pub r_minus: f64,
    /// Width of the supplied heart along `ω`, if any.
    pub heart_width: Option<f64>,
}

/// Upper bound on the heart's width along `ω` by the oscillation of `f_ω`.
pub fn width_bound(k: &ConvexPolygon, w: Direction, heart: Option<&HeartRegion>, cfg: &GeomConfig) -> WidthBound {
    let r_plus = folding_value(k, w, cfg).r;
    let r_minus = folding_value(k, -w, cfg).r;
    WidthBound { bound: r_plus + r_minus, r_plus, r_minus, heart_width: heart.map(|h| h.width(w)) }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BallRadius {
    pub radius: f64,
    /// Largest distance from the centroid to a heart vertex.
    pub farthest_vertex: f64,
    /// `farthest_vertex <= radius + eps`.
    pub contains_heart: bool,
}

/// Radius of a ball about the centroid containing the heart:
/// `max_θ min_{ω·θ > 0} (R_K(ω) - x̄·ω) / (θ·ω)` over sampled `θ`.
///
/// The `θ` samples are 720 uniform angles plus the directions from the
/// centroid to each heart vertex, so the farthest vertex is always probed.
pub fn heart_ball_radius(
    k: &ConvexPolygon,
    profile: &FoldingProfile,
    heart: &HeartRegion,
    cfg: &GeomConfig,
) -> BallRadius {
    let c = k.centroid();
    let eps = cfg.eps_for(k);
    let verts = heart.vertices();
    let mut thetas: Vec<Direction> = (0..720).map(|i| Direction::from_angle(PI * i as f64 / 360.0)).collect();
    thetas.extend(verts.iter().filter_map(|&v| Direction::new(v.x - c.x, v.y - c.y).ok()));

    let reach = |theta: Direction| {
        profile
            .entries
            .iter()
            .filter_map(|e| {
                let cos = theta.dot(e.direction.vec());
                (cos > 1e-12).then(|| (e.r - e.direction.dot(c)) / cos)
            })
            .fold(f64::INFINITY, f64::min)
    };
    let radius = thetas.into_iter().map(reach).fold(0.0_f64, f64::max);
    let farthest_vertex = verts.iter().map(|v| v.dist(c)).fold(0.0, f64::max);
    BallRadius { radius, farthest_vertex, contains_heart: farthest_vertex <= radius + eps }
}

// ---------------------------------------------------------------------------
// Normal cones and the necessary optimality condition

/// Closed convex cone of directions in the plane: the rays with angle in
/// `[start, start + span]`, `0 <= span < π`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalCone {
    pub start: f64,
    pub span: f64,
}

const ANGLE_TOL: f64 = 1e-9;

impl NormalCone {
    fn between(a: Point, b: Point) -> Self {
        let start = a.y.atan2(a.x);
        let span = (b.y.atan2(b.x) - start).rem_euclid(TAU);
        Self { start, span: if span > TAU - ANGLE_TOL { 0.0 } else { span } }
    }

    fn end(&self) -> f64 {
        self.start + self.span
    }

    pub fn contains_angle(&self, theta: f64) -> bool {
        let d = (theta - self.start).rem_euclid(TAU);
        d <= self.span + ANGLE_TOL || d >= TAU - ANGLE_TOL
    }

    pub fn contains_cone(&self, other: &NormalCone) -> bool {
        self.span + ANGLE_TOL >= other.span && self.contains_angle(other.start) && self.contains_angle(other.end())
    }

    /// Image under `A_ω`; reflection reverses the angular order.
    pub fn reflect(&self, w: Direction) -> NormalCone {
        let phi = w.angle() + PI / 2.0;
        let refl = |t: f64| 2.0 * phi - t;
        NormalCone { start: refl(self.end()), span: self.span }
    }

    /// Intersection with another cone, `None` if only the origin is shared.
    pub fn intersect(&self, other: &NormalCone) -> Option<NormalCone> {
        if other.contains_cone(self) {
            return Some(*self);
        }
        if self.contains_cone(other) {
            return Some(*other);
        }
        let start = [self.start, other.start]
            .into_iter()
            .find(|&s| self.contains_angle(s) && other.contains_angle(s))?;
        let end = [self.end(), other.end()]
            .into_iter()
            .find(|&e| self.contains_angle(e) && other.contains_angle(e))?;
        Some(NormalCone { start, span: (end - start).rem_euclid(TAU).min(PI) })
    }

    /// `{ξ : ξ·ω <= 0}` or `{ξ : ξ·ω >= 0}` as a (closed, half-turn) cone.
    fn half(w: Direction, nonpositive: bool) -> NormalCone {
        let base = w.angle() + if nonpositive { PI / 2.0 } else { -PI / 2.0 };
        NormalCone { start: base, span: PI }
    }
}

/// Normal cone of `K` at a boundary point; `None` when `p` is not on `∂K`.
pub fn normal_cone(k: &ConvexPolygon, p: Point, eps: f64) -> Option<NormalCone> {
    let n = k.len();
    if let Some(i) = (0..n).find(|&i| k.vertices()[i].dist(p) <= eps) {
        let prev = k.edge_normal((i + n - 1) % n).vec();
        let next = k.edge_normal(i).vec();
        return Some(NormalCone::between(prev, next));
    }
    (0..n)
        .find(|&i| {
            let (a, b) = k.edge(i);
            geometry::point_segment_distance(p, a, b) <= eps
        })
        .map(|i| {
            let v = k.edge_normal(i).vec();
            NormalCone::between(v, v)
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimalityReport {
    pub holds: bool,
    /// Upper chord endpoint over the witness.
    pub x0: Point,
    /// Its mirror image through the folding line.
    pub x0_reflected: Point,
    /// True when the two coincide and the half-cone form is used.
    pub on_line: bool,
}

/// Necessary condition at the optimum: with `x₀` the upper chord endpoint over
/// the witness and `x₀ᵏ` its mirror image through `{x·ω = R}`,
/// `A_ω N_K(x₀ᵏ) ⊆ N_K(x₀)`; when `x₀ = x₀ᵏ` the half-cones are compared,
/// `A_ω N⁻_K(x₀) ⊆ N⁺_K(x₀)`.
pub fn optimality_check(k: &ConvexPolygon, fv: &FoldingValue, cfg: &GeomConfig) -> Result<OptimalityReport> {
    let w = fv.direction;
    let eps = cfg.eps_for(k);
    let chord = chord_with_eps(k, fv.witness, w, eps)
        .ok_or_else(|| HeartError::WitnessInvalid(format!("shadow coordinate {} is outside the shadow", fv.witness)))?;
    let base = w.perp().vec() * fv.witness;
    let x0 = base + w.vec() * chord.b;
    let x0r = HalfPlane::new(w, fv.r).reflect_point(x0);
    let on_line = x0.dist(x0r) <= eps;
    let n0 = normal_cone(k, x0, eps)
        .ok_or_else(|| HeartError::WitnessInvalid("upper chord endpoint is not on the boundary".into()))?;
    let holds = if on_line {
        let minus = n0.intersect(&NormalCone::half(w, true));
        let plus = n0.intersect(&NormalCone::half(w, false));
        match (minus, plus) {
            (None, _) => true,
            (Some(m), Some(p)) => p.contains_cone(&m.reflect(w)),
            (Some(_), None) => false,
        }
    } else {
        match normal_cone(k, x0r, eps) {
            Some(nr) => n0.contains_cone(&nr.reflect(w)),
            None => false,
        }
    };
    Ok(OptimalityReport { holds, x0, x0_reflected: x0r, on_line })
}
