//! Polar polygons, the Santalò point and the polar-area inequalities.

use serde::Serialize;

use crate::error::{HeartError, Result};
use crate::geometry::{halfplane_intersection, ConvexPolygon, Direction, GeomConfig, HalfPlane, Point, Region};

/// Minkowski gauge `j_p(x)` of `K − p`.
pub fn gauge(k: &ConvexPolygon, p: Point, x: Point) -> f64 {
    let v = x - p;
    (0..k.len())
        .map(|i| {
            let h = k.edge_halfplane(i);
            h.normal.dot(v) / (h.offset - h.normal.dot(p))
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolarPolygon {
    pub center: Point,
    pub polar: ConvexPolygon,
}

impl PolarPolygon {
    pub fn area(&self) -> f64 {
        self.polar.area()
    }
}

fn check_center(k: &ConvexPolygon, p: Point, cfg: &GeomConfig) -> Result<f64> {
    let d = k.boundary_distance(p);
    if d <= cfg.eps_for(k) {
        return Err(HeartError::CenterTooCloseToBoundary(d));
    }
    Ok(d)
}

/// `K*_p = {y : (x − p)·(y − p) ≤ 1 for all x ∈ K}`, one half-plane per vertex of `K`.
pub fn polar_polygon(k: &ConvexPolygon, p: Point, cfg: &GeomConfig) -> Result<PolarPolygon> {
    let d = check_center(k, p, cfg)?;
    let planes: Vec<HalfPlane> = k
        .vertices()
        .iter()
        .map(|&x| {
            let v = x - p;
            let n = v.norm();
            let dir = Direction::new(v.x, v.y).expect("vertex differs from interior center");
            HalfPlane::new(dir, (1.0 + v.dot(p)) / n)
        })
        .collect();
    // K*_p lies in the disc of radius 1/d about p.
    let r = 2.0 / d;
    let lo = Point::new(p.x - r, p.y - r);
    let hi = Point::new(p.x + r, p.y + r);
    match halfplane_intersection(&planes, lo, hi, cfg.eps(2.0 * r)) {
        Region::Polygon { polygon } => Ok(PolarPolygon { center: p, polar: polygon }),
        other => Err(HeartError::InvalidPolygon(format!("polar degenerated to {}", other.kind_name()))),
    }
}

/// Minimizer of `p ↦ |K*_p|` by pattern search from the centroid.
pub fn santalo_point(k: &ConvexPolygon, tol: f64, cfg: &GeomConfig) -> Result<Point> {
    let diam = k.diameter();
    let mut p = k.centroid();
    let mut best = polar_polygon(k, p, cfg)?.area();
    let mut step = 0.1 * diam;
    let dirs = [Point::new(1.0, 0.0), Point::new(-1.0, 0.0), Point::new(0.0, 1.0), Point::new(0.0, -1.0)];
    while step >= tol * diam {
        let mut moved = false;
        for d in dirs {
            let cand = p + d * step;
            if let Ok(pp) = polar_polygon(k, cand, cfg) {
                let a = pp.area();
                if a < best {
                    best = a;
                    p = cand;
                    moved = true;
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

/// `|K*_p| ≥ 1 / (R(p) · dist(p, ∂K))` with `R(p)` the farthest boundary distance.
pub fn lemma_check(k: &ConvexPolygon, p: Point, cfg: &GeomConfig) -> Result<PolarCheck> {
    let pp = polar_polygon(k, p, cfg)?;
    let d = k.boundary_distance(p);
    let r = k.vertices().iter().map(|v| v.dist(p)).fold(0.0, f64::max);
    let lhs = pp.area();
    let rhs = 1.0 / (r * d);
    Ok(PolarCheck { lhs, rhs, ok: lhs >= rhs * (1.0 - 1e-9) })
}

/// Relative slack allowed for a discretized `x∞` and `λ₁`.
pub const COROLL_SLACK: f64 = 0.02;

/// `|K*_{x∞}| ≤ (λ₁/2)² |K|`.
pub fn coroll_check(k: &ConvexPolygon, x_inf: Point, lambda1: f64, cfg: &GeomConfig) -> Result<PolarCheck> {
    let lhs = polar_polygon(k, x_inf, cfg)?.area();
    let rhs = (0.5 * lambda1).powi(2) * k.area();
    Ok(PolarCheck { lhs, rhs, ok: lhs <= rhs * (1.0 + COROLL_SLACK) })
}
