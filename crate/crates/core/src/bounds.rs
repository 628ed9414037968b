//! Lower bounds on the distance from the hot spot to the boundary, and the
//! eigenvalue estimates they are built from.
//!
//! Every distance bound here is decreasing in `λ₁`, so feeding an upper bound
//! for `λ₁` keeps the result a valid lower bound.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{HeartError, Result};
use crate::geometry::{chebyshev_center, ConvexPolygon, GeomConfig, Point};
use crate::quadrature::gauss_legendre;

/// Volume of the unit ball in dimension `k`, for `1 ≤ k ≤ 3`.
pub fn omega(k: usize) -> Result<f64> {
    match k {
        1 => Ok(2.0),
        2 => Ok(PI),
        3 => Ok(4.0 * PI / 3.0),
        _ => Err(HeartError::UnsupportedDimension(k)),
    }
}

/// `J₀(x)` from its power series; accurate for the small arguments used here.
pub fn bessel_j0(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= q / (k as f64 * k as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// First Dirichlet eigenvalue of `−Δ` on the unit ball, `j₀,₁²` in the plane.
pub fn bessel_lambda1_ball(n: usize) -> Result<f64> {
    if n != 2 {
        return Err(HeartError::UnsupportedDimension(n));
    }
    let (mut lo, mut hi) = (2.0_f64, 3.0_f64);
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if bessel_j0(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let j = 0.5 * (lo + hi);
    Ok(j * j)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BodyStats {
    pub area: f64,
    pub perimeter: f64,
    pub diameter: f64,
    pub inradius: f64,
    /// `|∂Ω| · |Ω|^{1/N − 1}`.
    pub ipr: f64,
    pub dimension: usize,
}

impl BodyStats {
    pub fn new(area: f64, perimeter: f64, diameter: f64, inradius: f64, dimension: usize) -> Result<Self> {
        for (name, v) in [("area", area), ("perimeter", perimeter), ("diameter", diameter), ("inradius", inradius)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(HeartError::InvalidPolygon(format!("{name} must be positive, got {v}")));
            }
        }
        if dimension == 0 {
            return Err(HeartError::UnsupportedDimension(0));
        }
        let n = dimension as f64;
        let ipr = perimeter * area.powf(1.0 / n - 1.0);
        Ok(Self { area, perimeter, diameter, inradius, ipr, dimension })
    }

    pub fn of_polygon(k: &ConvexPolygon, cfg: &GeomConfig) -> Self {
        let c = chebyshev_center(k, cfg);
        Self::new(k.area(), k.perimeter(), k.diameter(), c.inradius, 2).expect("valid polygon has positive metrics")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenBounds {
    /// `λ₁(B₁)/N · |∂Ω| / (r |Ω|)`.
    pub upper_fk: f64,
    /// `λ₁(B₁) / r²`.
    pub upper_monotone: f64,
    pub numeric: Option<f64>,
    pub lambda_ball: f64,
}

impl EigenBounds {
    pub fn min_upper(&self) -> f64 {
        self.upper_fk.min(self.upper_monotone)
    }
}

pub fn lambda1_upper(stats: &BodyStats) -> Result<EigenBounds> {
    let lb = bessel_lambda1_ball(stats.dimension)?;
    let n = stats.dimension as f64;
    Ok(EigenBounds {
        upper_fk: lb / n * stats.perimeter / (stats.inradius * stats.area),
        upper_monotone: lb / (stats.inradius * stats.inradius),
        numeric: None,
        lambda_ball: lb,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneralBounds {
    pub precise: f64,
    pub coarse: f64,
}

/// Bounds valid for any domain given (an upper bound on) `λ₁`.
pub fn dist_lower_general(stats: &BodyStats, lambda1: f64) -> Result<GeneralBounds> {
    let n = stats.dimension;
    let nf = n as f64;
    let w1 = omega(n - 1)?;
    let wn = omega(n)?;
    let d = stats.diameter;
    let precise = nf.powi(n as i32 - 1) * w1 * d / (stats.area.powf(1.0 / nf) * d * lambda1).powi(n as i32);
    let coarse = 2f64.powi(n as i32) * nf.powi(n as i32 - 1) * (w1 / wn) * d / (d * d * lambda1).powi(n as i32);
    Ok(GeneralBounds { precise, coarse })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvexBounds {
    pub precise: f64,
    pub coarse: f64,
    pub improved: f64,
}

/// Purely geometric bounds for convex domains.
pub fn dist_lower_convex(stats: &BodyStats) -> Result<ConvexBounds> {
    let n = stats.dimension;
    let ni = n as i32;
    let nf = n as f64;
    let lb = bessel_lambda1_ball(n)?;
    let w1 = omega(n - 1)?;
    let wn = omega(n)?;
    let r = stats.inradius;
    let ratio = r / stats.diameter;
    let lbn = lb.powi(ni);
    let precise = r * (w1 * nf.powi(2 * ni - 1) / lbn * stats.ipr.powi(-ni) * ratio.powi(ni - 1));
    let coarse = r * ((2f64.powi(ni) * nf).powi(ni - 1) / lbn * (w1 / wn) * ratio.powi(ni * ni - 1));
    let improved = r * (2f64.powi(ni) * nf.powi(ni - 1) / lbn * (w1 / wn) * ratio.powi(2 * ni - 1));
    Ok(ConvexBounds { precise, coarse, improved })
}

/// `∫_{∂K} 1/h_{K,x₀}(ν(x)) dσ` with `order`-point Gauss–Legendre per edge.
pub fn w_integral(k: &ConvexPolygon, x0: Point, order: usize, cfg: &GeomConfig) -> Result<f64> {
    let eps = cfg.eps_for(k);
    let (nodes, weights) = gauss_legendre(order.max(1));
    let mut total = 0.0;
    for (i, (a, b)) in k.edges().enumerate() {
        let nu = k.edge_normal(i);
        let len = a.dist(b);
        let mut edge = 0.0;
        for (t, w) in nodes.iter().zip(&weights) {
            let x = a.lerp(b, 0.5 * (t + 1.0));
            let h = nu.dot(x - x0);
            if h <= eps {
                return Err(HeartError::QuadratureUnstable(h));
            }
            edge += w / h;
        }
        total += 0.5 * len * edge;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StarW {
    pub value: f64,
    pub minimizer: Point,
}

/// `W(K)`: the minimum of [`w_integral`] over interior `x₀`, by coordinate
/// descent from the centroid with step halving.
pub fn w_starshaped(k: &ConvexPolygon, order: usize, cfg: &GeomConfig) -> Result<StarW> {
    const MAX_HALVINGS: usize = 60;
    const TOL: f64 = 1e-8;
    let diam = k.diameter();
    let mut x = k.centroid();
    let mut best = w_integral(k, x, order, cfg)?;
    let mut step = 0.25 * diam;
    let dirs = [Point::new(1.0, 0.0), Point::new(-1.0, 0.0), Point::new(0.0, 1.0), Point::new(0.0, -1.0)];
    for _ in 0..MAX_HALVINGS {
        if step < TOL * diam {
            break;
        }
        loop {
            let mut moved = false;
            for d in dirs {
                let cand = x + d * step;
                if let Ok(v) = w_integral(k, cand, order, cfg) {
                    if v < best {
                        best = v;
                        x = cand;
                        moved = true;
                    }
                }
            }
            if !moved {
                break;
            }
        }
        step *= 0.5;
    }
    Ok(StarW { value: best, minimizer: x })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StarBound {
    pub w: StarW,
    pub bound: f64,
}

/// Starshaped-domain bound driven by `W(K)`.
pub fn dist_lower_star(k: &ConvexPolygon, order: usize, cfg: &GeomConfig) -> Result<StarBound> {
    let w = w_starshaped(k, order, cfg)?;
    let bound = star_bound_from_w(k.area(), k.diameter(), w.value, 2)?;
    Ok(StarBound { w, bound })
}

pub fn star_bound_from_w(area: f64, diameter: f64, w: f64, n: usize) -> Result<f64> {
    let ni = n as i32;
    let lb = bessel_lambda1_ball(n)?;
    let w1 = omega(n - 1)?;
    Ok((n as f64).powi(2 * ni - 1) * w1 / lb.powi(ni) * (area / (diameter * w)).powi(ni - 1) / w)
}
