//! Finite-difference heat flow and Dirichlet eigenpair on a staircase grid.
//!
//! Nodes sit at `origin + (i h, j h)` with the origin at the lower-left corner of
//! the bounding box; a node is interior when it lies strictly inside `K`, and
//! every other node carries the Dirichlet value zero.

use std::io::{self, Write};

use serde::Serialize;

use crate::error::{HeartError, Result};
use crate::folding::HeartRegion;
use crate::geometry::{chebyshev_center, ConvexPolygon, GeomConfig, Point};

const NONE: usize = usize::MAX;

/// Scalar field on the node grid of a polygon.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridField {
    pub h: f64,
    pub origin: Point,
    pub nx: usize,
    pub ny: usize,
    #[serde(skip)]
    pub mask: Vec<bool>,
    #[serde(skip)]
    pub values: Vec<f64>,
    pub time: Option<f64>,
}

impl GridField {
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn node(&self, idx: usize) -> Point {
        let (i, j) = (idx % self.nx, idx / self.nx);
        Point::new(self.origin.x + i as f64 * self.h, self.origin.y + j as f64 * self.h)
    }

    pub fn interior_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    fn cells(&self) -> Vec<usize> {
        (0..self.mask.len()).filter(|&i| self.mask[i]).collect()
    }

    /// Interior neighbours (E, W, N, S) in compact numbering, `NONE` outside.
    fn stencil(&self, cells: &[usize]) -> Vec<[usize; 4]> {
        let mut compact = vec![NONE; self.mask.len()];
        for (c, &idx) in cells.iter().enumerate() {
            compact[idx] = c;
        }
        cells
            .iter()
            .map(|&idx| [compact[idx + 1], compact[idx - 1], compact[idx + self.nx], compact[idx - self.nx]])
            .collect()
    }

    fn with_compact(&self, cells: &[usize], v: &[f64], time: Option<f64>) -> GridField {
        let mut values = vec![0.0; self.mask.len()];
        for (&idx, &x) in cells.iter().zip(v) {
            values[idx] = x;
        }
        GridField { values, time, ..self.clone() }
    }

    /// `x,y,value` rows for every node.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "x,y,value")?;
        for (idx, v) in self.values.iter().enumerate() {
            let p = self.node(idx);
            writeln!(out, "{},{},{}", p.x, p.y, v)?;
        }
        Ok(())
    }

    /// Grid maximum refined by a quadratic fit on the surrounding 3×3 block.
    pub fn refined_max(&self) -> (Point, f64) {
        let mut best = NONE;
        for (idx, &m) in self.mask.iter().enumerate() {
            if m && (best == NONE || self.values[idx] > self.values[best]) {
                best = idx;
            }
        }
        let u = |di: isize, dj: isize| self.values[(best as isize + di + dj * self.nx as isize) as usize];
        let c = u(0, 0);
        let h = self.h;
        let gx = (u(1, 0) - u(-1, 0)) / (2.0 * h);
        let gy = (u(0, 1) - u(0, -1)) / (2.0 * h);
        let hxx = (u(1, 0) - 2.0 * c + u(-1, 0)) / (h * h);
        let hyy = (u(0, 1) - 2.0 * c + u(0, -1)) / (h * h);
        let hxy = (u(1, 1) - u(1, -1) - u(-1, 1) + u(-1, -1)) / (4.0 * h * h);
        let node = self.node(best);
        let det = hxx * hyy - hxy * hxy;
        if hxx < 0.0 && det > 0.0 {
            let dx = -(hyy * gx - hxy * gy) / det;
            let dy = -(hxx * gy - hxy * gx) / det;
            if dx.abs() <= h && dy.abs() <= h {
                let value = c + 0.5 * (gx * dx + gy * dy);
                return (Point::new(node.x + dx, node.y + dy), value);
            }
        }
        (node, c)
    }
}

/// Node grid of `K` with spacing `h`.
pub fn rasterize(k: &ConvexPolygon, h: f64, cfg: &GeomConfig) -> Result<GridField> {
    let inradius = chebyshev_center(k, cfg).inradius;
    let limit = inradius / 8.0;
    if !(h > 0.0 && h <= limit) {
        return Err(HeartError::GridTooCoarse { h, limit });
    }
    let (lo, hi) = k.bounding_box();
    let nx = ((hi.x - lo.x) / h).ceil() as usize + 1;
    let ny = ((hi.y - lo.y) / h).ceil() as usize + 1;
    let inside = 1e-9 * k.diameter();
    let mut mask = vec![false; nx * ny];
    for j in 0..ny {
        for i in 0..nx {
            let p = Point::new(lo.x + i as f64 * h, lo.y + j as f64 * h);
            mask[j * nx + i] = k.boundary_distance(p) > inside;
        }
    }
    Ok(GridField { h, origin: lo, nx, ny, values: vec![0.0; nx * ny], mask, time: None })
}

/// Default spacing `inradius / 50`.
pub fn default_spacing(k: &ConvexPolygon, cfg: &GeomConfig) -> f64 {
    chebyshev_center(k, cfg).inradius / 50.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HotSpotSample {
    pub t: f64,
    pub x: Point,
    pub m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HotSpotTrack {
    pub samples: Vec<HotSpotSample>,
    /// `−log(M(t₂)/M(t₁)) / (t₂ − t₁)` over the last two samples.
    pub decay_rate: f64,
    pub x_inf: Option<Point>,
    pub lambda1_numeric: Option<f64>,
    pub u_min: f64,
    pub u_max: f64,
    pub h: f64,
    #[serde(skip)]
    pub field: GridField,
}

impl HotSpotTrack {
    pub fn attach(&mut self, eig: &EigenPair) {
        self.x_inf = Some(eig.x_inf);
        self.lambda1_numeric = Some(eig.lambda1);
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.samples.windows(2).all(|w| w[1].m < w[0].m)
    }
}

/// `count` sample times spaced geometrically over `[t0, t_end]`.
pub fn log_times(t0: f64, t_end: f64, count: usize) -> Vec<f64> {
    let r = (t_end / t0).ln();
    (0..count).map(|i| t0 * (r * i as f64 / (count - 1).max(1) as f64).exp()).collect()
}

/// Heat flow from `u ≡ 1` with zero boundary values, explicit Euler at `dt = h²/5`.
pub fn heat_solve(grid: &GridField, t_end: f64, sample_times: &[f64]) -> HotSpotTrack {
    let cells = grid.cells();
    let nbr = grid.stencil(&cells);
    let dt = grid.h * grid.h / 5.0;
    let mut times: Vec<f64> = sample_times.iter().copied().filter(|&t| t > 0.0 && t <= t_end).collect();
    times.sort_by(f64::total_cmp);
    let targets: Vec<usize> = times.iter().map(|t| ((t / dt).round() as usize).max(1)).collect();

    let mut u = vec![1.0; cells.len()];
    let mut next = vec![0.0; cells.len()];
    let (mut u_min, mut u_max) = (1.0_f64, 1.0_f64);
    let mut samples = Vec::with_capacity(targets.len());
    let mut step = 0;
    let mut last = grid.with_compact(&cells, &u, Some(0.0));
    for &target in &targets {
        while step < target {
            for (c, nb) in nbr.iter().enumerate() {
                let mut s = u[c];
                for &n in nb {
                    if n != NONE {
                        s += u[n];
                    }
                }
                next[c] = 0.2 * s;
            }
            std::mem::swap(&mut u, &mut next);
            step += 1;
        }
        let t = step as f64 * dt;
        for &v in &u {
            u_min = u_min.min(v);
            u_max = u_max.max(v);
        }
        last = grid.with_compact(&cells, &u, Some(t));
        let (x, m) = last.refined_max();
        if samples.last().is_none_or(|s: &HotSpotSample| s.t < t) {
            samples.push(HotSpotSample { t, x, m });
        }
    }
    let decay_rate = match samples.as_slice() {
        [.., a, b] => -(b.m / a.m).ln() / (b.t - a.t),
        _ => f64::NAN,
    };
    HotSpotTrack { samples, decay_rate, x_inf: None, lambda1_numeric: None, u_min, u_max, h: grid.h, field: last }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPair {
    pub lambda1: f64,
    pub x_inf: Point,
    pub m_inf: f64,
    pub residual: f64,
    pub iterations: usize,
    #[serde(skip)]
    pub phi: GridField,
}

/// `L v = 4v − Σ neighbours`, i.e. `−h² Δ_h`.
fn apply(nbr: &[[usize; 4]], v: &[f64], out: &mut [f64]) {
    for (c, nb) in nbr.iter().enumerate() {
        let mut s = 4.0 * v[c];
        for &n in nb {
            if n != NONE {
                s -= v[n];
            }
        }
        out[c] = s;
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Conjugate gradients for `L x = b`, starting from `x`.
fn cg(nbr: &[[usize; 4]], b: &[f64], x: &mut [f64], rel_tol: f64, max_iter: usize) -> usize {
    let n = b.len();
    let mut r = vec![0.0; n];
    apply(nbr, x, &mut r);
    for i in 0..n {
        r[i] = b[i] - r[i];
    }
    let mut p = r.clone();
    let mut ap = vec![0.0; n];
    let mut rr = dot(&r, &r);
    let target = rel_tol * rel_tol * dot(b, b);
    for it in 0..max_iter {
        if rr <= target {
            return it;
        }
        apply(nbr, &p, &mut ap);
        let alpha = rr / dot(&p, &ap);
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let rr_new = dot(&r, &r);
        let beta = rr_new / rr;
        rr = rr_new;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
    }
    max_iter
}

/// First Dirichlet eigenpair of `−Δ_h` by inverse iteration; stops when
/// `‖Δ_h φ + λ φ‖∞ / ‖φ‖∞ ≤ tol`.
pub fn eigen_solve(grid: &GridField, tol: f64) -> Result<EigenPair> {
    const MAX_ITER: usize = 500;
    let cells = grid.cells();
    let nbr = grid.stencil(&cells);
    let n = cells.len();
    let h2 = grid.h * grid.h;
    let mut v = vec![1.0; n];
    let mut x = vec![0.0; n];
    let mut lv = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for it in 1..=MAX_ITER {
        cg(&nbr, &v, &mut x, 1e-12, 20 * n);
        let norm = x.iter().fold(0.0_f64, |m, a| m.max(a.abs()));
        for i in 0..n {
            v[i] = x[i] / norm;
        }
        apply(&nbr, &v, &mut lv);
        let mu = dot(&v, &lv) / dot(&v, &v);
        residual = (0..n).map(|i| (lv[i] - mu * v[i]).abs()).fold(0.0, f64::max) / h2;
        // Warm start: the next solution is close to v / μ.
        for i in 0..n {
            x[i] = v[i] / mu;
        }
        if residual <= tol {
            let sign = if v.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
            let mut phi = grid.with_compact(&cells, &v.iter().map(|a| sign * a).collect::<Vec<_>>(), None);
            let (x_inf, m) = phi.refined_max();
            for a in &mut phi.values {
                *a /= m;
            }
            return Ok(EigenPair { lambda1: mu / h2, x_inf, m_inf: 1.0, residual, iterations: it, phi });
        }
    }
    Err(HeartError::NoConvergence { iterations: MAX_ITER, residual })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeartCheck {
    pub worst: f64,
    pub slack: f64,
    pub checked: usize,
    pub pass: bool,
}

/// Distance of every sampled hot spot and of `x∞` to the heart.
pub fn verify_heart(track: &HotSpotTrack, heart: &HeartRegion, slack: f64) -> HeartCheck {
    let points = track.samples.iter().map(|s| s.x).chain(track.x_inf);
    let mut worst = 0.0_f64;
    let mut checked = 0;
    for p in points {
        worst = worst.max(heart.distance_to(p));
        checked += 1;
    }
    HeartCheck { worst, slack, checked, pass: worst <= slack }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VaradhanReport {
    pub early_t: f64,
    pub early_dist: f64,
    pub inradius: f64,
    pub early_rel_err: f64,
    pub early_ok: bool,
    pub late_t: f64,
    pub late_shift: Option<f64>,
    pub late_ok: bool,
}

/// Short-time distance to the boundary against the inradius, and long-time
/// distance to `x∞`.
pub fn varadhan_check(track: &HotSpotTrack, k: &ConvexPolygon, cfg: &GeomConfig) -> VaradhanReport {
    let inradius = chebyshev_center(k, cfg).inradius;
    let first = track.samples.first().copied().unwrap_or(HotSpotSample { t: 0.0, x: Point::ORIGIN, m: 1.0 });
    let last = track.samples.last().copied().unwrap_or(first);
    let early_dist = k.boundary_distance(first.x);
    let early_rel_err = (early_dist - inradius).abs() / inradius;
    let late_shift = track.x_inf.map(|x| x.dist(last.x));
    VaradhanReport {
        early_t: first.t,
        early_dist,
        inradius,
        early_rel_err,
        early_ok: early_rel_err <= 0.1,
        late_t: last.t,
        late_shift,
        late_ok: late_shift.is_some_and(|s| s <= 2.0 * track.h),
    }
}

/// Heat horizon long enough for the second mode to fade by `e^{−7}` at half of
/// it, using `λ₂ − λ₁ ≥ 3π²/diam²` for convex domains.
pub fn default_t_end(k: &ConvexPolygon, lambda1: f64) -> f64 {
    let d = k.diameter();
    (10.0 / lambda1).max(14.0 * d * d / (3.0 * std::f64::consts::PI.powi(2)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PdeReport {
    pub h: f64,
    pub interior_cells: usize,
    pub t_end: f64,
    pub eigen: EigenPair,
    pub track: HotSpotTrack,
    pub heart: HeartCheck,
    pub varadhan: VaradhanReport,
    pub pass: bool,
}

/// Eigenpair, heat track from `(10h)²` to `t_end` (40 log-spaced samples),
/// heart membership with slack `2h` and the Varadhan limits.
pub fn pde_verify(
    k: &ConvexPolygon,
    h: f64,
    t_end: Option<f64>,
    heart: &HeartRegion,
    cfg: &GeomConfig,
) -> Result<PdeReport> {
    let grid = rasterize(k, h, cfg)?;
    let eigen = eigen_solve(&grid, 1e-8)?;
    let t_end = t_end.unwrap_or_else(|| default_t_end(k, eigen.lambda1));
    let times = log_times((10.0 * h).powi(2), t_end, 40);
    let mut track = heat_solve(&grid, t_end, &times);
    track.attach(&eigen);
    let heart = verify_heart(&track, heart, 2.0 * h);
    let varadhan = varadhan_check(&track, k, cfg);
    let pass = heart.pass && varadhan.early_ok && varadhan.late_ok && track.strictly_decreasing();
    Ok(PdeReport { h, interior_cells: grid.interior_count(), t_end, eigen, track, heart, varadhan, pass })
}
