//! Fourier transform of a polygon indicator and inversion along `ω⊥`.
//!
//! `χ̂_K(ξ) = ∫_K e^{−ix·ξ} dx`. Restricted to `ω⊥` its inverse transform is the
//! chord length `b − a`, and that of `i ∂_ω χ̂_K` is `(b² − a²)/2`, so their ratio
//! recovers the chord midpoint `f_ω`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{HeartError, Result};
use crate::geometry::{shadow, ConvexPolygon, Direction, Point};
use crate::quadrature::{gauss_legendre, CompositeGauss};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Below this `|ξ|·diam` the transform is integrated directly.
const LOW_FREQUENCY: f64 = 1.0;
const FAN_ORDER: usize = 12;
const PANEL_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourierEval {
    pub frequency: Point,
    pub re: f64,
    pub im: f64,
}

impl FourierEval {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-3 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

fn sinc_prime(x: f64) -> f64 {
    if x.abs() < 1e-3 {
        let x2 = x * x;
        -x / 3.0 + x * x2 / 30.0
    } else {
        (x * x.cos() - x.sin()) / (x * x)
    }
}

fn expi(t: f64) -> Complex64 {
    Complex64::new(t.cos(), t.sin())
}

/// Vertices relative to the centroid.
fn centered(k: &ConvexPolygon) -> (Point, Vec<Point>) {
    let c = k.centroid();
    (c, k.vertices().iter().map(|&p| p - c).collect())
}

/// `∫ g(x) e^{−ix·ξ} dx` over the fan triangles `(0, p_j, p_{j+1})`, collapsed-square Gauss rule.
fn fan_integral(verts: &[Point], xi: Point, g: impl Fn(Point) -> Complex64) -> Complex64 {
    let (nodes, weights) = gauss_legendre(FAN_ORDER);
    let n = verts.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let a = verts[j];
        let b = verts[(j + 1) % n];
        let jac = a.cross(b);
        for (u, wu) in nodes.iter().zip(&weights) {
            let s = 0.5 * (u + 1.0);
            for (v, wv) in nodes.iter().zip(&weights) {
                let t = 0.5 * (v + 1.0);
                let x = (a * (1.0 - t) + b * t) * s;
                let w = 0.25 * wu * wv * s * jac;
                acc += g(x) * expi(-x.dot(xi)) * w;
            }
        }
    }
    acc
}

/// `χ̂` of the polygon with the given (centroid-relative) vertices.
fn chi_hat_centered(verts: &[Point], diam: f64, xi: Point) -> Complex64 {
    let r2 = xi.dot(xi);
    if r2 == 0.0 {
        return Complex64::new(crate::geometry::signed_area(verts), 0.0);
    }
    if r2.sqrt() * diam < LOW_FREQUENCY {
        return fan_integral(verts, xi, |_| Complex64::new(1.0, 0.0));
    }
    let n = verts.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let p = verts[j];
        let q = verts[(j + 1) % n];
        let e = q - p;
        let nu = Point::new(e.y, -e.x);
        let mid = (p + q) * 0.5;
        let qj = -I * expi(-mid.dot(xi)) * sinc(0.5 * e.dot(xi));
        acc += qj * nu.dot(xi);
    }
    -acc / r2
}

/// `∂_ω χ̂` at `η ⊥ ω`, centroid-relative vertices.
fn d_chi_hat_centered(verts: &[Point], diam: f64, eta: Point, w: Point) -> Complex64 {
    let r2 = eta.dot(eta);
    if r2.sqrt() * diam < LOW_FREQUENCY {
        return fan_integral(verts, eta, |x| -I * x.dot(w));
    }
    let n = verts.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let p = verts[j];
        let q = verts[(j + 1) % n];
        let e = q - p;
        let nu = Point::new(e.y, -e.x);
        let mid = (p + q) * 0.5;
        let phase = expi(-mid.dot(eta));
        let half = 0.5 * e.dot(eta);
        let qj = -I * phase * sinc(half);
        let dq = -I * (-I * mid.dot(w) * phase * sinc(half) + phase * sinc_prime(half) * (0.5 * e.dot(w)));
        acc += qj * nu.dot(w) + dq * nu.dot(eta);
    }
    -acc / r2
}

/// `χ̂_K(ξ)`.
pub fn chi_hat(k: &ConvexPolygon, xi: Point) -> Complex64 {
    let (c, verts) = centered(k);
    expi(-c.dot(xi)) * chi_hat_centered(&verts, k.diameter(), xi)
}

pub fn chi_hat_eval(k: &ConvexPolygon, xi: Point) -> FourierEval {
    let v = chi_hat(k, xi);
    FourierEval { frequency: xi, re: v.re, im: v.im }
}

/// `∂_ω χ̂_K(η)` for `η ⊥ ω`.
pub fn d_omega_chi_hat(k: &ConvexPolygon, eta: Point, w: Direction) -> Result<Complex64> {
    let dot = w.dot(eta);
    if dot.abs() > 1e-12 * eta.norm().max(1.0) {
        return Err(HeartError::FrequencyNotOrthogonal(dot));
    }
    let (c, verts) = centered(k);
    let diam = k.diameter();
    let wv = w.vec();
    let base = chi_hat_centered(&verts, diam, eta);
    let d = d_chi_hat_centered(&verts, diam, eta, wv);
    Ok(expi(-c.dot(eta)) * (d - I * c.dot(wv) * base))
}

/// Truncation `S` for a cutoff given in units of `2π / diam`.
pub fn cutoff_from_units(k: &ConvexPolygon, units: f64) -> f64 {
    units * 2.0 * PI / k.diameter()
}

struct Inversion {
    verts: Vec<Point>,
    center: Point,
    diam: f64,
    u: Point,
    w: Point,
}

impl Inversion {
    fn new(k: &ConvexPolygon, w: Direction) -> Self {
        let (center, verts) = centered(k);
        Self { verts, center, diam: k.diameter(), u: w.perp().vec(), w: w.vec() }
    }

    /// Composite Gauss over `[−S, S]` with at least `n` nodes and 8 per oscillation.
    fn integrate(&self, y: f64, cutoff: f64, n: usize, f: impl Fn(Point) -> Complex64) -> Complex64 {
        let shift = y - self.u.dot(self.center);
        let radius = self.verts.iter().map(|p| p.norm()).fold(0.0, f64::max);
        let rate = shift.abs() + radius;
        let oscillations = 2.0 * cutoff * rate / (2.0 * PI);
        let points = (n as f64).max(8.0 * oscillations);
        let panels = ((points / PANEL_ORDER as f64).ceil() as usize).max(1);
        CompositeGauss::new(PANEL_ORDER).integrate(-cutoff, cutoff, panels, |s| f(self.u * s) * expi(shift * s))
    }
}

/// `b − a` at shadow coordinate `y`, from the truncated inverse transform.
pub fn chord_via_fourier(k: &ConvexPolygon, w: Direction, y: f64, cutoff: f64, n: usize) -> f64 {
    let inv = Inversion::new(k, w);
    let v = inv.integrate(y, cutoff, n, |eta| chi_hat_centered(&inv.verts, inv.diam, eta));
    v.re / (2.0 * PI)
}

/// Reconstructed midpoint `f_ω(y)` with the two integrals it is the ratio of.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourierMidpoint {
    pub value: f64,
    pub chord: f64,
    pub half_square_difference: f64,
}

/// `f_ω(y)` as `i ∫ ∂_ω χ̂ e^{iyη} / ∫ χ̂ e^{iyη}`.
pub fn f_via_fourier(k: &ConvexPolygon, w: Direction, y: f64, cutoff: f64, n: usize) -> Result<FourierMidpoint> {
    let inv = Inversion::new(k, w);
    let den = inv.integrate(y, cutoff, n, |eta| chi_hat_centered(&inv.verts, inv.diam, eta)).re / (2.0 * PI);
    let sh = shadow(k, w);
    let margin = 0.05 * sh.len();
    if y < sh.lo + margin || y > sh.hi - margin || den.abs() < 1e-3 * inv.diam {
        return Err(HeartError::DenominatorTooSmall(den));
    }
    // Undo the centroid shift: t ↦ t + c·ω.
    let num = inv.integrate(y, cutoff, n, |eta| I * d_chi_hat_centered(&inv.verts, inv.diam, eta, inv.w));
    let value = num.re / (2.0 * PI) / den + inv.w.dot(inv.center);
    Ok(FourierMidpoint { value, chord: den, half_square_difference: value * den })
}
