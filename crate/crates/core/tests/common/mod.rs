#![allow(dead_code)]

use heart_core::geometry::{ConvexPolygon, Direction, Point};
use heart_core::quadrature::CompositeGauss;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn poly(v: &[(f64, f64)]) -> ConvexPolygon {
    ConvexPolygon::new(v.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
}

pub fn square() -> ConvexPolygon {
    poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
}

pub fn rectangle() -> ConvexPolygon {
    poly(&[(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (0.0, 1.0)])
}

pub fn triangle() -> ConvexPolygon {
    poly(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])
}

/// `n` points at sorted random angles on the unit circle, mapped through a
/// random linear map with positive determinant and translated.
pub fn random_convex(rng: &mut impl Rng, n: usize) -> ConvexPolygon {
    loop {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let gap_ok = (0..n).all(|i| {
            let next = if i + 1 < n { angles[i + 1] } else { angles[0] + std::f64::consts::TAU };
            next - angles[i] > 1e-3
        });
        if !gap_ok {
            continue;
        }
        let (a, b, c, d) = (
            rng.gen_range(0.5..2.0),
            rng.gen_range(-0.6..0.6),
            rng.gen_range(-0.6..0.6),
            rng.gen_range(0.5..2.0),
        );
        if a * d - b * c < 0.2 {
            continue;
        }
        let t = Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let v = angles
            .iter()
            .map(|&th| {
                let (s, co) = th.sin_cos();
                Point::new(a * co + b * s, c * co + d * s) + t
            })
            .collect();
        if let Ok(k) = ConvexPolygon::new(v) {
            return k;
        }
    }
}

pub fn random_direction(rng: &mut impl Rng) -> Direction {
    Direction::from_angle(rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Half-disc of radius `r` above `y = mu`, `m` arc vertices, mirror-symmetric about `x = 0`.
pub fn halfdisc(r: f64, mu: f64, m: usize) -> ConvexPolygon {
    let a0 = (mu / r).asin();
    let a1 = std::f64::consts::PI - a0;
    let mut pts: Vec<Point> = (0..m)
        .map(|i| {
            let t = a0 + (a1 - a0) * i as f64 / (m - 1) as f64;
            Point::new(r * t.cos(), r * t.sin())
        })
        .collect();
    for i in 0..m / 2 {
        let j = m - 1 - i;
        pts[j] = Point::new(-pts[i].x, pts[i].y);
    }
    if m % 2 == 1 {
        pts[m / 2].x = 0.0;
    }
    ConvexPolygon::new(pts).unwrap()
}

pub fn ellipse(a: f64, b: f64, m: usize) -> ConvexPolygon {
    ConvexPolygon::new(
        (0..m)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / m as f64;
                Point::new(a * t.cos(), b * t.sin())
            })
            .collect(),
    )
    .unwrap()
}

/// Vertical extent `[a(x), b(x)]` of `K` above `x`, by intersecting edges.
pub fn vertical_chord(k: &ConvexPolygon, x: f64) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (p, q) in k.edges() {
        let (a, b) = if p.x <= q.x { (p, q) } else { (q, p) };
        if x < a.x || x > b.x || a.x == b.x {
            continue;
        }
        let y = a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
        lo = lo.min(y);
        hi = hi.max(y);
    }
    (lo, hi)
}

/// `∫_K e^{−ix·ξ}` by Fubini: exact in `y`, composite Gauss in `x` between vertex abscissae.
pub fn chi_hat_fubini(k: &ConvexPolygon, xi: Point) -> Complex64 {
    let mut xs: Vec<f64> = k.vertices().iter().map(|p| p.x).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let g = CompositeGauss::new(20);
    let mut acc = Complex64::new(0.0, 0.0);
    for w in xs.windows(2) {
        let panels = 4 + (xi.norm() * (w[1] - w[0])) as usize;
        acc += g.integrate(w[0], w[1], panels, |x| {
            let (a, b) = vertical_chord(k, x);
            let inner = if (xi.y * (b - a)).abs() < 1e-6 {
                Complex64::from_polar(b - a, -xi.y * 0.5 * (a + b))
            } else {
                (Complex64::from_polar(1.0, -b * xi.y) - Complex64::from_polar(1.0, -a * xi.y))
                    / Complex64::new(0.0, -xi.y)
            };
            inner * Complex64::from_polar(1.0, -x * xi.x)
        });
    }
    acc
}
