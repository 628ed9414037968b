//! Body specifications: named generators and JSON vertex files.

use std::f64::consts::{PI, TAU};
use std::path::Path;

use heart_core::geometry::regular_polygon;
use heart_core::{ConvexPolygon, Point};
use serde::Deserialize;

use crate::error::{CliError, Result};

const MIN_ARC_VERTICES: usize = 16;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Generator {
    Square,
    Rectangle { w: f64, h: f64 },
    RegularNgon { n: usize, r: f64 },
    EllipseApprox { a: f64, b: f64, m: usize },
    Halfdisc { r: f64, mu: f64, m: usize },
    Triangle { vertices: [[f64; 2]; 3] },
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum BodySpec {
    Vertices { vertices: Vec<[f64; 2]> },
    Generator { generator: Generator },
}

fn numbers(args: &str, count: usize, name: &str) -> Result<Vec<f64>> {
    let v: Vec<f64> = args
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| CliError::Input(format!("{name}: {e}")))?;
    if v.len() != count {
        return Err(CliError::Input(format!("{name} takes {count} numbers, got {}", v.len())));
    }
    Ok(v)
}

fn count(x: f64, name: &str) -> Result<usize> {
    if x.fract() != 0.0 || x < 0.0 {
        return Err(CliError::Input(format!("{name} must be a nonnegative integer, got {x}")));
    }
    Ok(x as usize)
}

impl Generator {
    /// `name` or `name:a,b,...` as accepted by `--body`.
    pub fn parse(s: &str) -> Result<Self> {
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        Ok(match name {
            "square" if args.is_empty() => Self::Square,
            "rectangle" => {
                let v = numbers(args, 2, name)?;
                Self::Rectangle { w: v[0], h: v[1] }
            }
            "regular_ngon" => {
                let v = numbers(args, 2, name)?;
                Self::RegularNgon { n: count(v[0], "n")?, r: v[1] }
            }
            "ellipse_approx" => {
                let v = numbers(args, 3, name)?;
                Self::EllipseApprox { a: v[0], b: v[1], m: count(v[2], "m")? }
            }
            "halfdisc" => {
                let v = numbers(args, 3, name)?;
                Self::Halfdisc { r: v[0], mu: v[1], m: count(v[2], "m")? }
            }
            "triangle" => {
                let v = numbers(args, 6, name)?;
                Self::Triangle { vertices: [[v[0], v[1]], [v[2], v[3]], [v[4], v[5]]] }
            }
            _ => return Err(CliError::Input(format!("unknown body `{s}`"))),
        })
    }

    pub fn build(&self) -> Result<ConvexPolygon> {
        let positive = |x: f64, name: &str| {
            if x.is_finite() && x > 0.0 {
                Ok(())
            } else {
                Err(CliError::Input(format!("{name} must be positive, got {x}")))
            }
        };
        let arc = |m: usize| {
            if m < MIN_ARC_VERTICES {
                Err(CliError::Input(format!("need at least {MIN_ARC_VERTICES} arc vertices, got {m}")))
            } else {
                Ok(())
            }
        };
        let poly = match *self {
            Self::Square => rect(1.0, 1.0)?,
            Self::Rectangle { w, h } => {
                positive(w, "w")?;
                positive(h, "h")?;
                rect(w, h)?
            }
            Self::RegularNgon { n, r } => {
                positive(r, "r")?;
                regular_polygon(n, r, Point::ORIGIN, 0.0)?
            }
            Self::EllipseApprox { a, b, m } => {
                positive(a, "a")?;
                positive(b, "b")?;
                arc(m)?;
                let v = (0..m)
                    .map(|i| {
                        let t = TAU * i as f64 / m as f64;
                        Point::new(a * t.cos(), b * t.sin())
                    })
                    .collect();
                ConvexPolygon::new(v)?
            }
            Self::Halfdisc { r, mu, m } => {
                positive(r, "R")?;
                arc(m)?;
                if !(mu.abs() < r) {
                    return Err(CliError::Input(format!("need |mu| < R, got mu = {mu}, R = {r}")));
                }
                halfdisc(r, mu, m)?
            }
            Self::Triangle { vertices } => {
                let mut v: Vec<Point> = vertices.iter().map(|p| Point::new(p[0], p[1])).collect();
                let turn = (v[1] - v[0]).cross(v[2] - v[0]);
                if turn < 0.0 {
                    v.swap(1, 2);
                }
                ConvexPolygon::new(v)?
            }
        };
        Ok(poly)
    }
}

fn rect(w: f64, h: f64) -> Result<ConvexPolygon> {
    let v = vec![Point::new(0.0, 0.0), Point::new(w, 0.0), Point::new(w, h), Point::new(0.0, h)];
    Ok(ConvexPolygon::new(v)?)
}

/// `{|x| ≤ R, x₂ ≥ μ}` with `m` vertices on the arc, mirror-symmetric about `x₁ = 0`.
fn halfdisc(r: f64, mu: f64, m: usize) -> Result<ConvexPolygon> {
    let a0 = (mu / r).asin();
    let a1 = PI - a0;
    let mut pts: Vec<Point> = (0..m)
        .map(|i| {
            let t = a0 + (a1 - a0) * i as f64 / (m - 1) as f64;
            Point::new(r * t.cos(), r * t.sin())
        })
        .collect();
    for i in 0..m / 2 {
        pts[m - 1 - i] = Point::new(-pts[i].x, pts[i].y);
    }
    if m % 2 == 1 {
        pts[m / 2].x = 0.0;
    }
    Ok(ConvexPolygon::new(pts)?)
}

impl BodySpec {
    pub fn build(&self) -> Result<ConvexPolygon> {
        match self {
            Self::Vertices { vertices } => {
                Ok(ConvexPolygon::new(vertices.iter().map(|p| Point::new(p[0], p[1])).collect())?)
            }
            Self::Generator { generator } => generator.build(),
        }
    }
}

/// A generator string, or a path to a JSON body file.
pub fn load(arg: &str) -> Result<ConvexPolygon> {
    let path = Path::new(arg);
    if arg.ends_with(".json") || path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("reading {arg}"), e))?;
        let spec: BodySpec = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("{arg}: expected {{\"vertices\": ...}} or {{\"generator\": ...}}: {e}")))?;
        return spec.build();
    }
    Generator::parse(arg)?.build()
}
