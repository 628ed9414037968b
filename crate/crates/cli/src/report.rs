//! Versioned JSON report assembled by every subcommand.

use heart_core::bounds::{
    dist_lower_convex, dist_lower_general, dist_lower_star, lambda1_upper, BodyStats,
};
use heart_core::folding::{heart, heart_ball_radius, Heart};
use heart_core::fourier::{chi_hat, cutoff_from_units, f_via_fourier};
use heart_core::geometry::{chebyshev_center, shadow};
use heart_core::pde::{default_spacing, pde_verify};
use heart_core::polar::{coroll_check, lemma_check, polar_polygon, santalo_point};
use heart_core::{folding, ConvexPolygon, Direction, GeomConfig, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const SCHEMA: u32 = 1;
const STAR_ORDER: usize = 16;
const FOURIER_NODES: usize = 4096;
const FOURIER_PROBES: usize = 20;
const FOURIER_MAX_ERROR: f64 = 0.05;

pub fn xy(p: Point) -> [f64; 2] {
    [p.x, p.y]
}

fn pt(a: [f64; 2]) -> Point {
    Point::new(a[0], a[1])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub dirs: usize,
    pub tol: f64,
    pub h: Option<f64>,
    pub tmax: Option<f64>,
    pub fourier_cutoff: f64,
    pub santalo_tol: f64,
    pub seed: u64,
}

impl Settings {
    pub fn geom(&self) -> Result<GeomConfig> {
        GeomConfig::new(self.tol).map_err(|_| CliError::Input(format!("--tol must be positive, got {}", self.tol)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodySection {
    pub vertices: Vec<[f64; 2]>,
    pub area: f64,
    pub perimeter: f64,
    pub diameter: f64,
    pub inradius: f64,
    pub centroid: [f64; 2],
    pub incenter: [f64; 2],
    pub incenter_unique: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeartSection {
    pub directions: usize,
    pub kind: String,
    pub vertices: Vec<[f64; 2]>,
    pub ball_radius: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub centroid_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsSection {
    pub lambda1_upper_fk: f64,
    pub lambda1_upper_monotone: f64,
    /// Eigenvalue fed to the general bounds: numeric if available, else the smaller upper bound.
    pub lambda1_used: f64,
    pub general_precise: f64,
    pub general_coarse: f64,
    pub convex_precise: f64,
    pub convex_coarse: f64,
    pub convex_improved: f64,
    pub star_w: f64,
    pub star_minimizer: [f64; 2],
    pub star: f64,
}

impl BoundsSection {
    fn distance_bounds(&self) -> [f64; 6] {
        [
            self.general_precise,
            self.general_coarse,
            self.convex_precise,
            self.convex_coarse,
            self.convex_improved,
            self.star,
        ]
    }

    pub fn largest(&self) -> f64 {
        self.distance_bounds().into_iter().fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarSection {
    pub center: [f64; 2],
    pub area: f64,
    pub vertices: Vec<[f64; 2]>,
    pub lemma_lhs: f64,
    pub lemma_rhs: f64,
    pub lemma_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SantaloSection {
    pub point: [f64; 2],
    pub polar_area: f64,
    pub boundary_distance: f64,
    pub largest_bound: f64,
    pub above_bounds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub x: [f64; 2],
    pub m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PdeSection {
    pub h: f64,
    pub interior_nodes: usize,
    pub t_end: f64,
    pub lambda1: f64,
    pub eigen_residual: f64,
    pub x_inf: [f64; 2],
    pub decay_rate: f64,
    pub u_min: f64,
    pub u_max: f64,
    pub trajectory: Vec<Sample>,
    pub heart_worst: f64,
    pub heart_slack: f64,
    pub early_rel_err: f64,
    pub late_shift: Option<f64>,
    pub polar_lhs: f64,
    pub polar_rhs: f64,
    pub polar_ok: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Probe {
    pub angle: f64,
    pub y: f64,
    pub fourier: f64,
    pub geometric: f64,
    pub rel_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierSection {
    pub cutoff_units: f64,
    pub cutoff: f64,
    pub seed: u64,
    pub area_error: f64,
    pub probes: Vec<Probe>,
    pub max_rel_error: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub tool: Tool,
    pub command: String,
    pub settings: Settings,
    pub body: BodySection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heart: Option<HeartSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polar: Option<PolarSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub santalo: Option<SantaloSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pde: Option<PdeSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fourier: Option<FourierSection>,
}

/// Computation context shared by the section builders.
pub struct Context {
    pub body: ConvexPolygon,
    pub settings: Settings,
    pub cfg: GeomConfig,
    heart: Option<Heart>,
    lambda1: Option<f64>,
}

impl Context {
    pub fn new(body: ConvexPolygon, settings: Settings) -> Result<Self> {
        let cfg = settings.geom()?;
        if settings.dirs < 8 {
            return Err(CliError::Input(format!("--dirs must be at least 8, got {}", settings.dirs)));
        }
        Ok(Self { body, settings, cfg, heart: None, lambda1: None })
    }

    pub fn report(&self, command: &str) -> Report {
        let k = &self.body;
        let c = chebyshev_center(k, &self.cfg);
        Report {
            schema: SCHEMA,
            tool: Tool { name: "heart".into(), version: env!("CARGO_PKG_VERSION").into() },
            command: command.into(),
            settings: self.settings.clone(),
            body: BodySection {
                vertices: k.vertices().iter().copied().map(xy).collect(),
                area: k.area(),
                perimeter: k.perimeter(),
                diameter: k.diameter(),
                inradius: c.inradius,
                centroid: xy(k.centroid()),
                incenter: xy(c.incenter),
                incenter_unique: c.unique,
            },
            heart: None,
            bounds: None,
            polar: None,
            santalo: None,
            pde: None,
            fourier: None,
        }
    }

    fn heart(&mut self) -> Result<&Heart> {
        if self.heart.is_none() {
            self.heart = Some(heart(&self.body, self.settings.dirs, &[], &self.cfg)?);
        }
        Ok(self.heart.as_ref().expect("just computed"))
    }

    pub fn heart_section(&mut self) -> Result<HeartSection> {
        let dirs = self.settings.dirs;
        let k = self.body.clone();
        let cfg = self.cfg;
        let h = self.heart()?;
        let ball = heart_ball_radius(&k, &h.profile, &h.region, &cfg);
        let rs = h.profile.entries.iter().map(|e| e.r);
        Ok(HeartSection {
            directions: dirs,
            kind: h.region.kind().into(),
            vertices: h.region.vertices().into_iter().map(xy).collect(),
            ball_radius: ball.radius,
            r_min: rs.clone().fold(f64::INFINITY, f64::min),
            r_max: rs.fold(f64::NEG_INFINITY, f64::max),
            centroid_distance: h.region.distance_to(k.centroid()),
        })
    }

    pub fn bounds_section(&self) -> Result<BoundsSection> {
        let k = &self.body;
        let stats = BodyStats::of_polygon(k, &self.cfg);
        let up = lambda1_upper(&stats)?;
        let lambda = self.lambda1.unwrap_or_else(|| up.min_upper());
        let g = dist_lower_general(&stats, lambda)?;
        let c = dist_lower_convex(&stats)?;
        let s = dist_lower_star(k, STAR_ORDER, &self.cfg)?;
        Ok(BoundsSection {
            lambda1_upper_fk: up.upper_fk,
            lambda1_upper_monotone: up.upper_monotone,
            lambda1_used: lambda,
            general_precise: g.precise,
            general_coarse: g.coarse,
            convex_precise: c.precise,
            convex_coarse: c.coarse,
            convex_improved: c.improved,
            star_w: s.w.value,
            star_minimizer: xy(s.w.minimizer),
            star: s.bound,
        })
    }

    pub fn polar_section(&self, center: Option<Point>) -> Result<PolarSection> {
        let k = &self.body;
        let p = center.unwrap_or_else(|| k.centroid());
        let pp = polar_polygon(k, p, &self.cfg)?;
        let lemma = lemma_check(k, p, &self.cfg)?;
        Ok(PolarSection {
            center: xy(p),
            area: pp.area(),
            vertices: pp.polar.vertices().iter().copied().map(xy).collect(),
            lemma_lhs: lemma.lhs,
            lemma_rhs: lemma.rhs,
            lemma_ok: lemma.ok,
        })
    }

    pub fn santalo_section(&self) -> Result<SantaloSection> {
        let k = &self.body;
        let s = santalo_point(k, self.settings.santalo_tol, &self.cfg)?;
        let d = k.boundary_distance(s);
        let largest = self.bounds_section()?.largest();
        Ok(SantaloSection {
            point: xy(s),
            polar_area: polar_polygon(k, s, &self.cfg)?.area(),
            boundary_distance: d,
            largest_bound: largest,
            above_bounds: d >= largest,
        })
    }

    pub fn pde_section(&mut self) -> Result<PdeSection> {
        let k = self.body.clone();
        let cfg = self.cfg;
        let h = self.settings.h.unwrap_or_else(|| default_spacing(&k, &cfg));
        let tmax = self.settings.tmax;
        if let Some(t) = tmax {
            if !(t > (10.0 * h).powi(2)) {
                return Err(CliError::Input(format!("--tmax must exceed the first sample time (10h)^2 = {}", (10.0 * h).powi(2))));
            }
        }
        let region = self.heart()?.region.clone();
        let rep = pde_verify(&k, h, tmax, &region, &cfg)?;
        self.lambda1 = Some(rep.eigen.lambda1);
        let polar = coroll_check(&k, rep.eigen.x_inf, rep.eigen.lambda1, &cfg)?;
        Ok(PdeSection {
            h,
            interior_nodes: rep.interior_cells,
            t_end: rep.t_end,
            lambda1: rep.eigen.lambda1,
            eigen_residual: rep.eigen.residual,
            x_inf: xy(rep.eigen.x_inf),
            decay_rate: rep.track.decay_rate,
            u_min: rep.track.u_min,
            u_max: rep.track.u_max,
            trajectory: rep.track.samples.iter().map(|s| Sample { t: s.t, x: xy(s.x), m: s.m }).collect(),
            heart_worst: rep.heart.worst,
            heart_slack: rep.heart.slack,
            early_rel_err: rep.varadhan.early_rel_err,
            late_shift: rep.varadhan.late_shift,
            polar_lhs: polar.lhs,
            polar_rhs: polar.rhs,
            polar_ok: polar.ok,
            pass: rep.pass && polar.ok,
        })
    }

    pub fn fourier_section(&self) -> Result<FourierSection> {
        let k = &self.body;
        let units = self.settings.fourier_cutoff;
        if !(units.is_finite() && units > 0.0) {
            return Err(CliError::Input(format!("--fourier-cutoff must be positive, got {units}")));
        }
        let cutoff = cutoff_from_units(k, units);
        let mut rng = ChaCha8Rng::seed_from_u64(self.settings.seed);
        let mut probes = Vec::with_capacity(FOURIER_PROBES);
        for _ in 0..FOURIER_PROBES {
            let angle = rng.gen_range(0.0..std::f64::consts::TAU);
            let w = Direction::from_angle(angle);
            let sh = shadow(k, w);
            let y = sh.lo + sh.len() * rng.gen_range(0.1..0.9);
            let fourier = f_via_fourier(k, w, y, cutoff, FOURIER_NODES)?.value;
            let geometric = folding::f_omega(k, w, y, &self.cfg)?;
            probes.push(Probe { angle, y, fourier, geometric, rel_error: (fourier - geometric).abs() / k.diameter() });
        }
        let max_rel_error = probes.iter().map(|p| p.rel_error).fold(0.0, f64::max);
        let area_error = (chi_hat(k, Point::ORIGIN).re - k.area()).abs();
        Ok(FourierSection {
            cutoff_units: units,
            cutoff,
            seed: self.settings.seed,
            area_error,
            probes,
            max_rel_error,
            pass: max_rel_error <= FOURIER_MAX_ERROR && area_error <= 1e-12 * k.area().max(1.0),
        })
    }
}

impl Report {
    /// Problems with the internal consistency of the report, if any.
    pub fn inconsistencies(&self) -> Vec<String> {
        let mut out = Vec::new();
        let k = ConvexPolygon::new(self.body.vertices.iter().copied().map(pt).collect());
        let eps = self.settings.tol * self.body.diameter;
        if let (Ok(k), Some(h)) = (&k, &self.heart) {
            if h.vertices.iter().any(|&v| k.boundary_distance(pt(v)) < -eps) {
                out.push("heart vertex outside the body".into());
            }
            if h.centroid_distance > eps {
                out.push(format!("centroid is {:.3e} outside the heart", h.centroid_distance));
            }
        }
        if let Some(b) = &self.bounds {
            if b.distance_bounds().iter().any(|&x| !(x >= 0.0)) {
                out.push("negative distance bound".into());
            }
        }
        if let Some(p) = &self.polar {
            if !p.lemma_ok {
                out.push(format!("polar area {} below the lemma bound {}", p.lemma_lhs, p.lemma_rhs));
            }
        }
        if let Some(s) = &self.santalo {
            if !s.above_bounds {
                out.push("Santalo point violates a distance bound".into());
            }
        }
        if let Some(p) = &self.pde {
            if !p.pass {
                out.push(format!(
                    "PDE verification failed (heart worst {:.3e}, early error {:.3}, late shift {:?}, polar ok {})",
                    p.heart_worst, p.early_rel_err, p.late_shift, p.polar_ok
                ));
            }
        }
        if let Some(f) = &self.fourier {
            if !f.pass {
                out.push(format!("Fourier reconstruction error {:.3e} of the diameter", f.max_rel_error));
            }
        }
        out
    }
}
