mod body;
mod error;
mod report;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use heart_core::Point;
use serde::Deserialize;

use crate::error::{CliError, Result};
use crate::report::{Context, Report, Settings};

/// Hot-spot confinement regions of convex polygons.
#[derive(Debug, Parser)]
#[command(name = "heart", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Folding function and heart of the body.
    Heart(Common),
    /// Eigenvalue and distance-to-boundary bounds.
    Bounds(Common),
    /// Polar polygon about a center (default: the centroid).
    Polar {
        #[command(flatten)]
        common: Common,
        /// Center as `x,y`.
        #[arg(long)]
        center: Option<String>,
    },
    /// Santalò point and its distance bounds.
    Santalo(Common),
    /// Heat flow and eigenproblem checked against the heart.
    PdeVerify(Common),
    /// Chord midpoints reconstructed from the Fourier transform.
    FourierCheck(Common),
    /// Everything above in one report.
    Report(Common),
    /// Re-render the SVG of a saved JSON report.
    Render {
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Generator (`square`, `rectangle:w,h`, `regular_ngon:n,r`, `ellipse_approx:a,b,m`,
    /// `halfdisc:R,mu,m`, `triangle:x1,y1,x2,y2,x3,y3`) or a JSON body file.
    #[arg(long)]
    body: String,
    /// Number of uniform directions for the heart [default: 720].
    #[arg(long)]
    dirs: Option<usize>,
    /// Geometric tolerance relative to the diameter [default: 1e-9].
    #[arg(long)]
    tol: Option<f64>,
    /// Grid spacing [default: inradius/50].
    #[arg(long)]
    h: Option<f64>,
    /// Final heat-flow time [default: from the eigenvalue and diameter].
    #[arg(long)]
    tmax: Option<f64>,
    /// Fourier truncation in units of 2π/diam [default: 400].
    #[arg(long)]
    fourier_cutoff: Option<f64>,
    /// Santalò search step tolerance relative to the diameter [default: 1e-9].
    #[arg(long)]
    santalo_tol: Option<f64>,
    /// Seed for random probes [default: 0].
    #[arg(long)]
    seed: Option<u64>,
    /// JSON file with default values for the flags above.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write an SVG figure here.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    dirs: Option<usize>,
    tol: Option<f64>,
    h: Option<f64>,
    tmax: Option<f64>,
    fourier_cutoff: Option<f64>,
    santalo_tol: Option<f64>,
    seed: Option<u64>,
}

impl Common {
    fn settings(&self) -> Result<Settings> {
        let file = match &self.config {
            Some(p) => {
                let text = read(p)?;
                serde_json::from_str::<ConfigFile>(&text)
                    .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?
            }
            None => ConfigFile::default(),
        };
        Ok(Settings {
            dirs: self.dirs.or(file.dirs).unwrap_or(720),
            tol: self.tol.or(file.tol).unwrap_or(1e-9),
            h: self.h.or(file.h),
            tmax: self.tmax.or(file.tmax),
            fourier_cutoff: self.fourier_cutoff.or(file.fourier_cutoff).unwrap_or(400.0),
            santalo_tol: self.santalo_tol.or(file.santalo_tol).unwrap_or(1e-9),
            seed: self.seed.or(file.seed).unwrap_or(0),
        })
    }

    fn context(&self) -> Result<Context> {
        Context::new(body::load(&self.body)?, self.settings()?)
    }
}

fn read(p: &Path) -> Result<String> {
    std::fs::read_to_string(p).map_err(|e| CliError::io(format!("reading {}", p.display()), e))
}

fn write(p: &Path, text: &str) -> Result<()> {
    std::fs::write(p, text).map_err(|e| CliError::io(format!("writing {}", p.display()), e))
}

fn parse_point(s: &str) -> Result<Point> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| CliError::Input(format!("--center: {e}")))?;
    match v.as_slice() {
        [x, y] => Ok(Point::new(*x, *y)),
        _ => Err(CliError::Input(format!("--center takes `x,y`, got `{s}`"))),
    }
}

fn emit(report: &Report, common: &Common) -> Result<()> {
    let text = serde_json::to_string_pretty(report)? + "\n";
    match &common.json {
        Some(p) => write(p, &text)?,
        None => print!("{text}"),
    }
    if let Some(p) = &common.svg {
        write(p, &svg::render(report))?;
    }
    let problems = report.inconsistencies();
    if problems.is_empty() {
        Ok(())
    } else {
        Err(CliError::Inconsistent(problems.join("; ")))
    }
}

fn run(command: Command) -> Result<()> {
    let (name, common, center) = match command {
        Command::Render { report, svg } => {
            let r: Report = serde_json::from_str(&read(&report)?)
                .map_err(|e| CliError::Input(format!("{}: {e}", report.display())))?;
            let text = svg::render(&r);
            return match svg {
                Some(p) => write(&p, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
        }
        Command::Polar { common, center } => ("polar", common, center),
        Command::Heart(c) => ("heart", c, None),
        Command::Bounds(c) => ("bounds", c, None),
        Command::Santalo(c) => ("santalo", c, None),
        Command::PdeVerify(c) => ("pde-verify", c, None),
        Command::FourierCheck(c) => ("fourier-check", c, None),
        Command::Report(c) => ("report", c, None),
    };
    let mut ctx = common.context()?;
    let mut r = ctx.report(name);
    match name {
        "heart" => r.heart = Some(ctx.heart_section()?),
        "bounds" => r.bounds = Some(ctx.bounds_section()?),
        "polar" => {
            let p = center.as_deref().map(parse_point).transpose()?;
            r.polar = Some(ctx.polar_section(p)?);
        }
        "santalo" => {
            r.bounds = Some(ctx.bounds_section()?);
            r.santalo = Some(ctx.santalo_section()?);
        }
        "pde-verify" => {
            r.heart = Some(ctx.heart_section()?);
            r.pde = Some(ctx.pde_section()?);
        }
        "fourier-check" => r.fourier = Some(ctx.fourier_section()?),
        _ => {
            r.heart = Some(ctx.heart_section()?);
            r.pde = Some(ctx.pde_section()?);
            r.bounds = Some(ctx.bounds_section()?);
            r.polar = Some(ctx.polar_section(None)?);
            r.santalo = Some(ctx.santalo_section()?);
            r.fourier = Some(ctx.fourier_section()?);
        }
    }
    emit(&r, &common)
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(CliError::Input(e.to_string().trim().to_string())),
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}
