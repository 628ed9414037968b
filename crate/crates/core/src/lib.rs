//! Hot-spot confinement for convex polygons.
//!
//! The central object is the *heart* of a convex body `K`: the set of points
//! `x ∈ K` with `x·ω <= R_K(ω)` for every direction `ω`, where `R_K(ω)` is the
//! maximal folding function (the lowest line orthogonal to `ω` across which the
//! cap of `K` can be reflected into `K`). The heart contains the hot spot of the
//! heat equation with unit initial data and grounded boundary at every time, as
//! well as the maximum point of the first Dirichlet eigenfunction.
//!
//! Modules
//! - [`geometry`]: convex polygon primitives.
//! - [`folding`]: `R_K`, its brute-force reflection oracle, the heart, and diagnostics.
//! - [`bounds`]: lower bounds on the distance of the eigenfunction maximum from the boundary.
//! - [`polar`]: polar polygons, the Santalò point, and polar-area inequalities.
//! - [`fourier`]: indicator Fourier transform and chord reconstruction by inversion.
//! - [`pde`]: finite-difference heat flow and eigenproblem used to check all of the above.

pub mod bounds;
pub mod error;
pub mod folding;
pub mod fourier;
pub mod geometry;
pub mod pde;
pub mod polar;
pub mod quadrature;

pub use error::{HeartError, Result};
pub use geometry::{ConvexPolygon, Direction, GeomConfig, HalfPlane, Point, Region};
