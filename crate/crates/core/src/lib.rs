//! 3D finite-difference time-domain electromagnetic solver plus an analytic
//! step-index waveguide mode toolkit, built to study how much of a point
//! dipole's emission ends up in the guided modes of dielectric nanotips and
//! nanowires.
//!
//! The crate is organized around a single pipeline:
//!
//! 1. [`scene`] describes cylinders, materials and the simulation domain and
//!    rasterizes permittivity onto the staggered grid.
//! 2. [`fdtd`] advances Maxwell's equations with CPML absorbing boundaries.
//! 3. [`source`] injects the dipole current, [`monitor`] accumulates
//!    steady-state field phasors and Poynting fluxes.
//! 4. [`modes`] solves the vectorial dispersion relation of the equivalent
//!    circular waveguide; [`coupling`] projects monitor fields onto those
//!    modes and assembles per-run coupling reports.
//! 5. [`sweep`] plans and executes resumable parameter sweeps; [`config`]
//!    and [`report`] provide the on-disk interfaces.

pub mod config;
pub mod consts;
pub mod coupling;
pub mod error;
pub mod fdtd;
pub mod grid;
pub mod math;
pub mod modes;
pub mod monitor;
pub mod report;
pub mod scene;
pub mod snapshot;
pub mod source;
pub mod sweep;

pub use error::{Error, Result};
