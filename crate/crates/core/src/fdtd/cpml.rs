//! Convolutional PML: graded absorption profiles and the recursive
//! convolution state applied as corrective passes over the boundary slabs.
//!
//! The main update loops run the plain vacuum-coefficient stencil over the
//! whole grid; inside the PML slabs a second pass replaces each spatial
//! derivative D with D/kappa + psi, where the memory variable follows
//! psi <- b psi + c D. Corrections touch only the slab cells, so the
//! interior pays nothing for the boundary treatment.

use crate::consts::C0;
use crate::grid::{Axis, GridDims};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PmlParams {
    /// Thickness in cells per face.
    pub cells: usize,
    /// Polynomial grading order.
    pub order: f64,
    /// sigma_max as a fraction of the standard optimum (order+1)/(eta0 dx).
    pub sigma_scale: f64,
    pub kappa_max: f64,
    /// alpha_max in units of 1/(eta0 dx).
    pub alpha_scale: f64,
}

impl Default for PmlParams {
    fn default() -> Self {
        PmlParams {
            cells: 10,
            order: 3.0,
            sigma_scale: 0.8,
            kappa_max: 5.0,
            alpha_scale: 0.05,
        }
    }
}

/// Per-position CPML coefficients along one axis, for one staggering.
#[derive(Debug, Clone)]
pub struct AxisProfile {
    /// 1/kappa - 1 (zero outside the PML).
    pub kappa_corr: Vec<f32>,
    pub b: Vec<f32>,
    pub c: Vec<f32>,
}

impl AxisProfile {
    /// Profile over `n_nodes` positions at coordinate offset `stagger`
    /// (0.0 for integer nodes, 0.5 for half nodes) on an axis with `n`
    /// cells.
    fn build(params: &PmlParams, n: usize, n_nodes: usize, stagger: f64, dx: f64, dt: f64) -> Self {
        let npml = params.cells as f64;
        let sigma_max = params.sigma_scale * (params.order + 1.0) * C0 / dx; // sigma/eps0, 1/fs
        let alpha_max = params.alpha_scale * C0 / dx; // alpha/eps0, 1/fs
        let mut kappa_corr = vec![0.0f32; n_nodes];
        let mut b = vec![0.0f32; n_nodes];
        let mut c = vec![0.0f32; n_nodes];
        for i in 0..n_nodes {
            let x = i as f64 + stagger;
            let depth = (npml - x).max(x - (n as f64 - npml));
            if depth <= 0.0 {
                continue;
            }
            let rho = (depth / npml).min(1.0);
            let sigma = sigma_max * rho.powf(params.order);
            let kappa = 1.0 + (params.kappa_max - 1.0) * rho.powf(params.order);
            let alpha = alpha_max * (1.0 - rho);
            let bb = (-(sigma / kappa + alpha) * dt).exp();
            let denom = sigma * kappa + alpha * kappa * kappa;
            let cc = if denom > 0.0 {
                sigma * (bb - 1.0) / denom
            } else {
                0.0
            };
            kappa_corr[i] = (1.0 / kappa - 1.0) as f32;
            b[i] = bb as f32;
            c[i] = cc as f32;
        }
        AxisProfile { kappa_corr, b, c }
    }
}

/// Memory (psi) storage for one field component's derivative along one
/// axis, restricted to the two boundary slabs of that axis.
#[derive(Debug, Clone)]
pub struct PsiPair {
    pub lo: Vec<f32>,
    pub hi: Vec<f32>,
    /// First global index of the hi slab along the derivative axis.
    pub hi_start: usize,
    /// Slab width along the derivative axis.
    pub width: usize,
}

impl PsiPair {
    fn new(dims: &GridDims, axis: Axis, width: usize) -> Self {
        let n_axis = match axis {
            Axis::X => dims.sx(),
            Axis::Y => dims.sy(),
            Axis::Z => dims.sz(),
        };
        let other = dims.len() / n_axis;
        PsiPair {
            lo: vec![0.0; width * other],
            hi: vec![0.0; width * other],
            hi_start: n_axis - width,
            width,
        }
    }
}

/// Full CPML state: one profile per axis and staggering, one psi pair per
/// (field component, derivative axis).
#[derive(Debug, Clone)]
pub struct Cpml {
    pub params: PmlParams,
    /// Profiles indexed by axis, at integer positions (E-side derivatives).
    pub prof_e: [AxisProfile; 3],
    /// Profiles at half positions (H-side derivatives).
    pub prof_h: [AxisProfile; 3],
    // E-side memories.
    pub psi_ex_y: PsiPair,
    pub psi_ex_z: PsiPair,
    pub psi_ey_x: PsiPair,
    pub psi_ey_z: PsiPair,
    pub psi_ez_x: PsiPair,
    pub psi_ez_y: PsiPair,
    // H-side memories.
    pub psi_hx_y: PsiPair,
    pub psi_hx_z: PsiPair,
    pub psi_hy_x: PsiPair,
    pub psi_hy_z: PsiPair,
    pub psi_hz_x: PsiPair,
    pub psi_hz_y: PsiPair,
}

impl Cpml {
    pub fn new(params: PmlParams, dims: &GridDims, dt: f64) -> Self {
        let dx = dims.dx;
        let prof_e = [
            AxisProfile::build(&params, dims.nx, dims.sx(), 0.0, dx, dt),
            AxisProfile::build(&params, dims.ny, dims.sy(), 0.0, dx, dt),
            AxisProfile::build(&params, dims.nz, dims.sz(), 0.0, dx, dt),
        ];
        let prof_h = [
            AxisProfile::build(&params, dims.nx, dims.sx(), 0.5, dx, dt),
            AxisProfile::build(&params, dims.ny, dims.sy(), 0.5, dx, dt),
            AxisProfile::build(&params, dims.nz, dims.sz(), 0.5, dx, dt),
        ];
        // Slab width: one guard node beyond the nominal thickness so the
        // staggered half-positions at the interface are covered.
        let w = params.cells + 1;
        Cpml {
            params,
            prof_e,
            prof_h,
            psi_ex_y: PsiPair::new(dims, Axis::Y, w),
            psi_ex_z: PsiPair::new(dims, Axis::Z, w),
            psi_ey_x: PsiPair::new(dims, Axis::X, w),
            psi_ey_z: PsiPair::new(dims, Axis::Z, w),
            psi_ez_x: PsiPair::new(dims, Axis::X, w),
            psi_ez_y: PsiPair::new(dims, Axis::Y, w),
            psi_hx_y: PsiPair::new(dims, Axis::Y, w),
            psi_hx_z: PsiPair::new(dims, Axis::Z, w),
            psi_hy_x: PsiPair::new(dims, Axis::X, w),
            psi_hy_z: PsiPair::new(dims, Axis::Z, w),
            psi_hz_x: PsiPair::new(dims, Axis::X, w),
            psi_hz_y: PsiPair::new(dims, Axis::Y, w),
        }
    }
}
