//! Time-domain Maxwell solver on the Yee staggered grid with CPML
//! absorbing boundaries.
//!
//! Fields are single-precision flat arrays over the shared node lattice;
//! every update is a pure stencil over unit-stride rows, parallelized over
//! z-planes. The tangential E components on the outer boundary stay zero
//! (PEC backing behind the PML). Time stepping snaps dt to an integer
//! number of steps per optical cycle (within the Courant bound) so DFT
//! windows cover exact periods.

pub mod cpml;
pub mod one_d;

use crate::consts::{C0, EPS0, MU0};
use crate::error::{Error, Result};
use crate::grid::{Axis, GridDims};
use crate::monitor::DftMonitor;
use crate::scene::PermittivityGrid;
use crate::source::{CurrentSheet, DipoleSource, InjectionPlan};
use cpml::{Cpml, PmlParams, PsiPair};
use rayon::prelude::*;

/// CFL bound for the uniform 3D Yee grid: safety * dx / (c sqrt(3)).
/// Vacuum is the fastest medium present, so this bound covers dielectrics.
pub fn courant_dt(grid_step: f64, safety: f64) -> Result<f64> {
    if !(safety > 0.0 && safety <= 1.0) {
        return Err(Error::Config(format!(
            "courant safety must be in (0, 1], got {safety}"
        )));
    }
    if grid_step <= 0.0 {
        return Err(Error::Config(format!(
            "grid step must be positive, got {grid_step}"
        )));
    }
    Ok(safety * grid_step / (C0 * 3.0_f64.sqrt()))
}

/// Discretization parameters: grid geometry, time step, PML profile.
#[derive(Debug, Clone)]
pub struct GridSpec {
    pub dims: GridDims,
    pub dt: f64,
    pub steps_per_cycle: u64,
    pub pml: PmlParams,
}

impl GridSpec {
    /// Snap dt to an integer number of steps per optical period of
    /// `wavelength`, at or below the Courant bound.
    pub fn new(dims: GridDims, courant: f64, pml: PmlParams, wavelength: f64) -> Result<Self> {
        let dt_max = courant_dt(dims.dx, courant)?;
        let period = wavelength / C0;
        let steps_per_cycle = (period / dt_max).ceil() as u64;
        let dt = period / steps_per_cycle as f64;
        Ok(GridSpec {
            dims,
            dt,
            steps_per_cycle,
            pml,
        })
    }
}

/// E and H component arrays plus the CPML memory state at one time level.
pub struct FieldState {
    pub e: [Vec<f32>; 3],
    pub h: [Vec<f32>; 3],
    pub cpml: Cpml,
    pub step_index: u64,
}

/// Stop condition for a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StopRule {
    FixedSteps(u64),
    /// Terminate once every monitor's per-cycle DFT power changes by less
    /// than `ratio` (relative) over a 5-cycle window; hard ceiling in
    /// cycles. `min_cycles` guards against declaring convergence before
    /// the source ramp and the first domain transit have completed.
    AutoShutoff {
        ratio: f64,
        max_cycles: u64,
        min_cycles: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOutcome {
    pub converged: bool,
    pub cycles: u64,
    pub steps: u64,
}

/// One FDTD simulation: geometry, coefficients, sources, monitors, state.
pub struct Simulation {
    pub spec: GridSpec,
    /// Update coefficients dt/(eps0 eps_r dx) per E component sample.
    ce: [Vec<f32>; 3],
    /// dt/(mu0 dx).
    ch: f32,
    pub state: FieldState,
    dipoles: Vec<(DipoleSource, InjectionPlan)>,
    sheets: Vec<CurrentSheet>,
    pub monitors: Vec<DftMonitor>,
}

impl Simulation {
    /// Build from a rasterized permittivity grid, consuming it to reuse
    /// the allocation for the update coefficients.
    pub fn new(eps: PermittivityGrid, spec: GridSpec) -> Self {
        let dims = spec.dims;
        let dt = spec.dt;
        let mut ce_arrays = eps.eps;
        for comp in ce_arrays.iter_mut() {
            for v in comp.iter_mut() {
                *v = (dt / (EPS0 * f64::from(*v) * dims.dx)) as f32;
            }
        }
        let zero = || vec![0.0f32; dims.len()];
        Simulation {
            ce: ce_arrays,
            ch: (dt / (MU0 * dims.dx)) as f32,
            state: FieldState {
                e: [zero(), zero(), zero()],
                h: [zero(), zero(), zero()],
                cpml: Cpml::new(spec.pml, &dims, dt),
                step_index: 0,
            },
            dipoles: Vec::new(),
            sheets: Vec::new(),
            monitors: Vec::new(),
            spec,
        }
    }

    pub fn add_dipole(&mut self, source: DipoleSource) -> Result<()> {
        let plan = InjectionPlan::build(&source, &self.spec.dims, self.spec.pml.cells)?;
        self.dipoles.push((source, plan));
        Ok(())
    }

    pub fn add_sheet(&mut self, sheet: CurrentSheet) {
        self.sheets.push(sheet);
    }

    pub fn add_monitor(&mut self, monitor: DftMonitor) {
        self.monitors.push(monitor);
    }

    pub fn time_fs(&self) -> f64 {
        self.state.step_index as f64 * self.spec.dt
    }

    /// Advance one full time step: H half-update, E full update, source
    /// injection, monitor accumulation.
    pub fn step(&mut self) {
        self.update_h();
        self.apply_cpml_h();
        self.update_e();
        self.apply_cpml_e();
        let t_half = (self.state.step_index as f64 + 0.5) * self.spec.dt;
        self.inject_sources(t_half);
        self.state.step_index += 1;
        let t_e = self.state.step_index as f64 * self.spec.dt;
        let dims = self.spec.dims;
        let dt = self.spec.dt;
        let (e, h) = (&self.state.e, &self.state.h);
        for m in &mut self.monitors {
            m.accumulate(&dims, e, h, t_e, t_half, dt);
        }
    }

    fn update_h(&mut self) {
        let d = self.spec.dims;
        let (sx, sy) = (d.sx(), d.sy());
        let plane = sx * sy;
        let ch = self.ch;
        let (ex, ey, ez) = (&self.state.e[0], &self.state.e[1], &self.state.e[2]);
        let [hx, hy, hz] = &mut self.state.h;

        hx.par_chunks_mut(plane)
            .zip(hy.par_chunks_mut(plane).zip(hz.par_chunks_mut(plane)))
            .enumerate()
            .for_each(|(k, (hx_p, (hy_p, hz_p)))| {
                let k_base = k * plane;
                // Hx: -= ch*((Ez[j+1]-Ez[j]) - (Ey[k+1]-Ey[k])), k < nz, j < ny
                if k < d.nz {
                    for j in 0..d.ny {
                        let row = j * sx;
                        let ez_j0 = &ez[k_base + row..][..sx];
                        let ez_j1 = &ez[k_base + row + sx..][..sx];
                        let ey_k0 = &ey[k_base + row..][..sx];
                        let ey_k1 = &ey[k_base + plane + row..][..sx];
                        let out = &mut hx_p[row..row + sx];
                        for i in 0..sx {
                            out[i] -= ch * ((ez_j1[i] - ez_j0[i]) - (ey_k1[i] - ey_k0[i]));
                        }
                    }
                }
                // Hy: -= ch*((Ex[k+1]-Ex[k]) - (Ez[i+1]-Ez[i])), k < nz
                if k < d.nz {
                    for j in 0..sy {
                        let row = j * sx;
                        let ex_k0 = &ex[k_base + row..][..sx];
                        let ex_k1 = &ex[k_base + plane + row..][..sx];
                        let ez_row = &ez[k_base + row..][..sx];
                        let out = &mut hy_p[row..row + sx];
                        for i in 0..d.nx {
                            out[i] -= ch * ((ex_k1[i] - ex_k0[i]) - (ez_row[i + 1] - ez_row[i]));
                        }
                    }
                }
                // Hz: -= ch*((Ey[i+1]-Ey[i]) - (Ex[j+1]-Ex[j])), j < ny
                for j in 0..d.ny {
                    let row = j * sx;
                    let ey_row = &ey[k_base + row..][..sx];
                    let ex_j0 = &ex[k_base + row..][..sx];
                    let ex_j1 = &ex[k_base + row + sx..][..sx];
                    let out = &mut hz_p[row..row + sx];
                    for i in 0..d.nx {
                        out[i] -= ch * ((ey_row[i + 1] - ey_row[i]) - (ex_j1[i] - ex_j0[i]));
                    }
                }
            });
    }

    fn update_e(&mut self) {
        let d = self.spec.dims;
        let (sx, sy) = (d.sx(), d.sy());
        let plane = sx * sy;
        let (hx, hy, hz) = (&self.state.h[0], &self.state.h[1], &self.state.h[2]);
        let (ce_x, ce_y, ce_z) = (&self.ce[0], &self.ce[1], &self.ce[2]);
        let [ex, ey, ez] = &mut self.state.e;

        ex.par_chunks_mut(plane)
            .zip(ey.par_chunks_mut(plane).zip(ez.par_chunks_mut(plane)))
            .enumerate()
            .for_each(|(k, (ex_p, (ey_p, ez_p)))| {
                let k_base = k * plane;
                // Ex: += ce*((Hz[j]-Hz[j-1]) - (Hy[k]-Hy[k-1])), j,k interior
                if k >= 1 && k < d.nz {
                    for j in 1..d.ny {
                        let row = j * sx;
                        let hz_j0 = &hz[k_base + row - sx..][..sx];
                        let hz_j1 = &hz[k_base + row..][..sx];
                        let hy_k0 = &hy[k_base - plane + row..][..sx];
                        let hy_k1 = &hy[k_base + row..][..sx];
                        let ce = &ce_x[k_base + row..][..sx];
                        let out = &mut ex_p[row..row + sx];
                        for i in 0..d.nx {
                            out[i] += ce[i] * ((hz_j1[i] - hz_j0[i]) - (hy_k1[i] - hy_k0[i]));
                        }
                    }
                }
                // Ey: += ce*((Hx[k]-Hx[k-1]) - (Hz[i]-Hz[i-1])), i,k interior
                if k >= 1 && k < d.nz {
                    for j in 0..d.ny {
                        let row = j * sx;
                        let hx_k0 = &hx[k_base - plane + row..][..sx];
                        let hx_k1 = &hx[k_base + row..][..sx];
                        let hz_row = &hz[k_base + row..][..sx];
                        let ce = &ce_y[k_base + row..][..sx];
                        let out = &mut ey_p[row..row + sx];
                        for i in 1..d.nx {
                            out[i] += ce[i] * ((hx_k1[i] - hx_k0[i]) - (hz_row[i] - hz_row[i - 1]));
                        }
                    }
                }
                // Ez: += ce*((Hy[i]-Hy[i-1]) - (Hx[j]-Hx[j-1])), i,j interior
                if k < d.nz {
                    for j in 1..d.ny {
                        let row = j * sx;
                        let hy_row = &hy[k_base + row..][..sx];
                        let hx_j0 = &hx[k_base + row - sx..][..sx];
                        let hx_j1 = &hx[k_base + row..][..sx];
                        let ce = &ce_z[k_base + row..][..sx];
                        let out = &mut ez_p[row..row + sx];
                        for i in 1..d.nx {
                            out[i] += ce[i] * ((hy_row[i] - hy_row[i - 1]) - (hx_j1[i] - hx_j0[i]));
                        }
                    }
                }
            });
    }

    /// CPML corrective passes for the H update (after update_h).
    fn apply_cpml_h(&mut self) {
        let d = self.spec.dims;
        let (sx, sy, sz) = (d.sx(), d.sy(), d.sz());
        let ch = self.ch;
        let (ex, ey, ez) = (&self.state.e[0], &self.state.e[1], &self.state.e[2]);
        let cp = &mut self.state.cpml;

        // Hz -= ch * Dx(Ey) term: correct within x slabs.
        {
            let prof = &cp.prof_h[0];
            let hz = &mut self.state.h[2];
            Self::corr_x(
                d,
                &mut cp.psi_hz_x,
                prof,
                |i, j, k| ey[(k * sy + j) * sx + i + 1] - ey[(k * sy + j) * sx + i],
                |i, j, k, v| hz[(k * sy + j) * sx + i] -= ch * v,
                (0, d.nx, 0, d.ny, 0, sz),
            );
        }
        // Hz += ch * Dy(Ex): y slabs.
        {
            let prof = &cp.prof_h[1];
            let hz = &mut self.state.h[2];
            Self::corr_y(
                d,
                &mut cp.psi_hz_y,
                prof,
                |i, j, k| ex[(k * sy + j + 1) * sx + i] - ex[(k * sy + j) * sx + i],
                |i, j, k, v| hz[(k * sy + j) * sx + i] += ch * v,
                (0, d.nx, 0, d.ny, 0, sz),
            );
        }
        // Hy += ch * Dx(Ez): x slabs.
        {
            let prof = &cp.prof_h[0];
            let hy = &mut self.state.h[1];
            Self::corr_x(
                d,
                &mut cp.psi_hy_x,
                prof,
                |i, j, k| ez[(k * sy + j) * sx + i + 1] - ez[(k * sy + j) * sx + i],
                |i, j, k, v| hy[(k * sy + j) * sx + i] += ch * v,
                (0, d.nx, 0, sy, 0, d.nz),
            );
        }
        // Hy -= ch * Dz(Ex): z slabs.
        {
            let prof = &cp.prof_h[2];
            let hy = &mut self.state.h[1];
            Self::corr_z(
                d,
                &mut cp.psi_hy_z,
                prof,
                |i, j, k| ex[((k + 1) * sy + j) * sx + i] - ex[(k * sy + j) * sx + i],
                |i, j, k, v| hy[(k * sy + j) * sx + i] -= ch * v,
                (0, d.nx, 0, sy, 0, d.nz),
            );
        }
        // Hx -= ch * Dy(Ez): y slabs.
        {
            let prof = &cp.prof_h[1];
            let hx = &mut self.state.h[0];
            Self::corr_y(
                d,
                &mut cp.psi_hx_y,
                prof,
                |i, j, k| ez[(k * sy + j + 1) * sx + i] - ez[(k * sy + j) * sx + i],
                |i, j, k, v| hx[(k * sy + j) * sx + i] -= ch * v,
                (0, sx, 0, d.ny, 0, d.nz),
            );
        }
        // Hx += ch * Dz(Ey): z slabs.
        {
            let prof = &cp.prof_h[2];
            let hx = &mut self.state.h[0];
            Self::corr_z(
                d,
                &mut cp.psi_hx_z,
                prof,
                |i, j, k| ey[((k + 1) * sy + j) * sx + i] - ey[(k * sy + j) * sx + i],
                |i, j, k, v| hx[(k * sy + j) * sx + i] += ch * v,
                (0, sx, 0, d.ny, 0, d.nz),
            );
        }
    }

    /// CPML corrective passes for the E update (after update_e).
    fn apply_cpml_e(&mut self) {
        let d = self.spec.dims;
        let (sx, sy) = (d.sx(), d.sy());
        let (hx, hy, hz) = (&self.state.h[0], &self.state.h[1], &self.state.h[2]);
        let cp = &mut self.state.cpml;
        let (ce_x, ce_y, ce_z) = (&self.ce[0], &self.ce[1], &self.ce[2]);

        // Ey -= ce * Dx(Hz): x slabs (i interior).
        {
            let prof = &cp.prof_e[0];
            let ey = &mut self.state.e[1];
            Self::corr_x(
                d,
                &mut cp.psi_ey_x,
                prof,
                |i, j, k| hz[(k * sy + j) * sx + i] - hz[(k * sy + j) * sx + i - 1],
                |i, j, k, v| {
                    let idx = (k * sy + j) * sx + i;
                    ey[idx] -= ce_y[idx] * v;
                },
                (1, d.nx, 0, d.ny, 1, d.nz),
            );
        }
        // Ez += ce * Dx(Hy): x slabs.
        {
            let prof = &cp.prof_e[0];
            let ez = &mut self.state.e[2];
            Self::corr_x(
                d,
                &mut cp.psi_ez_x,
                prof,
                |i, j, k| hy[(k * sy + j) * sx + i] - hy[(k * sy + j) * sx + i - 1],
                |i, j, k, v| {
                    let idx = (k * sy + j) * sx + i;
                    ez[idx] += ce_z[idx] * v;
                },
                (1, d.nx, 1, d.ny, 0, d.nz),
            );
        }
        // Ex += ce * Dy(Hz): y slabs.
        {
            let prof = &cp.prof_e[1];
            let ex = &mut self.state.e[0];
            Self::corr_y(
                d,
                &mut cp.psi_ex_y,
                prof,
                |i, j, k| hz[(k * sy + j) * sx + i] - hz[(k * sy + j - 1) * sx + i],
                |i, j, k, v| {
                    let idx = (k * sy + j) * sx + i;
                    ex[idx] += ce_x[idx] * v;
                },
                (0, d.nx, 1, d.ny, 1, d.nz),
            );
        }
        // Ez -= ce * Dy(Hx): y slabs.
        {
            let prof = &cp.prof_e[1];
            let ez = &mut self.state.e[2];
            Self::corr_y(
                d,
                &mut cp.psi_ez_y,
                prof,
                |i, j, k| hx[(k * sy + j) * sx + i] - hx[(k * sy + j - 1) * sx + i],
                |i, j, k, v| {
                    let idx = (k * sy + j) * sx + i;
                    ez[idx] -= ce_z[idx] * v;
                },
                (1, d.nx, 1, d.ny, 0, d.nz),
            );
        }
        // Ex -= ce * Dz(Hy): z slabs.
        {
            let prof = &cp.prof_e[2];
            let ex = &mut self.state.e[0];
            Self::corr_z(
                d,
                &mut cp.psi_ex_z,
                prof,
                |i, j, k| hy[(k * sy + j) * sx + i] - hy[((k - 1) * sy + j) * sx + i],
                |i, j, k, v| {
                    let idx = (k * sy + j) * sx + i;
                    ex[idx] -= ce_x[idx] * v;
                },
                (0, d.nx, 1, d.ny, 1, d.nz),
            );
        }
        // Ey += ce * Dz(Hx): z slabs.
        {
            let prof = &cp.prof_e[2];
            let ey = &mut self.state.e[1];
            Self::corr_z(
                d,
                &mut cp.psi_ey_z,
                prof,
                |i, j, k| hx[(k * sy + j) * sx + i] - hx[((k - 1) * sy + j) * sx + i],
                |i, j, k, v| {
                    let idx = (k * sy + j) * sx + i;
                    ey[idx] += ce_y[idx] * v;
                },
                (1, d.nx, 0, d.ny, 1, d.nz),
            );
        }
    }

    /// Correction sweep for a derivative along x: updates psi in the two x
    /// slabs and applies `(1/kappa - 1) D + psi` through `apply`.
    #[allow(clippy::too_many_arguments)]
    fn corr_x(
        d: GridDims,
        psi: &mut PsiPair,
        prof: &cpml::AxisProfile,
        deriv: impl Fn(usize, usize, usize) -> f32,
        mut apply: impl FnMut(usize, usize, usize, f32),
        bounds: (usize, usize, usize, usize, usize, usize),
    ) {
        let (i_lo, i_hi, j_lo, j_hi, k_lo, k_hi) = bounds;
        let w = psi.width;
        for k in k_lo..k_hi {
            for j in j_lo..j_hi {
                // Low slab.
                for i in i_lo..w.min(i_hi) {
                    let dv = deriv(i, j, k);
                    let slot = (k * d.sy() + j) * w + i;
                    let p = prof.b[i] * psi.lo[slot] + prof.c[i] * dv;
                    psi.lo[slot] = p;
                    apply(i, j, k, prof.kappa_corr[i] * dv + p);
                }
                // High slab.
                for i in psi.hi_start.max(i_lo)..i_hi {
                    let dv = deriv(i, j, k);
                    let slot = (k * d.sy() + j) * w + (i - psi.hi_start);
                    let p = prof.b[i] * psi.hi[slot] + prof.c[i] * dv;
                    psi.hi[slot] = p;
                    apply(i, j, k, prof.kappa_corr[i] * dv + p);
                }
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn corr_y(
        d: GridDims,
        psi: &mut PsiPair,
        prof: &cpml::AxisProfile,
        deriv: impl Fn(usize, usize, usize) -> f32,
        mut apply: impl FnMut(usize, usize, usize, f32),
        bounds: (usize, usize, usize, usize, usize, usize),
    ) {
        let (i_lo, i_hi, j_lo, j_hi, k_lo, k_hi) = bounds;
        let w = psi.width;
        for k in k_lo..k_hi {
            for j in j_lo..w.min(j_hi) {
                for i in i_lo..i_hi {
                    let dv = deriv(i, j, k);
                    let slot = (k * w + j) * d.sx() + i;
                    let p = prof.b[j] * psi.lo[slot] + prof.c[j] * dv;
                    psi.lo[slot] = p;
                    apply(i, j, k, prof.kappa_corr[j] * dv + p);
                }
            }
            for j in psi.hi_start.max(j_lo)..j_hi {
                for i in i_lo..i_hi {
                    let dv = deriv(i, j, k);
                    let slot = (k * w + (j - psi.hi_start)) * d.sx() + i;
                    let p = prof.b[j] * psi.hi[slot] + prof.c[j] * dv;
                    psi.hi[slot] = p;
                    apply(i, j, k, prof.kappa_corr[j] * dv + p);
                }
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn corr_z(
        d: GridDims,
        psi: &mut PsiPair,
        prof: &cpml::AxisProfile,
        deriv: impl Fn(usize, usize, usize) -> f32,
        mut apply: impl FnMut(usize, usize, usize, f32),
        bounds: (usize, usize, usize, usize, usize, usize),
    ) {
        let (i_lo, i_hi, j_lo, j_hi, k_lo, k_hi) = bounds;
        let w = psi.width;
        for k in k_lo..w.min(k_hi) {
            for j in j_lo..j_hi {
                for i in i_lo..i_hi {
                    let dv = deriv(i, j, k);
                    let slot = (k * d.sy() + j) * d.sx() + i;
                    let p = prof.b[k] * psi.lo[slot] + prof.c[k] * dv;
                    psi.lo[slot] = p;
                    apply(i, j, k, prof.kappa_corr[k] * dv + p);
                }
            }
        }
        for k in psi.hi_start.max(k_lo)..k_hi {
            for j in j_lo..j_hi {
                for i in i_lo..i_hi {
                    let dv = deriv(i, j, k);
                    let slot = ((k - psi.hi_start) * d.sy() + j) * d.sx() + i;
                    let p = prof.b[k] * psi.hi[slot] + prof.c[k] * dv;
                    psi.hi[slot] = p;
                    apply(i, j, k, prof.kappa_corr[k] * dv + p);
                }
            }
        }
    }

    /// Soft-source injection: E -= ce * J dx at the footprint edges, with
    /// the current density J = I(t) w / dx^2 per edge.
    fn inject_sources(&mut self, t: f64) {
        let dx = self.spec.dims.dx;
        for (src, plan) in &self.dipoles {
            let current = src.current(t);
            if current == 0.0 {
                continue;
            }
            let comp = plan.component.index();
            let e = &mut self.state.e[comp];
            let ce = &self.ce[comp];
            // ce carries dt/(eps dx); multiplying by J dx = I w / dx gives
            // the field increment dt J / eps.
            let scale = (current / dx) as f32;
            for &(idx, w) in &plan.entries {
                e[idx] -= ce[idx] * scale * w;
            }
        }
        for sheet in &self.sheets {
            let val = sheet.amplitude * sheet.pulse.value(t);
            if val == 0.0 {
                continue;
            }
            let d = self.spec.dims;
            let (sx, sy) = (d.sx(), d.sy());
            let e = &mut self.state.e[0];
            let ce = &self.ce[0];
            let scale = (val / dx) as f32;
            let base = sheet.k_plane * sx * sy;
            for j in 0..sy {
                for i in 0..d.nx {
                    let idx = base + j * sx + i;
                    e[idx] -= ce[idx] * scale;
                }
            }
        }
    }

    /// Scan for non-finite values (subsampled; the monitors' powers catch
    /// global blowups between scans).
    fn fields_finite(&self) -> bool {
        for comp in self.state.e.iter().chain(self.state.h.iter()) {
            if comp.iter().step_by(97).any(|v| !v.is_finite()) {
                return false;
            }
        }
        true
    }

    /// Drive the simulation per the stop rule, closing monitor windows at
    /// each optical-cycle boundary.
    pub fn run_until(&mut self, stop: StopRule) -> Result<RunOutcome> {
        let spc = self.spec.steps_per_cycle;
        let window_fs = spc as f64 * self.spec.dt;
        let dx = self.spec.dims.dx;
        match stop {
            StopRule::FixedSteps(n) => {
                for _ in 0..n {
                    self.step();
                    if self.state.step_index % spc == 0 {
                        for m in &mut self.monitors {
                            m.finish_window(dx, window_fs);
                        }
                        if !self.fields_finite() {
                            return Err(Error::Divergence {
                                step: self.state.step_index,
                            });
                        }
                    }
                }
                Ok(RunOutcome {
                    converged: true,
                    cycles: self.state.step_index / spc,
                    steps: self.state.step_index,
                })
            }
            StopRule::AutoShutoff {
                ratio,
                max_cycles,
                min_cycles,
            } => {
                let mut cycles = 0;
                while cycles < max_cycles {
                    for _ in 0..spc {
                        self.step();
                    }
                    cycles += 1;
                    for m in &mut self.monitors {
                        m.finish_window(dx, window_fs);
                    }
                    if !self.fields_finite() {
                        return Err(Error::Divergence {
                            step: self.state.step_index,
                        });
                    }
                    if cycles >= min_cycles && self.monitors_steady(ratio) {
                        return Ok(RunOutcome {
                            converged: true,
                            cycles,
                            steps: self.state.step_index,
                        });
                    }
                }
                Ok(RunOutcome {
                    converged: false,
                    cycles,
                    steps: self.state.step_index,
                })
            }
        }
    }

    /// All monitors changed by less than `ratio` over the last 5 cycles.
    fn monitors_steady(&self, ratio: f64) -> bool {
        if self.monitors.is_empty() {
            return true;
        }
        for m in &self.monitors {
            let h = &m.power_history;
            if h.len() < 6 {
                return false;
            }
            let now = h[h.len() - 1];
            let then = h[h.len() - 6];
            let peak = h.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
            let denom = now.abs().max(1e-6 * peak).max(1e-300);
            if ((now - then) / denom).abs() >= ratio {
                return false;
            }
            if !now.is_finite() {
                return false;
            }
        }
        true
    }

    /// Total EM energy in the node box [lo, hi] (midpoint sums; used by the
    /// discrete Poynting-theorem checks).
    pub fn energy_in_box(&self, lo: [usize; 3], hi: [usize; 3]) -> f64 {
        let d = self.spec.dims;
        let dx3 = d.dx * d.dx * d.dx;
        let mut u = 0.0f64;
        for k in lo[2]..hi[2] {
            for j in lo[1]..hi[1] {
                for i in lo[0]..hi[0] {
                    let idx = d.idx(i, j, k);
                    for c in 0..3 {
                        // Recover eps_r per sample from the folded coefficient.
                        let ce = f64::from(self.ce[c][idx]);
                        let eps_r = self.spec.dt / (EPS0 * ce * d.dx);
                        let ev = f64::from(self.state.e[c][idx]);
                        u += 0.5 * EPS0 * eps_r * ev * ev * dx3;
                        let hv = f64::from(self.state.h[c][idx]);
                        u += 0.5 * MU0 * hv * hv * dx3;
                    }
                }
            }
        }
        u
    }

    /// Raw field sample (component, node index).
    pub fn e_at(&self, comp: Axis, i: usize, j: usize, k: usize) -> f64 {
        f64::from(self.state.e[comp.index()][self.spec.dims.idx(i, j, k)])
    }
}
