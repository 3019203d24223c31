//! Running-DFT field monitors: per-step phasor accumulation at the source
//! frequency on axis-aligned planes and closed boxes, with per-cycle
//! windowing for steady-state detection and time-averaged Poynting flux.
//!
//! Convention: accumulating `f(t) exp(+i omega t) dt` over exactly one
//! optical period and normalizing by 2/T recovers the complex amplitude F
//! with `f(t) = Re(F exp(-i omega t))` - the same convention the analytic
//! mode fields use, so monitor phasors feed the overlap integrals directly.
//! E samples sit at full steps, H samples at half steps; H is averaged onto
//! the monitor plane from its two adjacent half-planes.

use crate::grid::{Axis, GridDims};
use num_complex::Complex64;

/// One monitored face: an axis-normal rectangle of Yee tangential samples.
#[derive(Debug, Clone)]
pub struct Face {
    pub normal: Axis,
    /// Node-plane index along the normal (must be interior: 1..n-1).
    pub plane: usize,
    /// +1 if outward flux is along +normal.
    pub sign: f64,
    /// Inclusive node bounds on the two transverse axes, cyclic order
    /// (normal, t1, t2): x -> (y, z), y -> (z, x), z -> (x, y).
    pub t1_lo: usize,
    pub t1_hi: usize,
    pub t2_lo: usize,
    pub t2_hi: usize,
    // Pair A: E_t1 at (t1 + 1/2, t2) colocated with the normal-averaged H_t2.
    acc_e1: Vec<Complex64>,
    acc_h2: Vec<Complex64>,
    // Pair B: E_t2 at (t1, t2 + 1/2) colocated with H_t1.
    acc_e2: Vec<Complex64>,
    acc_h1: Vec<Complex64>,
    // Last completed window, normalized to field amplitudes.
    win_e1: Vec<Complex64>,
    win_h2: Vec<Complex64>,
    win_e2: Vec<Complex64>,
    win_h1: Vec<Complex64>,
}

impl Face {
    fn new(normal: Axis, plane: usize, sign: f64, t1: (usize, usize), t2: (usize, usize)) -> Self {
        let (t1_lo, t1_hi) = t1;
        let (t2_lo, t2_hi) = t2;
        let na = (t1_hi - t1_lo) * (t2_hi - t2_lo + 1);
        let nb = (t1_hi - t1_lo + 1) * (t2_hi - t2_lo);
        Face {
            normal,
            plane,
            sign,
            t1_lo,
            t1_hi,
            t2_lo,
            t2_hi,
            acc_e1: vec![Complex64::ZERO; na],
            acc_h2: vec![Complex64::ZERO; na],
            acc_e2: vec![Complex64::ZERO; nb],
            acc_h1: vec![Complex64::ZERO; nb],
            win_e1: Vec::new(),
            win_h2: Vec::new(),
            win_e2: Vec::new(),
            win_h1: Vec::new(),
        }
    }

    /// (component index of E_t1, E_t2) in cyclic order for this normal.
    fn tangential_components(&self) -> (usize, usize) {
        match self.normal {
            Axis::X => (1, 2), // Ey, Ez
            Axis::Y => (2, 0), // Ez, Ex
            Axis::Z => (0, 1), // Ex, Ey
        }
    }

    fn accumulate(
        &mut self,
        dims: &GridDims,
        e: &[Vec<f32>; 3],
        h: &[Vec<f32>; 3],
        phase_e: Complex64,
        phase_h: Complex64,
    ) {
        let (c1, c2) = self.tangential_components();
        let p = self.plane;
        let w1a = self.t1_hi - self.t1_lo;
        let w1b = w1a + 1;
        match self.normal {
            Axis::Z => {
                // Pair A: Ex (i+1/2, j) with Hy averaged from k-1, k.
                let (ex, ey) = (&e[c1], &e[c2]);
                let hy = &h[1];
                let mut slot = 0;
                for j in self.t2_lo..=self.t2_hi {
                    for i in self.t1_lo..self.t1_hi {
                        let fe = f64::from(ex[dims.idx(i, j, p)]);
                        let fh = 0.5
                            * (f64::from(hy[dims.idx(i, j, p - 1)])
                                + f64::from(hy[dims.idx(i, j, p)]));
                        self.acc_e1[slot] += phase_e * fe;
                        self.acc_h2[slot] += phase_h * fh;
                        slot += 1;
                    }
                }
                // Pair B: Ey (i, j+1/2) with Hx averaged from k-1, k.
                let hx = &h[0];
                let mut slot = 0;
                for j in self.t2_lo..self.t2_hi {
                    for i in self.t1_lo..=self.t1_hi {
                        let fe = f64::from(ey[dims.idx(i, j, p)]);
                        let fh = 0.5
                            * (f64::from(hx[dims.idx(i, j, p - 1)])
                                + f64::from(hx[dims.idx(i, j, p)]));
                        self.acc_e2[slot] += phase_e * fe;
                        self.acc_h1[slot] += phase_h * fh;
                        slot += 1;
                    }
                }
                debug_assert_eq!(w1b * (self.t2_hi - self.t2_lo), slot);
            }
            Axis::X => {
                // t1 = y, t2 = z. Pair A: Ey (j+1/2, k) with Hz avg over i.
                let (eyc, ezc) = (&e[c1], &e[c2]);
                let hz = &h[2];
                let mut slot = 0;
                for k in self.t2_lo..=self.t2_hi {
                    for j in self.t1_lo..self.t1_hi {
                        let fe = f64::from(eyc[dims.idx(p, j, k)]);
                        let fh = 0.5
                            * (f64::from(hz[dims.idx(p - 1, j, k)])
                                + f64::from(hz[dims.idx(p, j, k)]));
                        self.acc_e1[slot] += phase_e * fe;
                        self.acc_h2[slot] += phase_h * fh;
                        slot += 1;
                    }
                }
                // Pair B: Ez (j, k+1/2) with Hy avg over i.
                let hy = &h[1];
                let mut slot = 0;
                for k in self.t2_lo..self.t2_hi {
                    for j in self.t1_lo..=self.t1_hi {
                        let fe = f64::from(ezc[dims.idx(p, j, k)]);
                        let fh = 0.5
                            * (f64::from(hy[dims.idx(p - 1, j, k)])
                                + f64::from(hy[dims.idx(p, j, k)]));
                        self.acc_e2[slot] += phase_e * fe;
                        self.acc_h1[slot] += phase_h * fh;
                        slot += 1;
                    }
                }
            }
            Axis::Y => {
                // t1 = z, t2 = x. Pair A: Ez (k+1/2, i) with Hx avg over j.
                let (ezc, exc) = (&e[c1], &e[c2]);
                let hx = &h[0];
                let mut slot = 0;
                for i in self.t2_lo..=self.t2_hi {
                    for k in self.t1_lo..self.t1_hi {
                        let fe = f64::from(ezc[dims.idx(i, p, k)]);
                        let fh = 0.5
                            * (f64::from(hx[dims.idx(i, p - 1, k)])
                                + f64::from(hx[dims.idx(i, p, k)]));
                        self.acc_e1[slot] += phase_e * fe;
                        self.acc_h2[slot] += phase_h * fh;
                        slot += 1;
                    }
                }
                // Pair B: Ex (k, i+1/2) with Hz avg over j.
                let hz = &h[2];
                let mut slot = 0;
                for i in self.t2_lo..self.t2_hi {
                    for k in self.t1_lo..=self.t1_hi {
                        let fe = f64::from(exc[dims.idx(i, p, k)]);
                        let fh = 0.5
                            * (f64::from(hz[dims.idx(i, p - 1, k)])
                                + f64::from(hz[dims.idx(i, p, k)]));
                        self.acc_e2[slot] += phase_e * fe;
                        self.acc_h1[slot] += phase_h * fh;
                        slot += 1;
                    }
                }
            }
        }
    }

    /// Normalize the window accumulators into amplitude snapshots and reset.
    fn finish_window(&mut self, norm: f64) {
        let scale = Complex64::new(norm, 0.0);
        self.win_e1 = self.acc_e1.iter().map(|v| v * scale).collect();
        self.win_h2 = self.acc_h2.iter().map(|v| v * scale).collect();
        self.win_e2 = self.acc_e2.iter().map(|v| v * scale).collect();
        self.win_h1 = self.acc_h1.iter().map(|v| v * scale).collect();
        self.acc_e1.fill(Complex64::ZERO);
        self.acc_h2.fill(Complex64::ZERO);
        self.acc_e2.fill(Complex64::ZERO);
        self.acc_h1.fill(Complex64::ZERO);
    }

    /// Time-averaged signed flux through this face from the last window.
    fn power(&self, dx: f64) -> f64 {
        let mut s = 0.0;
        for (e1, h2) in self.win_e1.iter().zip(&self.win_h2) {
            s += (e1 * h2.conj()).re;
        }
        for (e2, h1) in self.win_e2.iter().zip(&self.win_h1) {
            s -= (e2 * h1.conj()).re;
        }
        0.5 * s * dx * dx * self.sign
    }
}

/// Exported phasor grids of a z-normal plane for mode decomposition. Each
/// tangential pair lives on its own sublattice with its own origin.
#[derive(Debug, Clone)]
pub struct PlanePhasors {
    pub dx: f64,
    pub z_um: f64,
    /// Ex/Hy grid: origin of sample (0,0), dims (n_x, n_y), x fastest.
    pub a_origin: [f64; 2],
    pub a_dims: [usize; 2],
    pub ex: Vec<Complex64>,
    pub hy: Vec<Complex64>,
    /// Ey/Hx grid.
    pub b_origin: [f64; 2],
    pub b_dims: [usize; 2],
    pub ey: Vec<Complex64>,
    pub hx: Vec<Complex64>,
}

/// A running-DFT monitor: one plane or the six faces of a closed box.
#[derive(Debug, Clone)]
pub struct DftMonitor {
    pub name: String,
    pub faces: Vec<Face>,
    pub omega: f64,
    windows_done: u64,
    /// Signed power per completed window (cycle).
    pub power_history: Vec<f64>,
}

impl DftMonitor {
    /// Single plane normal to `normal` at interior node index `plane`;
    /// outward = `sign` along +normal; transverse node bounds inclusive.
    pub fn plane(
        name: impl Into<String>,
        normal: Axis,
        plane: usize,
        sign: f64,
        t1: (usize, usize),
        t2: (usize, usize),
        omega: f64,
    ) -> Self {
        DftMonitor {
            name: name.into(),
            faces: vec![Face::new(normal, plane, sign, t1, t2)],
            omega,
            windows_done: 0,
            power_history: Vec::new(),
        }
    }

    /// Closed box with outward-oriented faces; bounds are inclusive node
    /// indices per axis.
    pub fn closed_box(name: impl Into<String>, lo: [usize; 3], hi: [usize; 3], omega: f64) -> Self {
        let faces = vec![
            Face::new(Axis::X, lo[0], -1.0, (lo[1], hi[1]), (lo[2], hi[2])),
            Face::new(Axis::X, hi[0], 1.0, (lo[1], hi[1]), (lo[2], hi[2])),
            Face::new(Axis::Y, lo[1], -1.0, (lo[2], hi[2]), (lo[0], hi[0])),
            Face::new(Axis::Y, hi[1], 1.0, (lo[2], hi[2]), (lo[0], hi[0])),
            Face::new(Axis::Z, lo[2], -1.0, (lo[0], hi[0]), (lo[1], hi[1])),
            Face::new(Axis::Z, hi[2], 1.0, (lo[0], hi[0]), (lo[1], hi[1])),
        ];
        DftMonitor {
            name: name.into(),
            faces,
            omega,
            windows_done: 0,
            power_history: Vec::new(),
        }
    }

    /// Accumulate one step: E sampled at `t_e`, H at `t_h` (fs).
    pub fn accumulate(
        &mut self,
        dims: &GridDims,
        e: &[Vec<f32>; 3],
        h: &[Vec<f32>; 3],
        t_e: f64,
        t_h: f64,
        dt: f64,
    ) {
        let phase_e = Complex64::from_polar(dt, self.omega * t_e);
        let phase_h = Complex64::from_polar(dt, self.omega * t_h);
        for face in &mut self.faces {
            face.accumulate(dims, e, h, phase_e, phase_h);
        }
    }

    /// Close the current window of length `window_fs`, record its power.
    pub fn finish_window(&mut self, dx: f64, window_fs: f64) {
        let norm = 2.0 / window_fs;
        for face in &mut self.faces {
            face.finish_window(norm);
        }
        self.windows_done += 1;
        self.power_history.push(self.power_now(dx));
    }

    fn power_now(&self, dx: f64) -> f64 {
        self.faces.iter().map(|f| f.power(dx)).sum()
    }

    /// Signed time-averaged power from the last completed window.
    pub fn power(&self) -> Option<f64> {
        self.power_history.last().copied()
    }

    /// Per-face signed powers (outward) from the last window.
    pub fn face_powers(&self, dx: f64) -> Vec<f64> {
        self.faces.iter().map(|f| f.power(dx)).collect()
    }

    /// Export single-plane z-normal phasors for overlap integrals.
    pub fn plane_phasors(&self, dims: &GridDims) -> Option<PlanePhasors> {
        if self.faces.len() != 1 || self.faces[0].normal != Axis::Z {
            return None;
        }
        let f = &self.faces[0];
        if f.win_e1.is_empty() {
            return None;
        }
        let dx = dims.dx;
        let z = dims.z0 + f.plane as f64 * dx;
        Some(PlanePhasors {
            dx,
            z_um: z,
            a_origin: [
                dims.x0 + (f.t1_lo as f64 + 0.5) * dx,
                dims.y0 + f.t2_lo as f64 * dx,
            ],
            a_dims: [f.t1_hi - f.t1_lo, f.t2_hi - f.t2_lo + 1],
            ex: f.win_e1.clone(),
            hy: f.win_h2.clone(),
            b_origin: [
                dims.x0 + f.t1_lo as f64 * dx,
                dims.y0 + (f.t2_lo as f64 + 0.5) * dx,
            ],
            b_dims: [f.t1_hi - f.t1_lo + 1, f.t2_hi - f.t2_lo],
            ey: f.win_e2.clone(),
            hx: f.win_h1.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consts::{C0, ETA0};
    use std::f64::consts::PI;

    const LAMBDA: f64 = 0.62;

    fn dims() -> GridDims {
        // dx = lambda/40 for sub-percent staggering corrections.
        GridDims::centered([0.62, 0.62, 0.62], LAMBDA / 40.0)
    }

    /// Fill E/H arrays with a +z travelling plane wave (Ex, Hy) sampled on
    /// their own staggered lattices at the given times.
    fn plane_wave(
        dims: &GridDims,
        e0: f64,
        t_e: f64,
        t_h: f64,
    ) -> ([Vec<f32>; 3], [Vec<f32>; 3]) {
        let mut e = [
            vec![0.0f32; dims.len()],
            vec![0.0f32; dims.len()],
            vec![0.0f32; dims.len()],
        ];
        let mut h = e.clone();
        let k = 2.0 * PI / LAMBDA;
        let omega = k * C0;
        for kz in 0..dims.sz() {
            for j in 0..dims.sy() {
                for i in 0..dims.sx() {
                    let idx = dims.idx(i, j, kz);
                    let z_e = dims.e_pos(Axis::X, i, j, kz)[2];
                    e[0][idx] = (e0 * (omega * t_e - k * z_e).sin()) as f32;
                    let z_h = dims.h_pos(Axis::Y, i, j, kz)[2];
                    h[1][idx] = ((e0 / ETA0) * (omega * t_h - k * z_h).sin()) as f32;
                }
            }
        }
        (e, h)
    }

    fn run_cycles(mon: &mut DftMonitor, dims: &GridDims, e0: f64, cycles: usize) {
        let period = LAMBDA / C0;
        let steps = 64usize;
        let dt = period / steps as f64;
        for c in 0..cycles {
            for s in 0..steps {
                let n = (c * steps + s) as f64;
                let t_e = (n + 1.0) * dt;
                let t_h = (n + 0.5) * dt;
                let (e, h) = plane_wave(dims, e0, t_e, t_h);
                mon.accumulate(dims, &e, &h, t_e, t_h, dt);
            }
            mon.finish_window(dims.dx, period);
        }
    }

    #[test]
    fn recovers_sinusoid_amplitude_over_integer_periods() {
        let d = dims();
        let omega = 2.0 * PI * C0 / LAMBDA;
        let mut mon = DftMonitor::plane("m", Axis::Z, d.nz / 2, 1.0, (10, 30), (10, 30), omega);
        run_cycles(&mut mon, &d, 1.0, 1);
        let ph = mon.plane_phasors(&d).unwrap();
        // Every Ex sample should recover |amplitude| = 1 within 1e-3.
        for v in &ph.ex {
            assert!((v.norm() - 1.0).abs() < 1e-3, "|Ex| = {}", v.norm());
        }
    }

    #[test]
    fn zero_fields_give_zero_phasors_and_power() {
        let d = dims();
        let omega = 2.0 * PI * C0 / LAMBDA;
        let mut mon = DftMonitor::plane("m", Axis::Z, d.nz / 2, 1.0, (10, 30), (10, 30), omega);
        let e = [
            vec![0.0f32; d.len()],
            vec![0.0f32; d.len()],
            vec![0.0f32; d.len()],
        ];
        let h = e.clone();
        let dt = 0.05;
        for n in 0..40 {
            mon.accumulate(&d, &e, &h, n as f64 * dt, (n as f64 - 0.5) * dt, dt);
        }
        mon.finish_window(d.dx, 40.0 * dt);
        assert_eq!(mon.power(), Some(0.0));
    }

    #[test]
    fn rejects_second_harmonic_over_integer_periods() {
        let d = dims();
        let omega = 2.0 * PI * C0 / LAMBDA;
        let mut mon = DftMonitor::plane("m", Axis::Z, d.nz / 2, 1.0, (10, 30), (10, 30), omega);
        // Feed fields oscillating at 2 omega, accumulate at omega.
        let period = LAMBDA / C0;
        let steps = 64usize;
        let dt = period / steps as f64;
        for s in 0..steps {
            let t_e = (s as f64 + 1.0) * dt;
            let t_h = (s as f64 + 0.5) * dt;
            let (e, h) = plane_wave(&d, 1.0, 2.0 * t_e, 2.0 * t_h);
            mon.accumulate(&d, &e, &h, t_e, t_h, dt);
        }
        mon.finish_window(d.dx, period);
        let ph = mon.plane_phasors(&d).unwrap();
        for v in &ph.ex {
            assert!(v.norm() < 1e-3, "harmonic leakage {}", v.norm());
        }
    }

    #[test]
    fn plane_wave_power_matches_the_intensity_formula() {
        let d = dims();
        let omega = 2.0 * PI * C0 / LAMBDA;
        let (lo, hi) = (8, 32);
        let mut mon = DftMonitor::plane("m", Axis::Z, d.nz / 2, 1.0, (lo, hi), (lo, hi), omega);
        let e0 = 2.5;
        run_cycles(&mut mon, &d, e0, 2);
        let p = mon.power().unwrap();
        // Sample patches tile the Ex sublattice: (hi-lo) x (hi-lo+1) cells
        // plus the staggered Ey grid contributes nothing here.
        let area = ((hi - lo) as f64) * ((hi - lo + 1) as f64) * d.dx * d.dx;
        let p_ref = e0 * e0 * area / (2.0 * ETA0);
        assert!(
            ((p - p_ref) / p_ref).abs() < 0.01,
            "P = {p}, reference {p_ref}"
        );
    }

    #[test]
    fn closed_box_net_flux_vanishes_for_a_passing_wave() {
        let d = dims();
        let omega = 2.0 * PI * C0 / LAMBDA;
        let mut mon = DftMonitor::closed_box("box", [12, 12, 12], [28, 28, 28], omega);
        run_cycles(&mut mon, &d, 1.0, 1);
        let p = mon.power().unwrap();
        // Compare against the one-face throughput scale.
        let through = mon.face_powers(d.dx)[5].abs();
        assert!(through > 0.0);
        assert!(
            p.abs() < 1e-3 * through,
            "net {p} vs through-face {through}"
        );
    }

    #[test]
    fn box_power_is_the_sum_of_face_powers() {
        let d = dims();
        let omega = 2.0 * PI * C0 / LAMBDA;
        let mut mon = DftMonitor::closed_box("box", [12, 12, 12], [28, 28, 28], omega);
        run_cycles(&mut mon, &d, 1.3, 1);
        let total = mon.power().unwrap();
        let sum: f64 = mon.face_powers(d.dx).iter().sum();
        assert_eq!(total, sum);
    }

    #[test]
    fn doubling_field_amplitude_quadruples_power() {
        let d = dims();
        let omega = 2.0 * PI * C0 / LAMBDA;
        let mut m1 = DftMonitor::plane("m", Axis::Z, d.nz / 2, 1.0, (10, 30), (10, 30), omega);
        let mut m2 = m1.clone();
        run_cycles(&mut m1, &d, 1.0, 1);
        run_cycles(&mut m2, &d, 2.0, 1);
        let r = m2.power().unwrap() / m1.power().unwrap();
        assert!((r - 4.0).abs() < 1e-5, "ratio {r}");
    }
}
