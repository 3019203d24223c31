//! One-dimensional reduction of the solver (Ex, Hy on a z line) sharing the
//! CPML coefficient machinery, used to qualify the discretization: the
//! numerical phase velocity against the closed-form dispersion relation and
//! the boundary reflection of a normally incident pulse.
//!
//! A transversely uniform field in the 3D engine obeys exactly these
//! update equations (all transverse derivatives vanish), so the 1D results
//! characterize the 3D stencil and PML profile directly; the full-grid PML
//! wiring is covered separately by the 3D echo and dipole-power tests.

use crate::consts::{C0, EPS0, MU0};
use crate::source::GaussianDerivPulse;
use std::f64::consts::PI;

use super::cpml::PmlParams;

struct Line {
    ex: Vec<f64>,
    hy: Vec<f64>,
    // CPML memory and per-node coefficients (integer nodes for the E-side
    // derivative, half nodes for the H side).
    psi_e: Vec<f64>,
    psi_h: Vec<f64>,
    kc_e: Vec<f64>,
    b_e: Vec<f64>,
    c_e: Vec<f64>,
    kc_h: Vec<f64>,
    b_h: Vec<f64>,
    c_h: Vec<f64>,
    dz: f64,
    dt: f64,
}

impl Line {
    fn new(n: usize, dz: f64, dt: f64, pml: Option<&PmlParams>) -> Self {
        let mut line = Line {
            ex: vec![0.0; n + 1],
            hy: vec![0.0; n + 1],
            psi_e: vec![0.0; n + 1],
            psi_h: vec![0.0; n + 1],
            kc_e: vec![0.0; n + 1],
            b_e: vec![0.0; n + 1],
            c_e: vec![0.0; n + 1],
            kc_h: vec![0.0; n + 1],
            b_h: vec![0.0; n + 1],
            c_h: vec![0.0; n + 1],
            dz,
            dt,
        };
        if let Some(p) = pml {
            let npml = p.cells as f64;
            let sigma_max = p.sigma_scale * (p.order + 1.0) * C0 / dz;
            let alpha_max = p.alpha_scale * C0 / dz;
            let mut fill = |x: f64, kc: &mut f64, b: &mut f64, c: &mut f64| {
                let depth = (npml - x).max(x - (n as f64 - npml));
                if depth <= 0.0 {
                    return;
                }
                let rho = (depth / npml).min(1.0);
                let sigma = sigma_max * rho.powf(p.order);
                let kappa = 1.0 + (p.kappa_max - 1.0) * rho.powf(p.order);
                let alpha = alpha_max * (1.0 - rho);
                *b = (-(sigma / kappa + alpha) * dt).exp();
                let denom = sigma * kappa + alpha * kappa * kappa;
                *c = if denom > 0.0 {
                    sigma * (*b - 1.0) / denom
                } else {
                    0.0
                };
                *kc = 1.0 / kappa - 1.0;
            };
            for i in 0..=n {
                let (mut kc, mut b, mut c) = (0.0, 0.0, 0.0);
                fill(i as f64, &mut kc, &mut b, &mut c);
                line.kc_e[i] = kc;
                line.b_e[i] = b;
                line.c_e[i] = c;
                let (mut kc, mut b, mut c) = (0.0, 0.0, 0.0);
                fill(i as f64 + 0.5, &mut kc, &mut b, &mut c);
                line.kc_h[i] = kc;
                line.b_h[i] = b;
                line.c_h[i] = c;
            }
        }
        line
    }

    fn step(&mut self, j_source: impl Fn(&mut Self)) {
        // Exactly the 3D update with all transverse derivatives zero:
        // Hy -= ch (Ex[k+1]-Ex[k]); Ex -= ce (Hy[k]-Hy[k-1]).
        let n = self.ex.len() - 1;
        let ch = self.dt / (MU0 * self.dz);
        for k in 0..n {
            let d = self.ex[k + 1] - self.ex[k];
            let mut corr = 0.0;
            if self.b_h[k] != 0.0 {
                self.psi_h[k] = self.b_h[k] * self.psi_h[k] + self.c_h[k] * d;
                corr = self.kc_h[k] * d + self.psi_h[k];
            }
            self.hy[k] -= ch * (d + corr);
        }
        let ce = self.dt / (EPS0 * self.dz);
        for k in 1..n {
            let d = self.hy[k] - self.hy[k - 1];
            let mut corr = 0.0;
            if self.b_e[k] != 0.0 {
                self.psi_e[k] = self.b_e[k] * self.psi_e[k] + self.c_e[k] * d;
                corr = self.kc_e[k] * d + self.psi_e[k];
            }
            self.ex[k] -= ce * (d + corr);
        }
        j_source(self);
    }
}

/// dt at or below the Courant bound with an integer number of steps per
/// optical period, so DFT windows cover exact cycles (same policy as the
/// 3D GridSpec).
pub fn snapped_dt(dz: f64, courant: f64, wavelength: f64) -> f64 {
    let dt_max = courant * dz / C0;
    let period = wavelength / C0;
    period / (period / dt_max).ceil()
}

/// DFT phase of a probe signal at `omega` over exactly the trailing
/// `n_last` samples (an integer number of periods by construction).
fn probe_phase(samples: &[(f64, f64)], omega: f64, n_last: usize) -> f64 {
    let mut acc = num_complex::Complex64::ZERO;
    for &(t, v) in &samples[samples.len() - n_last..] {
        acc += num_complex::Complex64::from_polar(v, omega * t);
    }
    acc.arg()
}

/// Numerical phase velocity (um/fs) of a CW wave on the 1D lattice, from
/// the steady-state phase difference between two probes.
pub fn measure_phase_velocity(dz: f64, courant: f64, wavelength: f64) -> f64 {
    let dt = snapped_dt(dz, courant, wavelength);
    let omega = 2.0 * PI * C0 / wavelength;
    // Source mid-line, probes placed so that no end reflection can reach
    // them within the run (the line has PEC ends and no PML here).
    let n = 2200usize;
    let src = 1100usize;
    let p1 = 1500usize;
    let p2 = 1510usize;

    let mut line = Line::new(n, dz, dt, None);
    let period = wavelength / C0;
    let total_t = 40.0 * period;
    let steps = (total_t / dt).ceil() as usize;
    let mut s1 = Vec::with_capacity(steps);
    let mut s2 = Vec::with_capacity(steps);
    let ramp = 10.0 * period;
    for step in 0..steps {
        let t_half = (step as f64 + 0.5) * dt;
        line.step(|l| {
            let env = if t_half < ramp {
                0.5 * (1.0 - (PI * t_half / ramp).cos())
            } else {
                1.0
            };
            let j = env * (omega * t_half).sin();
            let ce = l.dt / (EPS0 * l.dz);
            l.ex[src] -= ce * j / l.dz;
        });
        let t_e = (step as f64 + 1.0) * dt;
        s1.push((t_e, line.ex[p1]));
        s2.push((t_e, line.ex[p2]));
    }
    let window = 5 * (period / dt).round() as usize;
    let ph1 = probe_phase(&s1, omega, window);
    let ph2 = probe_phase(&s2, omega, window);
    // With the exp(+i omega t) DFT (field = Re(F exp(-i omega t))) the
    // phasor of a +z wave goes like exp(+i k z): phase grows with z. The
    // probes are close enough that the difference is unambiguous mod 2 pi.
    let mut dphi = ph2 - ph1;
    while dphi <= 0.0 {
        dphi += 2.0 * PI;
    }
    while dphi > 2.0 * PI {
        dphi -= 2.0 * PI;
    }
    let k_num = dphi / ((p2 - p1) as f64 * dz);
    omega / k_num
}

/// Closed-form 1D FDTD dispersion: the exact numerical wavenumber for a
/// given omega, dz, dt.
pub fn dispersion_wavenumber(omega: f64, dz: f64, dt: f64) -> f64 {
    let arg = dz / (C0 * dt) * (0.5 * omega * dt).sin();
    2.0 / dz * arg.asin()
}

/// Peak reflected / peak incident amplitude for a pulse normally incident
/// on the CPML, measured at a probe between source and boundary.
pub fn measure_pml_reflection(dz: f64, courant: f64, wavelength: f64, pml: &PmlParams) -> f64 {
    let dt = courant * dz / C0;
    let n = 700usize;
    let src = 180usize;
    let probe = 430usize;
    let mut line = Line::new(n, dz, dt, Some(pml));
    let pulse = GaussianDerivPulse {
        center_frequency: C0 / wavelength,
        delay_taus: 6.0,
    };

    // Time for the pulse to pass the probe, with tail margin.
    let t_pass = ((probe - src) as f64 * dz) / C0 + 14.0 * pulse.tau();
    // Listen long enough for the boundary echo (round trip probe->PML->probe)
    // from both ends.
    let t_total = t_pass + 2.2 * ((n - probe) as f64 * dz) / C0 + 2.2 * (probe as f64 * dz) / C0;
    let steps = (t_total / dt).ceil() as usize;
    let mut incident: f64 = 0.0;
    let mut reflected: f64 = 0.0;
    for step in 0..steps {
        let t_half = (step as f64 + 0.5) * dt;
        line.step(|l| {
            let j = pulse.value(t_half);
            let ce = l.dt / (EPS0 * l.dz);
            l.ex[src] -= ce * j / l.dz;
        });
        let t = (step as f64 + 1.0) * dt;
        let v = line.ex[probe].abs();
        if t <= t_pass {
            incident = incident.max(v);
        } else {
            reflected = reflected.max(v);
        }
    }
    reflected / incident
}

#[cfg(test)]
mod tests {
    use super::*;

    const LAMBDA: f64 = 0.62;

    #[test]
    fn phase_velocity_matches_the_dispersion_relation() {
        for (dz, courant) in [(LAMBDA / 25.0, 0.99), (LAMBDA / 15.0, 0.7)] {
            let dt = snapped_dt(dz, courant, LAMBDA);
            let omega = 2.0 * PI * C0 / LAMBDA;
            let v_measured = measure_phase_velocity(dz, courant, LAMBDA);
            let v_exact = omega / dispersion_wavenumber(omega, dz, dt);
            let err = ((v_measured - v_exact) / v_exact).abs();
            assert!(
                err < 1e-3,
                "dz={dz}: measured {v_measured}, dispersion {v_exact}, err {err:e}"
            );
            // Sanity: subluminal and within a percent of c at these
            // resolutions.
            assert!(v_exact < C0 && v_exact > 0.98 * C0);
        }
    }

    #[test]
    fn magic_time_step_is_dispersion_free() {
        // courant = 1 in 1D propagates exactly at c.
        let dz = LAMBDA / 20.0;
        let dt = dz / C0;
        let omega = 2.0 * PI * C0 / LAMBDA;
        let k = dispersion_wavenumber(omega, dz, dt);
        assert!(((omega / k) - C0).abs() / C0 < 1e-12);
    }

    #[test]
    fn default_pml_reflects_below_minus_40_db() {
        let r = measure_pml_reflection(LAMBDA / 25.0, 0.99, LAMBDA, &PmlParams::default());
        assert!(r < 1e-2, "reflection {r:e} (-{:.1} dB)", -20.0 * r.log10());
    }

    #[test]
    fn thinner_weaker_pml_reflects_more() {
        let weak = PmlParams {
            cells: 4,
            sigma_scale: 0.2,
            ..PmlParams::default()
        };
        let r_weak = measure_pml_reflection(LAMBDA / 25.0, 0.99, LAMBDA, &weak);
        let r_default =
            measure_pml_reflection(LAMBDA / 25.0, 0.99, LAMBDA, &PmlParams::default());
        assert!(r_weak > 3.0 * r_default, "weak {r_weak:e} vs {r_default:e}");
    }
}
