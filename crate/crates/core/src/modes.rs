//! Analytic vectorial guided-mode solver for a circular step-index waveguide
//! (core index n1, cladding n2 < n1).
//!
//! Guided modes satisfy n2 < n_eff < n1 with core parameter
//! `u = a*sqrt(k0^2 n1^2 - beta^2)` and cladding parameter
//! `w = a*sqrt(beta^2 - k0^2 n2^2)`, so `u^2 + w^2 = V^2`. With
//! `F = J_nu'(u)/(u J_nu(u))` and `G = K_nu'(w)/(w K_nu(w))` the dispersion
//! relation reads
//!
//! ```text
//! (F + G)(n1^2 F + n2^2 G) = nu^2 n_eff^2 (1/u^2 + 1/w^2)^2
//! ```
//!
//! which factorizes for nu = 0 into the TE and TM equations. Roots are
//! bracketed on a fine grid of the normalized propagation parameter
//! b = (n_eff^2 - n2^2)/(n1^2 - n2^2) (with logarithmic refinement toward
//! both endpoints, where near-cutoff roots accumulate) and polished by
//! bisection on a pole-free rescaling of the characteristic function.

use crate::consts::{C0, EPS0, MU0};
use crate::error::{Error, Result};
use crate::math::bessel::{
    bessel_j_seq, bessel_k_log_deriv_over_x, bessel_k_seq, J0_ZERO_1,
};
use crate::math::quad::integrate_adaptive;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// V below which only the fundamental HE11 pair is guided.
pub const SINGLE_MODE_V: f64 = J0_ZERO_1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModeFamily {
    TE,
    TM,
    HE,
    EH,
}

impl std::fmt::Display for ModeFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ModeFamily::TE => "TE",
            ModeFamily::TM => "TM",
            ModeFamily::HE => "HE",
            ModeFamily::EH => "EH",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeLabel {
    pub family: ModeFamily,
    /// Azimuthal order.
    pub nu: u32,
    /// Radial order (1-based).
    pub m: u32,
    /// 0 or 1 for the two degenerate orientations of nu >= 1 hybrid modes.
    pub polarization: u8,
}

impl std::fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}{}", self.family, self.nu, self.m)?;
        if matches!(self.family, ModeFamily::HE | ModeFamily::EH) {
            write!(f, "{}", if self.polarization == 0 { "a" } else { "b" })?;
        }
        Ok(())
    }
}

/// Waveguide context a mode was solved for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveguideSpec {
    pub radius: f64,
    pub n_core: f64,
    pub n_clad: f64,
    pub wavelength: f64,
}

/// One guided mode with an analytic field evaluator.
#[derive(Debug, Clone)]
pub struct GuidedMode {
    pub label: ModeLabel,
    pub n_eff: f64,
    pub u: f64,
    pub w: f64,
    pub guide: WaveguideSpec,
    /// E_z amplitude in the core (A) and H_z amplitude (B).
    amp_e: f64,
    amp_h: f64,
    /// Continuity factors J_nu(u)/K_nu(w) applied to the cladding fields.
    clad_scale: f64,
    /// Forward axial power carried by the unit-amplitude profile.
    pub normalization_power: f64,
}

/// Normalized frequency V = (2 pi a / lambda) sqrt(n1^2 - n2^2).
pub fn v_number(radius: f64, n_core: f64, n_clad: f64, wavelength: f64) -> Result<f64> {
    if !(n_core > n_clad) {
        return Err(Error::Config(format!(
            "v_number requires n_core > n_clad, got {n_core} <= {n_clad}"
        )));
    }
    if n_clad < 1.0 {
        return Err(Error::Config(format!(
            "cladding index must be >= 1, got {n_clad}"
        )));
    }
    if radius < 0.0 || wavelength <= 0.0 {
        return Err(Error::Config(
            "radius must be >= 0 and wavelength > 0".into(),
        ));
    }
    Ok(2.0 * PI * radius / wavelength * (n_core * n_core - n_clad * n_clad).sqrt())
}

/// Which scalar equation a root scan targets.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Branch {
    Te,
    Tm,
    Hybrid(u32),
}

struct GuideParams {
    v: f64,
    n1: f64,
    n2: f64,
}

impl GuideParams {
    fn split(&self, b: f64) -> (f64, f64, f64) {
        let w = self.v * b.sqrt();
        let u = self.v * (1.0 - b).sqrt();
        let n_eff2 = self.n2 * self.n2 + b * (self.n1 * self.n1 - self.n2 * self.n2);
        (u, w, n_eff2.sqrt())
    }

    /// Pole-free characteristic function; same sign as the raw dispersion
    /// residual (the u^2 J_nu^2 regularizer is squared).
    fn charfn(&self, branch: Branch, b: f64) -> f64 {
        let (u, w, n_eff) = self.split(b);
        match branch {
            Branch::Te | Branch::Tm => {
                let j = bessel_j_seq(1, u);
                let g0 = bessel_k_log_deriv_over_x(0, w);
                // F0 = J0'/(u J0) = -J1/(u J0); regularize by u^2 J0^2.
                let f_reg = -u * j[1] * j[0];
                let g_reg = g0 * u * u * j[0] * j[0];
                match branch {
                    Branch::Te => f_reg + g_reg,
                    _ => self.n1 * self.n1 * f_reg + self.n2 * self.n2 * g_reg,
                }
            }
            Branch::Hybrid(nu) => {
                let nu_us = nu as usize;
                let seq = bessel_j_seq(nu_us + 1, u);
                let j = seq[nu_us];
                let jd = 0.5 * (seq[nu_us - 1] - seq[nu_us + 1]);
                let g = bessel_k_log_deriv_over_x(nu_us, w);
                let p1 = u * jd * j + g * u * u * j * j;
                let p2 = self.n1 * self.n1 * u * jd * j + self.n2 * self.n2 * g * u * u * j * j;
                let inv = 1.0 / (u * u) + 1.0 / (w * w);
                let rhs = (nu as f64 * n_eff * inv).powi(2) * (u * u * j * j).powi(2);
                p1 * p2 - rhs
            }
        }
    }

    /// Distinguish HE from EH at a hybrid root: the dispersion relation is
    /// quadratic in F, and each root satisfies exactly one of the two
    /// solution branches.
    fn is_he(&self, nu: u32, b: f64) -> bool {
        let (u, w, n_eff) = self.split(b);
        let nu_us = nu as usize;
        let seq = bessel_j_seq(nu_us + 1, u);
        let j = seq[nu_us];
        let jd = 0.5 * (seq[nu_us - 1] - seq[nu_us + 1]);
        let f = jd / (u * j);
        let g = bessel_k_log_deriv_over_x(nu_us, w);
        let n1s = self.n1 * self.n1;
        let n2s = self.n2 * self.n2;
        let inv = 1.0 / (u * u) + 1.0 / (w * w);
        let r = (nu as f64 * n_eff * inv).powi(2);
        let disc = ((n1s - n2s) * g).powi(2) + 4.0 * n1s * r;
        let sq = disc.sqrt();
        let f_plus = (-(n1s + n2s) * g + sq) / (2.0 * n1s);
        let f_minus = (-(n1s + n2s) * g - sq) / (2.0 * n1s);
        // In the weak-guidance limit the "-" branch reduces to
        // J_{nu-1}/(u J_nu) = K_{nu-1}/(w K_nu), the LP_{nu-1} relation,
        // i.e. the HE family; the "+" branch gives LP_{nu+1} (EH).
        (f - f_minus).abs() < (f - f_plus).abs()
    }

    /// All roots of one branch, as b values in ascending order.
    fn scan_roots(&self, branch: Branch, grid_points: usize) -> Vec<f64> {
        let mut bs: Vec<f64> = Vec::with_capacity(grid_points + 64);
        // Logarithmic refinement toward b = 0 (near-cutoff roots) and a few
        // guard points near b = 1.
        let first_uniform = 1.0 / (grid_points as f64 + 1.0);
        let mut lb = 1e-13;
        while lb < first_uniform {
            bs.push(lb);
            lb *= 3.0;
        }
        for i in 1..=grid_points {
            bs.push(i as f64 / (grid_points as f64 + 1.0));
        }
        let mut ub = first_uniform;
        while ub > 1e-11 {
            bs.push(1.0 - ub);
            ub *= 0.25;
        }
        bs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        bs.dedup();

        // The TE/TM regularizer u^2 J0^2 has simple zeros at J_0(u) = 0,
        // which flip the sign of the scan function without a dispersion
        // root. Cut the scan at those poles. (The hybrid regularizer is an
        // even power, so no cuts are needed there.)
        let mut pole_bs: Vec<f64> = Vec::new();
        if matches!(branch, Branch::Te | Branch::Tm) {
            for &z in crate::math::bessel::J0_ZEROS.iter() {
                if z < self.v {
                    pole_bs.push(1.0 - (z / self.v).powi(2));
                }
            }
        }

        let mut roots = Vec::new();
        let mut prev_b = bs[0];
        let mut prev_f = self.charfn(branch, prev_b);
        for &b in &bs[1..] {
            let f = self.charfn(branch, b);
            let crosses_pole = pole_bs.iter().any(|&p| prev_b < p && p < b);
            if crosses_pole {
                // Restart the sign tracking on the far side of the pole.
            } else if prev_f == 0.0 {
                roots.push(prev_b);
            } else if prev_f * f < 0.0 {
                roots.push(self.bisect(branch, prev_b, b, prev_f));
            }
            prev_b = b;
            prev_f = f;
        }
        roots
    }

    fn bisect(&self, branch: Branch, mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
        let mut sign_lo = f_lo.signum();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            let f_mid = self.charfn(branch, mid);
            if f_mid == 0.0 {
                return mid;
            }
            if f_mid.signum() == sign_lo {
                lo = mid;
                sign_lo = f_mid.signum();
            } else {
                hi = mid;
            }
            if hi - lo < 1e-16 {
                break;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Density of the bracket scan per azimuthal order.
const SCAN_POINTS: usize = 2000;

/// Solve every guided mode of the step-index guide; modes are sorted by
/// descending effective index and hybrid polarization pairs are both listed.
pub fn solve_modes(
    radius: f64,
    n_core: f64,
    n_clad: f64,
    wavelength: f64,
) -> Result<Vec<GuidedMode>> {
    let v = v_number(radius, n_core, n_clad, wavelength)?;
    if v == 0.0 {
        return Ok(Vec::new());
    }
    let params = GuideParams {
        v,
        n1: n_core,
        n2: n_clad,
    };
    let guide = WaveguideSpec {
        radius,
        n_core,
        n_clad,
        wavelength,
    };

    let mut found: Vec<(ModeFamily, u32, f64)> = Vec::new(); // (family, nu, b)
    for b in params.scan_roots(Branch::Te, SCAN_POINTS) {
        found.push((ModeFamily::TE, 0, b));
    }
    for b in params.scan_roots(Branch::Tm, SCAN_POINTS) {
        found.push((ModeFamily::TM, 0, b));
    }
    let mut empty_streak = 0;
    let mut nu = 1u32;
    while empty_streak < 2 {
        let roots = params.scan_roots(Branch::Hybrid(nu), SCAN_POINTS);
        if roots.is_empty() {
            empty_streak += 1;
        } else {
            empty_streak = 0;
            for b in roots {
                let family = if params.is_he(nu, b) {
                    ModeFamily::HE
                } else {
                    ModeFamily::EH
                };
                found.push((family, nu, b));
            }
        }
        nu += 1;
    }

    // Assign radial orders per (family, nu) in descending n_eff (= descending b).
    let mut modes = Vec::new();
    for family in [ModeFamily::HE, ModeFamily::EH, ModeFamily::TE, ModeFamily::TM] {
        let max_nu = found
            .iter()
            .filter(|(f, _, _)| *f == family)
            .map(|(_, n, _)| *n)
            .max();
        let Some(max_nu) = max_nu else { continue };
        for nu in 0..=max_nu {
            let mut bs: Vec<f64> = found
                .iter()
                .filter(|(f, n, _)| *f == family && *n == nu)
                .map(|(_, _, b)| *b)
                .collect();
            bs.sort_by(|a, b| b.partial_cmp(a).unwrap());
            for (mi, &b) in bs.iter().enumerate() {
                let pols: &[u8] = if nu == 0 { &[0] } else { &[0, 1] };
                for &pol in pols {
                    let label = ModeLabel {
                        family,
                        nu,
                        m: mi as u32 + 1,
                        polarization: pol,
                    };
                    modes.push(build_mode(&params, guide, label, b)?);
                }
            }
        }
    }

    modes.sort_by(|a, b| {
        b.n_eff
            .partial_cmp(&a.n_eff)
            .unwrap()
            .then_with(|| a.label.polarization.cmp(&b.label.polarization))
    });
    Ok(modes)
}

fn build_mode(
    params: &GuideParams,
    guide: WaveguideSpec,
    label: ModeLabel,
    b: f64,
) -> Result<GuidedMode> {
    let (u, w, n_eff) = params.split(b);
    let (amp_e, amp_h) = match label.family {
        ModeFamily::TE => (0.0, 1.0),
        ModeFamily::TM => (1.0, 0.0),
        _ => {
            // From the E_phi continuity condition:
            // beta nu (1/u^2 + 1/w^2) A + omega mu0 (F + G) B = 0.
            let nu = label.nu as usize;
            let k0 = 2.0 * PI / guide.wavelength;
            let beta = k0 * n_eff;
            let omega = k0 * C0;
            let seq = bessel_j_seq(nu + 1, u);
            let f = 0.5 * (seq[nu - 1] - seq[nu + 1]) / (u * seq[nu]);
            let g = bessel_k_log_deriv_over_x(nu, w);
            let inv = 1.0 / (u * u) + 1.0 / (w * w);
            let a_coef = 1.0;
            let b_coef = -beta * label.nu as f64 * inv / (omega * MU0 * (f + g));
            (a_coef, b_coef)
        }
    };

    let jnu_u = bessel_j_seq(label.nu as usize, u)[label.nu as usize];
    let knu_w = bessel_k_seq(label.nu as usize, w)[label.nu as usize];
    let mut mode = GuidedMode {
        label,
        n_eff,
        u,
        w,
        guide,
        amp_e,
        amp_h,
        clad_scale: jnu_u / knu_w,
        normalization_power: 0.0,
    };
    mode.normalization_power = mode.compute_power()?;
    if mode.normalization_power <= 0.0 {
        return Err(Error::Quadrature(format!(
            "non-positive normalization power for {}",
            mode.label
        )));
    }
    Ok(mode)
}

/// Radial profiles at radius r: the transverse parts carry an implicit
/// factor i (fields are i * value * azimuthal factor); ez/hz are real.
#[derive(Debug, Clone, Copy, Default)]
pub struct RadialParts {
    pub er: f64,
    pub ephi: f64,
    pub hr: f64,
    pub hphi: f64,
    pub ez: f64,
    pub hz: f64,
}

impl GuidedMode {
    pub fn beta(&self) -> f64 {
        2.0 * PI / self.guide.wavelength * self.n_eff
    }

    fn omega(&self) -> f64 {
        2.0 * PI / self.guide.wavelength * C0
    }

    /// Evaluate the radial field profiles at radius `r` (um).
    pub fn radial_parts(&self, r: f64) -> RadialParts {
        self.radial_parts_side(r, r < self.guide.radius)
    }

    /// Side-resolved evaluation: at r = a the core and cladding expressions
    /// disagree in E_r and H_r (only tangential components are continuous),
    /// so quadrature over each piece pins the branch explicitly.
    fn radial_parts_side(&self, r: f64, inside: bool) -> RadialParts {
        let a = self.guide.radius;
        let nu = self.label.nu as usize;
        let beta = self.beta();
        let omega = self.omega();
        let om_mu = omega * MU0;
        if inside {
            let n1s = self.guide.n_core * self.guide.n_core;
            let om_eps = omega * EPS0 * n1s;
            let s = self.u * r / a;
            let seq = bessel_j_seq(nu + 1, s);
            let jn = seq[nu];
            let jd = if nu == 0 {
                -seq[1]
            } else {
                0.5 * (seq[nu - 1] - seq[nu + 1])
            };
            // nu J_nu(s)/r stays finite on the axis.
            let jor = if nu == 0 {
                0.0
            } else if r < 1e-12 * a {
                if nu == 1 {
                    0.5 * self.u / a
                } else {
                    0.0
                }
            } else {
                nu as f64 * jn / r
            };
            let pref = a * a / (self.u * self.u);
            let scale_d = self.u / a;
            RadialParts {
                er: pref * (beta * self.amp_e * scale_d * jd + om_mu * self.amp_h * jor),
                ephi: -pref * (beta * self.amp_e * jor + om_mu * self.amp_h * scale_d * jd),
                hr: pref * (beta * self.amp_h * scale_d * jd + om_eps * self.amp_e * jor),
                hphi: pref * (beta * self.amp_h * jor + om_eps * self.amp_e * scale_d * jd),
                ez: self.amp_e * jn,
                hz: self.amp_h * jn,
            }
        } else {
            let n2s = self.guide.n_clad * self.guide.n_clad;
            let om_eps = omega * EPS0 * n2s;
            let s = self.w * r / a;
            let seq = bessel_k_seq(nu + 1, s);
            let kn = seq[nu];
            let kd = if nu == 0 {
                -seq[1]
            } else {
                -0.5 * (seq[nu - 1] + seq[nu + 1])
            };
            let kor = nu as f64 * kn / r;
            let ce = self.amp_e * self.clad_scale;
            let ch = self.amp_h * self.clad_scale;
            let pref = -a * a / (self.w * self.w);
            let scale_d = self.w / a;
            RadialParts {
                er: pref * (beta * ce * scale_d * kd + om_mu * ch * kor),
                ephi: -pref * (beta * ce * kor + om_mu * ch * scale_d * kd),
                hr: pref * (beta * ch * scale_d * kd + om_eps * ce * kor),
                hphi: pref * (beta * ch * kor + om_eps * ce * scale_d * kd),
                ez: ce * kn,
                hz: ch * kn,
            }
        }
    }

    /// Azimuthal factors (cosf, sinf) for this polarization at angle phi.
    fn azimuthal(&self, phi: f64) -> (f64, f64) {
        let nu = self.label.nu as f64;
        if self.label.nu == 0 {
            (1.0, 1.0)
        } else if self.label.polarization == 0 {
            ((nu * phi).cos(), (nu * phi).sin())
        } else {
            ((nu * phi).sin(), -(nu * phi).cos())
        }
    }

    /// Full complex E and H (cartesian) at transverse position (x, y).
    pub fn field_at(&self, x: f64, y: f64) -> ([Complex64; 3], [Complex64; 3]) {
        let r = (x * x + y * y).sqrt();
        let phi = y.atan2(x);
        let parts = self.radial_parts(r);
        let (cosf, sinf) = self.azimuthal(phi);
        let i = Complex64::new(0.0, 1.0);

        let e_r = i * (parts.er * cosf);
        let e_phi = i * (parts.ephi * sinf);
        let h_r = i * (parts.hr * sinf);
        let h_phi = i * (parts.hphi * cosf);
        let (sin_p, cos_p) = phi.sin_cos();

        let e = [
            e_r * cos_p - e_phi * sin_p,
            e_r * sin_p + e_phi * cos_p,
            Complex64::new(parts.ez * cosf, 0.0),
        ];
        let h = [
            h_r * cos_p - h_phi * sin_p,
            h_r * sin_p + h_phi * cos_p,
            Complex64::new(parts.hz * sinf, 0.0),
        ];
        (e, h)
    }

    /// Axial Poynting density (radial part, without the azimuthal integral).
    fn sz_radial(&self, r: f64, inside: bool) -> f64 {
        let p = self.radial_parts_side(r, inside);
        // Re(E_r H_phi^* - E_phi H_r^*) with the transverse i factored out
        // of both: (i a)(i b)^* = a b.
        p.er * p.hphi - p.ephi * p.hr
    }

    fn azimuthal_weight(&self) -> f64 {
        if self.label.nu == 0 {
            2.0 * PI
        } else {
            PI
        }
    }

    fn power_pieces(&self) -> Result<(f64, f64)> {
        let a = self.guide.radius;
        let f_in = |r: f64| self.sz_radial(r, true) * r;
        let f_out = |r: f64| self.sz_radial(r, false) * r;
        let r_out = a * (1.0 + 40.0 / self.w.max(0.05));
        let core = integrate_adaptive(&f_in, 0.0, a, 1e-10, 20_000)?;
        let clad = integrate_adaptive(&f_out, a, r_out, 1e-10, 20_000)?;
        let half_w = 0.5 * self.azimuthal_weight();
        Ok((half_w * core, half_w * clad))
    }

    /// Forward power P = 1/2 Re int (E x H*) . z dA by adaptive radial
    /// quadrature and exact azimuthal integration.
    fn compute_power(&self) -> Result<f64> {
        let (core, clad) = self.power_pieces()?;
        Ok(core + clad)
    }

    /// Fraction of the mode power guided inside the core.
    pub fn core_power_fraction(&self) -> Result<f64> {
        let (core, _) = self.power_pieces()?;
        Ok(core / self.normalization_power)
    }
}

/// Normalized cross (or self) overlap
/// `1/4 int (E_i x H_j* + E_j* x H_i) . z dA / sqrt(P_i P_j)`
/// using the exact azimuthal selection rules and adaptive radial quadrature.
pub fn cross_overlap_normalized(mi: &GuidedMode, mj: &GuidedMode) -> Result<f64> {
    // Orthogonal azimuthal orders or polarizations integrate to zero exactly.
    if mi.label.nu != mj.label.nu || mi.label.polarization != mj.label.polarization {
        return Ok(0.0);
    }
    let weight = mi.azimuthal_weight();
    let a = mi.guide.radius.max(mj.guide.radius);
    let f = |r: f64, inside: bool| {
        let pi = mi.radial_parts_side(r, inside);
        let pj = mj.radial_parts_side(r, inside);
        // (E_i x H_j*)_z + (E_j* x H_i)_z, transverse i factors cancel.
        (pi.er * pj.hphi - pi.ephi * pj.hr + pj.er * pi.hphi - pj.ephi * pi.hr) * r
    };
    let f_in = |r: f64| f(r, true);
    let f_out = |r: f64| f(r, false);
    let w_min = mi.w.min(mj.w).max(0.05);
    let r_out = a * (1.0 + 40.0 / w_min);
    let core = integrate_adaptive(&f_in, 0.0, a, 1e-10, 20_000)?;
    let clad = integrate_adaptive(&f_out, a, r_out, 1e-10, 20_000)?;
    let overlap = 0.25 * weight * (core + clad);
    Ok(overlap / (mi.normalization_power * mj.normalization_power).sqrt())
}

/// Smallest V at which the (family, nu, m) mode is guided; 0 for HE11.
/// Found by bisecting the mode count over V.
pub fn find_cutoff_v(
    family: ModeFamily,
    nu: u32,
    m: u32,
    n_core: f64,
    n_clad: f64,
    v_max: f64,
) -> Result<Option<f64>> {
    if family == ModeFamily::HE && nu == 1 && m == 1 {
        return Ok(Some(0.0));
    }
    let count_at = |v: f64| -> usize {
        let params = GuideParams {
            v,
            n1: n_core,
            n2: n_clad,
        };
        match family {
            ModeFamily::TE => params.scan_roots(Branch::Te, 400).len(),
            ModeFamily::TM => params.scan_roots(Branch::Tm, 400).len(),
            _ => {
                let want_he = family == ModeFamily::HE;
                params
                    .scan_roots(Branch::Hybrid(nu), 400)
                    .iter()
                    .filter(|&&b| params.is_he(nu, b) == want_he)
                    .count()
            }
        }
    };
    if count_at(v_max) < m as usize {
        return Ok(None);
    }
    let (mut lo, mut hi) = (1e-6, v_max);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if count_at(mid) >= m as usize {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::{DIAMOND_INDEX, SILICA_INDEX};

    const LAMBDA: f64 = 0.62;

    fn silica_modes(radius: f64) -> Vec<GuidedMode> {
        solve_modes(radius, SILICA_INDEX, 1.0, LAMBDA).unwrap()
    }

    #[test]
    fn v_number_matches_closed_form_oracle() {
        // Independent evaluation of (2 pi a / lambda) * NA.
        let oracle = |a: f64, n1: f64, n2: f64, l: f64| {
            2.0 * std::f64::consts::PI * a / l * (n1 * n1 - n2 * n2).sqrt()
        };
        let v1 = v_number(0.2, SILICA_INDEX, 1.0, LAMBDA).unwrap();
        assert!((v1 - oracle(0.2, SILICA_INDEX, 1.0, LAMBDA)).abs() < 1e-14);
        assert!((v1 - 2.148).abs() < 2e-3, "V = {v1}");
        assert!(v1 < SINGLE_MODE_V);

        let v2 = v_number(0.43, SILICA_INDEX, 1.0, LAMBDA).unwrap();
        assert!((v2 - 4.617).abs() < 3e-3, "V = {v2}");
        assert!(v2 > SINGLE_MODE_V);
    }

    #[test]
    fn v_number_rejects_non_guiding_contrast() {
        assert!(v_number(0.2, 1.0, 1.0, LAMBDA).is_err());
        assert!(v_number(0.2, 0.9, 0.8, LAMBDA).is_err());
    }

    #[test]
    fn v_number_vanishes_with_radius() {
        let v = v_number(0.0, SILICA_INDEX, 1.0, LAMBDA).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn single_mode_tip_has_exactly_the_he11_pair() {
        let modes = silica_modes(0.2);
        assert_eq!(modes.len(), 2, "{:?}", mode_names(&modes));
        for m in &modes {
            assert_eq!(m.label.family, ModeFamily::HE);
            assert_eq!((m.label.nu, m.label.m), (1, 1));
        }
        assert_eq!(modes[0].label.polarization, 0);
        assert_eq!(modes[1].label.polarization, 1);
        assert!((modes[0].n_eff - modes[1].n_eff).abs() < 1e-12);
    }

    fn mode_names(modes: &[GuidedMode]) -> Vec<String> {
        modes.iter().map(|m| m.label.to_string()).collect()
    }

    #[test]
    fn p2_tip_mode_set_matches_fine_scan_oracle() {
        let modes = silica_modes(0.43);
        // Distinct labels (ignoring polarization).
        let mut labels: Vec<(ModeFamily, u32, u32)> = modes
            .iter()
            .map(|m| (m.label.family, m.label.nu, m.label.m))
            .collect();
        labels.dedup();
        let expected = [
            (ModeFamily::HE, 1, 1),
            (ModeFamily::TE, 0, 1),
            (ModeFamily::HE, 2, 1),
            (ModeFamily::TM, 0, 1),
            (ModeFamily::EH, 1, 1),
            (ModeFamily::HE, 3, 1),
            (ModeFamily::HE, 1, 2),
        ];
        // Membership, not order (ordering checked separately).
        assert_eq!(labels.len(), expected.len(), "{:?}", mode_names(&modes));
        for e in expected {
            assert!(labels.contains(&e), "missing {e:?} in {labels:?}");
        }

        // Oracle: a 10x finer bracket scan finds the same number of roots.
        let v = v_number(0.43, SILICA_INDEX, 1.0, LAMBDA).unwrap();
        let params = GuideParams {
            v,
            n1: SILICA_INDEX,
            n2: 1.0,
        };
        let mut fine_count = params.scan_roots(Branch::Te, 10 * SCAN_POINTS).len()
            + params.scan_roots(Branch::Tm, 10 * SCAN_POINTS).len();
        for nu in 1..=4 {
            fine_count += params
                .scan_roots(Branch::Hybrid(nu), 10 * SCAN_POINTS)
                .len();
        }
        assert_eq!(fine_count, labels.len());
    }

    #[test]
    fn te01_cutoff_sits_at_the_bessel_zero() {
        // Radii bracketing V = 2.405 +/- 0.01.
        let radius_for = |v: f64| v * LAMBDA / (2.0 * std::f64::consts::PI * (SILICA_INDEX * SILICA_INDEX - 1.0).sqrt());
        let below = silica_modes(radius_for(J0_ZERO_1 - 0.01));
        assert!(
            !below.iter().any(|m| m.label.family == ModeFamily::TE),
            "{:?}",
            mode_names(&below)
        );
        let above = silica_modes(radius_for(J0_ZERO_1 + 0.01));
        assert!(
            above.iter().any(|m| m.label.family == ModeFamily::TE),
            "{:?}",
            mode_names(&above)
        );
    }

    #[test]
    fn u_w_satisfy_the_v_identity() {
        for radius in [0.2, 0.43, 0.71] {
            let v = v_number(radius, SILICA_INDEX, 1.0, LAMBDA).unwrap();
            for m in silica_modes(radius) {
                let resid = (m.u * m.u + m.w * m.w - v * v).abs();
                assert!(resid < 1e-8, "{}: u^2+w^2-V^2 = {resid:e}", m.label);
                assert!(m.n_eff > 1.0 && m.n_eff < SILICA_INDEX);
            }
        }
    }

    #[test]
    fn he11_has_the_largest_effective_index() {
        for radius in [0.2, 0.43, 0.71] {
            let modes = silica_modes(radius);
            assert_eq!(modes[0].label.family, ModeFamily::HE);
            assert_eq!((modes[0].label.nu, modes[0].label.m), (1, 1));
            for m in &modes[2..] {
                assert!(m.n_eff < modes[0].n_eff);
            }
        }
    }

    #[test]
    fn n_eff_grows_monotonically_with_radius() {
        let mut prev = 0.0;
        for i in 0..20 {
            let radius = 0.15 + 0.03 * i as f64;
            let modes = silica_modes(radius);
            let he11 = modes
                .iter()
                .find(|m| m.label.family == ModeFamily::HE && m.label.nu == 1 && m.label.m == 1)
                .unwrap();
            assert!(
                he11.n_eff > prev,
                "n_eff not monotone at radius {radius}: {} <= {prev}",
                he11.n_eff
            );
            prev = he11.n_eff;
        }
    }

    #[test]
    fn tangential_fields_are_continuous_across_the_interface() {
        for radius in [0.2, 0.43] {
            for m in silica_modes(radius) {
                let a = m.guide.radius;
                let inner = m.radial_parts(a * (1.0 - 1e-12));
                let outer = m.radial_parts(a * (1.0 + 1e-12));
                for (name, i, o) in [
                    ("E_phi", inner.ephi, outer.ephi),
                    ("E_z", inner.ez, outer.ez),
                    ("H_phi", inner.hphi, outer.hphi),
                    ("H_z", inner.hz, outer.hz),
                ] {
                    let scale = i.abs().max(o.abs()).max(1e-30);
                    assert!(
                        ((i - o) / scale).abs() < 1e-8,
                        "{}: {name} jumps {i:e} -> {o:e}",
                        m.label
                    );
                }
            }
        }
    }

    #[test]
    fn he11_is_bright_on_axis_te01_is_dark() {
        let modes = silica_modes(0.43);
        let he11 = &modes[0];
        let (e, _) = he11.field_at(0.0, 0.0);
        let et = (e[0].norm_sqr() + e[1].norm_sqr()).sqrt();
        assert!(et > 1e-6, "HE11 transverse E on axis = {et}");

        let te01 = modes
            .iter()
            .find(|m| m.label.family == ModeFamily::TE)
            .unwrap();
        let (e, _) = te01.field_at(0.0, 0.0);
        let et = (e[0].norm_sqr() + e[1].norm_sqr()).sqrt();
        assert!(et < 1e-12, "TE01 transverse E on axis = {et}");
    }

    #[test]
    fn cladding_decay_follows_the_k_asymptotics() {
        let modes = silica_modes(0.43);
        let he11 = &modes[0];
        let a = he11.guide.radius;
        let (e2, _) = he11.field_at(2.0 * a, 0.0);
        let (e3, _) = he11.field_at(3.0 * a, 0.0);
        let mag = |e: &[Complex64; 3]| (e[0].norm_sqr() + e[1].norm_sqr() + e[2].norm_sqr()).sqrt();
        let got = mag(&e3) / mag(&e2);
        // K_nu(s) ~ sqrt(pi/2s) e^{-s}: ratio ~ sqrt(2/3) exp(-w).
        let asym = (2.0f64 / 3.0).sqrt() * (-he11.w).exp();
        assert!(
            (got - asym).abs() / asym < 0.05,
            "decay ratio {got} vs asymptotic {asym}"
        );
    }

    #[test]
    fn mode_power_scales_quadratically() {
        let modes = silica_modes(0.43);
        let mut doubled = modes[0].clone();
        doubled.amp_e *= 2.0;
        doubled.amp_h *= 2.0;
        let p2 = doubled.compute_power().unwrap();
        assert!((p2 / modes[0].normalization_power - 4.0).abs() < 1e-10);
    }

    #[test]
    fn all_p2_modes_carry_forward_power() {
        for m in silica_modes(0.43) {
            assert!(
                m.normalization_power > 0.0,
                "{} has P = {}",
                m.label,
                m.normalization_power
            );
        }
    }

    #[test]
    fn he11_power_is_mostly_in_the_core() {
        let modes = silica_modes(0.43);
        let frac = modes[0].core_power_fraction().unwrap();
        assert!((0.8..1.0).contains(&frac), "core fraction = {frac}");
    }

    #[test]
    fn distinct_modes_are_power_orthogonal() {
        let modes = silica_modes(0.43);
        for i in 0..modes.len() {
            for j in 0..modes.len() {
                if i == j {
                    continue;
                }
                let ov = cross_overlap_normalized(&modes[i], &modes[j]).unwrap();
                assert!(
                    ov.abs() < 1e-6,
                    "{} x {}: overlap {ov:e}",
                    modes[i].label,
                    modes[j].label
                );
            }
        }
    }

    #[test]
    fn self_overlap_is_unity() {
        for m in silica_modes(0.2) {
            let ov = cross_overlap_normalized(&m, &m).unwrap();
            assert!((ov - 1.0).abs() < 1e-9, "{}: self overlap {ov}", m.label);
        }
    }

    #[test]
    fn cutoff_finder_recovers_bessel_zeros() {
        let vc = find_cutoff_v(ModeFamily::TE, 0, 1, SILICA_INDEX, 1.0, 8.0)
            .unwrap()
            .unwrap();
        assert!((vc - J0_ZERO_1).abs() < 1e-3, "TE01 cutoff {vc}");
        let vc = find_cutoff_v(ModeFamily::HE, 1, 1, SILICA_INDEX, 1.0, 8.0)
            .unwrap()
            .unwrap();
        assert_eq!(vc, 0.0);
        // EH11 cuts off at the first zero of J_1 regardless of contrast.
        let vc = find_cutoff_v(ModeFamily::EH, 1, 1, SILICA_INDEX, 1.0, 8.0)
            .unwrap()
            .unwrap();
        assert!(
            (vc - crate::math::bessel::J1_ZERO_1).abs() < 2e-3,
            "EH11 cutoff {vc}"
        );
    }

    #[test]
    fn diamond_guide_solves_cleanly() {
        let modes = solve_modes(0.4, DIAMOND_INDEX, 1.0, LAMBDA).unwrap();
        assert!(modes.len() > 10);
        for m in &modes {
            assert!(m.n_eff > 1.0 && m.n_eff < DIAMOND_INDEX);
            assert!(m.normalization_power > 0.0);
        }
    }
}
