//! Current sources: the dipole (a soft current on the Yee edges nearest its
//! position, trilinearly weighted) and a transversely uniform current sheet
//! used to qualify the absorbing boundaries.

use crate::consts::C0;
use crate::error::{Error, Result};
use crate::grid::{Axis, GridDims};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Canonical dipole orientations relative to the primary structure axis
/// (+z): radial = x, azimuthal = y, axial = z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Radial,
    Azimuthal,
    Axial,
}

impl Orientation {
    pub fn axis(self) -> Axis {
        match self {
            Orientation::Radial => Axis::X,
            Orientation::Azimuthal => Axis::Y,
            Orientation::Axial => Axis::Z,
        }
    }
}

impl std::fmt::Display for Orientation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Orientation::Radial => "radial",
            Orientation::Azimuthal => "azimuthal",
            Orientation::Axial => "axial",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DipoleSource {
    /// Position, um.
    pub position: [f64; 3],
    pub orientation: Orientation,
    /// Vacuum wavelength, um.
    pub wavelength: f64,
    /// Peak current amplitude (source units; reported quantities are ratios).
    pub amplitude: f64,
    /// Raised-cosine turn-on, in optical cycles.
    pub ramp_cycles: f64,
}

impl DipoleSource {
    pub fn omega(&self) -> f64 {
        2.0 * PI * C0 / self.wavelength
    }

    pub fn period_fs(&self) -> f64 {
        self.wavelength / C0
    }

    /// Smooth turn-on envelope at time t (fs).
    pub fn envelope(&self, t: f64) -> f64 {
        let t_ramp = self.ramp_cycles * self.period_fs();
        if t <= 0.0 {
            0.0
        } else if t >= t_ramp {
            1.0
        } else {
            0.5 * (1.0 - (PI * t / t_ramp).cos())
        }
    }

    /// Instantaneous current I(t) (A); the dipole moment is I(t) * dx.
    pub fn current(&self, t: f64) -> f64 {
        self.amplitude * self.envelope(t) * (self.omega() * t).sin()
    }
}

/// Precomputed injection footprint: flat indices into the oriented
/// E-component array with trilinear weights summing to 1.
#[derive(Debug, Clone)]
pub struct InjectionPlan {
    pub component: Axis,
    pub entries: Vec<(usize, f32)>,
}

impl InjectionPlan {
    /// Resolve the dipole position onto the Yee sublattice of its oriented
    /// component. Errors if the footprint touches the PML region.
    pub fn build(source: &DipoleSource, dims: &GridDims, pml_cells: usize) -> Result<Self> {
        let comp = source.orientation.axis();
        let origin = [dims.x0, dims.y0, dims.z0];
        // Fractional lattice coordinates on the component's sublattice:
        // the oriented axis is offset by half a cell.
        let mut frac = [0.0f64; 3];
        for a in 0..3 {
            let offset = if a == comp.index() { 0.5 } else { 0.0 };
            frac[a] = (source.position[a] - origin[a]) / dims.dx - offset;
        }
        let base: Vec<isize> = frac.iter().map(|&f| f.floor() as isize).collect();
        let n = [dims.nx as isize, dims.ny as isize, dims.nz as isize];
        let pml = pml_cells as isize;
        let mut entries = Vec::with_capacity(8);
        for da in 0..2isize {
            for db in 0..2isize {
                for dc in 0..2isize {
                    let idx3 = [base[0] + da, base[1] + db, base[2] + dc];
                    let w = (1.0 - (frac[0] - (base[0] + da) as f64).abs())
                        * (1.0 - (frac[1] - (base[1] + db) as f64).abs())
                        * (1.0 - (frac[2] - (base[2] + dc) as f64).abs());
                    if w <= 0.0 {
                        continue;
                    }
                    for a in 0..3 {
                        if idx3[a] < pml || idx3[a] > n[a] - pml {
                            return Err(Error::Config(format!(
                                "source footprint at {:?} touches the PML region",
                                source.position
                            )));
                        }
                    }
                    let flat =
                        dims.idx(idx3[0] as usize, idx3[1] as usize, idx3[2] as usize);
                    entries.push((flat, w as f32));
                }
            }
        }
        let total: f32 = entries.iter().map(|(_, w)| *w).sum();
        debug_assert!((total - 1.0).abs() < 1e-5, "weights sum to {total}");
        Ok(InjectionPlan {
            component: comp,
            entries,
        })
    }
}

/// Pulse waveform for boundary qualification: differentiated Gaussian whose
/// spectrum peaks at `center_frequency`.
#[derive(Debug, Clone, Copy)]
pub struct GaussianDerivPulse {
    /// Peak spectral frequency, 1/fs.
    pub center_frequency: f64,
    /// Delay in units of tau.
    pub delay_taus: f64,
}

impl GaussianDerivPulse {
    pub fn tau(&self) -> f64 {
        1.0 / (2.0 * PI * self.center_frequency)
    }

    pub fn value(&self, t: f64) -> f64 {
        let tau = self.tau();
        let s = (t - self.delay_taus * tau) / tau;
        -s * (-0.5 * s * s).exp()
    }
}

/// Transversely uniform current sheet on one z-plane of Ex edges; the
/// lateral uniformity makes the 3D run exactly one-dimensional.
#[derive(Debug, Clone)]
pub struct CurrentSheet {
    pub k_plane: usize,
    pub amplitude: f64,
    pub pulse: GaussianDerivPulse,
}
