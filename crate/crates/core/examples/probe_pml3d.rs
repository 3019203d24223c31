// Development probe: quasi-1D pulse reflection off the z PML inside the
// full 3D engine (uniform current sheet keeps the run one-dimensional).
use tipcouple::fdtd::cpml::PmlParams;
use tipcouple::fdtd::{GridSpec, Simulation, StopRule};
use tipcouple::grid::Axis;
use tipcouple::scene::{Domain, Scene};
use tipcouple::source::{CurrentSheet, GaussianDerivPulse};

fn main() {
    let scene = Scene {
        domain: Domain {
            extents: [1.0, 1.0, 4.0],
            grid_step: 0.04,
            pml_cells: 10,
        },
        primitives: vec![],
        pair: None,
        dipole_position: [0.0, 0.0, 0.0],
    };
    let eps = scene.rasterize().unwrap();
    let spec = GridSpec::new(eps.dims, 0.99, PmlParams::default(), 0.62).unwrap();
    let dims = spec.dims;
    let dt = spec.dt;
    let mut sim = Simulation::new(eps, spec);
    sim.add_sheet(CurrentSheet {
        k_plane: 30,
        amplitude: 1.0,
        pulse: GaussianDerivPulse {
            center_frequency: 0.299792458 / 0.62,
            delay_taus: 6.0,
        },
    });
    let probe = (dims.nx / 2, dims.ny / 2, 70usize);
    let c = 0.299792458f64;
    let t_pass = (probe.2 - 30) as f64 * dims.dx / c
        + 14.0 / (2.0 * std::f64::consts::PI * (c / 0.62));
    let t_total = t_pass + 2.4 * ((dims.nz - probe.2) as f64 * dims.dx) / c;
    let steps = (t_total / dt).ceil() as u64;
    let mut incident: f64 = 0.0;
    let mut reflected: f64 = 0.0;
    for s in 0..steps {
        sim.run_until(StopRule::FixedSteps(1)).unwrap();
        let v = sim.e_at(Axis::X, probe.0, probe.1, probe.2).abs();
        if (s as f64 + 1.0) * dt <= t_pass {
            incident = incident.max(v);
        } else {
            reflected = reflected.max(v);
        }
    }
    println!(
        "incident {incident:.4e}  reflected {reflected:.4e}  R = {:.3e}",
        reflected / incident
    );
}
