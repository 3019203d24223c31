// Development probe: vacuum dipole radiated power vs the analytic value.
use tipcouple::consts::{hertzian_dipole_power, C0};
use tipcouple::fdtd::cpml::PmlParams;
use tipcouple::fdtd::{GridSpec, Simulation, StopRule};
use tipcouple::monitor::DftMonitor;
use tipcouple::scene::{Domain, Scene};
use tipcouple::source::{DipoleSource, Orientation};

fn main() {
    let lambda = 0.62f64;
    let dx = lambda / 20.0;
    let scene = Scene {
        domain: Domain {
            extents: [1.24, 1.24, 1.24],
            grid_step: dx,
            pml_cells: 10,
        },
        primitives: vec![],
        pair: None,
        dipole_position: [0.0, 0.0, 0.0],
    };
    let eps = scene.rasterize().unwrap();
    let spec = GridSpec::new(eps.dims, 0.99, PmlParams::default(), lambda).unwrap();
    let dims = spec.dims;
    let omega = 2.0 * std::f64::consts::PI * C0 / lambda;
    let mut sim = Simulation::new(eps, spec);
    sim.add_dipole(DipoleSource {
        position: [0.0, 0.0, 0.0],
        orientation: Orientation::Radial,
        wavelength: lambda,
        amplitude: 1.0,
        ramp_cycles: 10.0,
    })
    .unwrap();
    let c = dims.nx / 2;
    for half in [3usize, 5, 7, 9] {
        let mon = DftMonitor::closed_box(
            format!("box{half}"),
            [c - half, c - half, c - half],
            [c + half, c + half, c + half],
            omega,
        );
        sim.add_monitor(mon);
    }
    let out = sim
        .run_until(StopRule::AutoShutoff {
            ratio: 1e-5,
            max_cycles: 100,
            min_cycles: 18,
        })
        .unwrap();
    println!("converged={} cycles={}", out.converged, out.cycles);
    let k = 2.0 * std::f64::consts::PI / lambda;
    let p_ref = hertzian_dipole_power(k, 1.0 * dims.dx);
    println!("analytic P = {p_ref:.6e} W");
    for m in &sim.monitors {
        let p = m.power().unwrap();
        println!(
            "{}: P = {p:.6e}  ratio = {:.5}  err = {:+.3}%",
            m.name,
            p / p_ref,
            100.0 * (p / p_ref - 1.0)
        );
    }
}
