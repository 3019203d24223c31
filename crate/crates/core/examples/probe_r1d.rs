// Development probe: 1D PML reflection margin.
use tipcouple::fdtd::cpml::PmlParams;
use tipcouple::fdtd::one_d::measure_pml_reflection;

fn main() {
    let r = measure_pml_reflection(0.62 / 25.0, 0.99, 0.62, &PmlParams::default());
    println!("1D reflection R = {r:.3e} ({:.1} dB)", 20.0 * r.log10());
}
