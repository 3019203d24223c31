// Development probe: dump the mode table for one radius.
fn main() {
    let radius: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0.36);
    eprintln!("solving a = {radius}");
    let modes =
        tipcouple::modes::solve_modes(radius, tipcouple::scene::SILICA_INDEX, 1.0, 0.62).unwrap();
    for m in &modes {
        eprintln!(
            "{} n_eff={:.9} u={:.4} w={:.6e} P={:.4e}",
            m.label, m.n_eff, m.u, m.w, m.normalization_power
        );
    }
}
