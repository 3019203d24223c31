//! Physical constants in the crate's working units: lengths in micrometres,
//! times in femtoseconds, electric field in V/um, magnetic field in A/um.
//! Powers then come out in watts (V*A) when areas are in um^2.

/// Speed of light in vacuum, um/fs.
pub const C0: f64 = 0.299_792_458;

/// Impedance of free space, V/A.
pub const ETA0: f64 = 376.730_313_668;

/// Vacuum permittivity in um-fs units, A*fs/(V*um).
pub const EPS0: f64 = 1.0 / (C0 * ETA0);

/// Vacuum permeability in um-fs units, V*fs/(A*um).
pub const MU0: f64 = ETA0 / C0;

/// Time-averaged radiated power of a time-harmonic current dipole of moment
/// `i_dl` (A*um) at free-space wavenumber `k` (1/um), in watts.
pub fn hertzian_dipole_power(k: f64, i_dl: f64) -> f64 {
    ETA0 * k * k * i_dl * i_dl / (12.0 * std::f64::consts::PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_system_is_consistent() {
        // c^2 = 1/(eps0*mu0) and eta0 = sqrt(mu0/eps0)
        assert!((C0 * C0 * EPS0 * MU0 - 1.0).abs() < 1e-12);
        assert!(((MU0 / EPS0).sqrt() - ETA0).abs() / ETA0 < 1e-12);
    }

    #[test]
    fn dipole_power_matches_hand_formula() {
        // P = eta0 * pi / 3 * (i_dl / lambda)^2 is the same expression with
        // k = 2 pi / lambda substituted.
        let lambda = 0.62;
        let k = 2.0 * std::f64::consts::PI / lambda;
        let i_dl = 0.025;
        let p = hertzian_dipole_power(k, i_dl);
        let p_ref = ETA0 * std::f64::consts::PI / 3.0 * (i_dl / lambda) * (i_dl / lambda);
        assert!((p - p_ref).abs() / p_ref < 1e-14);
    }
}
