//! Bessel functions of integer order: J_nu, the modified K_nu (and I_0, I_1
//! as a series ingredient), plus derivative helpers.
//!
//! J sequences use Miller's downward recurrence with the
//! `J_0 + 2*sum J_{2k} = 1` normalization, which keeps relative accuracy for
//! all orders at once. K_0/K_1 switch between the ascending series (x <= 2)
//! and a scaled integral representation (x > 2); higher orders follow from
//! the upward recurrence, which is stable for K.

/// Euler-Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// First zero of J_0 (cutoff of the first TE/TM mode group).
pub const J0_ZERO_1: f64 = 2.404_825_557_695_772_8;

/// First zero of J_1.
pub const J1_ZERO_1: f64 = 3.831_705_970_207_512_3;

/// First twelve zeros of J_0 (enough for V < 36).
pub const J0_ZEROS: [f64; 12] = [
    2.4048255576957728,
    5.5200781102863106,
    8.6537279129110122,
    11.791534439014282,
    14.930917708487786,
    18.071063967910923,
    21.211636629879259,
    24.352471530749303,
    27.493479132040255,
    30.634606468431975,
    33.775820213573569,
    36.917098353664044,
];

/// J_0(x) .. J_nmax(x) for x >= 0 by Miller's algorithm.
pub fn bessel_j_seq(nmax: usize, x: f64) -> Vec<f64> {
    assert!(x.is_finite() && x >= 0.0, "bessel_j_seq needs finite x >= 0");
    let mut out = vec![0.0_f64; nmax + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    // Start high enough that the seed error has decayed away by order nmax.
    let mut start = nmax.max(x.ceil() as usize) + 52;
    if start % 2 == 1 {
        start += 1;
    }
    let mut jp = 0.0_f64; // J_{k+1}
    let mut j = 1e-300_f64; // J_k, arbitrary seed at k = start
    let mut sum = 2.0 * j; // start is even
    for k in (1..=start).rev() {
        let jm = (2.0 * k as f64 / x) * j - jp;
        jp = j;
        j = jm;
        let order = k - 1;
        if order % 2 == 0 {
            sum += if order == 0 { j } else { 2.0 * j };
        }
        if order <= nmax {
            out[order] = j;
        }
        if j.abs() > 1e250 {
            jp *= 1e-250;
            j *= 1e-250;
            sum *= 1e-250;
            for v in out.iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    let scale = 1.0 / sum;
    for v in out.iter_mut() {
        *v *= scale;
    }
    out
}

/// Single J_nu(x).
pub fn bessel_j(nu: usize, x: f64) -> f64 {
    bessel_j_seq(nu, x)[nu]
}

/// J_nu'(x): J_0' = -J_1, J_nu' = (J_{nu-1} - J_{nu+1})/2.
pub fn bessel_j_deriv(nu: usize, x: f64) -> f64 {
    let seq = bessel_j_seq(nu + 1, x);
    if nu == 0 {
        -seq[1]
    } else {
        0.5 * (seq[nu - 1] - seq[nu + 1])
    }
}

/// I_0(x) by its power series (used only for x <= 2 in the K series).
fn bessel_i0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 1..60 {
        term *= q / ((k * k) as f64);
        sum += term;
        if term < sum * 1e-18 {
            break;
        }
    }
    sum
}

/// I_1(x) by its power series (x <= 2).
fn bessel_i1_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 1..60 {
        term *= q / ((k * (k + 1)) as f64);
        sum += term;
        if term < sum * 1e-18 {
            break;
        }
    }
    0.5 * x * sum
}

/// Ascending series for K_0, K_1 (accurate for x <= 2).
fn bessel_k01_series(x: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    let lg = (0.5 * x).ln();

    // K_0 = -(ln(x/2)+gamma) I_0 + sum_{k>=1} H_k q^k / (k!)^2
    let mut term = 1.0_f64;
    let mut h = 0.0_f64;
    let mut s0 = 0.0_f64;
    for k in 1..60 {
        term *= q / ((k * k) as f64);
        h += 1.0 / k as f64;
        let add = term * h;
        s0 += add;
        if add.abs() < 1e-18 * (s0.abs() + 1.0) {
            break;
        }
    }
    let k0 = -(lg + EULER_GAMMA) * bessel_i0_series(x) + s0;

    // K_1 = 1/x + ln(x/2) I_1 - (x/4) sum_k (H_k + H_{k+1} - 2 gamma) q^k / (k!(k+1)!)
    let mut term = 1.0_f64;
    let mut hk = 0.0_f64;
    let mut hk1 = 1.0_f64;
    let mut s1 = hk + hk1 - 2.0 * EULER_GAMMA;
    for k in 1..60 {
        term *= q / ((k * (k + 1)) as f64);
        hk += 1.0 / k as f64;
        hk1 += 1.0 / (k + 1) as f64;
        let add = term * (hk + hk1 - 2.0 * EULER_GAMMA);
        s1 += add;
        if add.abs() < 1e-18 * (s1.abs() + 1.0) {
            break;
        }
    }
    let k1 = 1.0 / x + lg * bessel_i1_series(x) - 0.25 * x * s1;
    (k0, k1)
}

/// K_0, K_1 for x > 2 by Steed's continued fraction (CF2) evaluation of the
/// confluent hypergeometric ratio, as in Thompson & Barnett.
fn bessel_k01_cf2(x: f64) -> (f64, f64) {
    const EPS: f64 = 1e-16;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0_f64;
    let mut q2 = 1.0_f64;
    let a1 = 0.25_f64; // 1/4 - mu^2 with mu = 0
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10000 {
        a -= 2.0 * (i as f64 - 1.0);
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    h *= a1;
    let k0 = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

/// K_0(x), K_1(x) for x > 0.
pub fn bessel_k01(x: f64) -> (f64, f64) {
    assert!(x > 0.0 && x.is_finite(), "bessel_k01 needs x > 0");
    if x <= 2.0 {
        bessel_k01_series(x)
    } else {
        bessel_k01_cf2(x)
    }
}

/// K_0(x) .. K_nmax(x) by upward recurrence K_{n+1} = K_{n-1} + (2n/x) K_n.
pub fn bessel_k_seq(nmax: usize, x: f64) -> Vec<f64> {
    let (k0, k1) = bessel_k01(x);
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(k0);
    if nmax >= 1 {
        out.push(k1);
    }
    for n in 1..nmax {
        let next = out[n - 1] + (2.0 * n as f64 / x) * out[n];
        out.push(next);
    }
    out
}

/// Single K_nu(x).
pub fn bessel_k(nu: usize, x: f64) -> f64 {
    bessel_k_seq(nu, x)[nu]
}

/// Ratios K_{n+1}(x)/K_n(x) for n = 0..nmax; stays finite even for tiny x
/// where the K values themselves overflow.
pub fn bessel_k_ratio_seq(nmax: usize, x: f64) -> Vec<f64> {
    let (k0, k1) = bessel_k01(x);
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(k1 / k0);
    for n in 1..=nmax {
        out.push(2.0 * n as f64 / x + 1.0 / out[n - 1]);
    }
    out
}

/// K_nu'(x) = -(K_{nu-1} + K_{nu+1})/2, with K_0' = -K_1.
pub fn bessel_k_deriv(nu: usize, x: f64) -> f64 {
    if nu == 0 {
        -bessel_k(1, x)
    } else {
        let seq = bessel_k_seq(nu + 1, x);
        -0.5 * (seq[nu - 1] + seq[nu + 1])
    }
}

/// K_nu'(x) / (x K_nu(x)) computed through ratios; never overflows.
pub fn bessel_k_log_deriv_over_x(nu: usize, x: f64) -> f64 {
    if nu == 0 {
        let r = bessel_k_ratio_seq(0, x);
        -r[0] / x
    } else {
        let r = bessel_k_ratio_seq(nu, x);
        // K_{nu-1}/K_nu = 1/r[nu-1]; K_{nu+1}/K_nu = r[nu]
        -0.5 * (1.0 / r[nu - 1] + r[nu]) / x
    }
}

#[cfg(test)]
mod refs {
    include!("bessel_test_refs.rs");
}

#[cfg(test)]
mod tests {
    use super::refs::{JP_REFS, J_REFS, KP_REFS, K_REFS};
    use super::*;

    fn assert_close(got: f64, want: f64, rel: f64, what: &str) {
        // Absolute floor covers cancellation right at a zero of the function,
        // where relative accuracy is not meaningful.
        let tol = rel * want.abs() + 1e-15;
        assert!(
            (got - want).abs() <= tol,
            "{what}: got {got:e}, want {want:e} (|diff| = {:e})",
            (got - want).abs()
        );
    }

    #[test]
    fn j_matches_high_precision_references() {
        for &(nu, x, want) in J_REFS {
            assert_close(
                bessel_j(nu as usize, x),
                want,
                1e-11,
                &format!("J_{nu}({x})"),
            );
        }
    }

    #[test]
    fn k_matches_high_precision_references() {
        for &(nu, x, want) in K_REFS {
            assert_close(
                bessel_k(nu as usize, x),
                want,
                1e-11,
                &format!("K_{nu}({x})"),
            );
        }
    }

    #[test]
    fn j_derivatives_match_references() {
        for &(nu, x, want) in JP_REFS {
            assert_close(
                bessel_j_deriv(nu as usize, x),
                want,
                1e-11,
                &format!("J'_{nu}({x})"),
            );
        }
    }

    #[test]
    fn k_derivatives_match_references() {
        for &(nu, x, want) in KP_REFS {
            assert_close(
                bessel_k_deriv(nu as usize, x),
                want,
                1e-11,
                &format!("K'_{nu}({x})"),
            );
        }
    }

    #[test]
    fn j_sequence_is_consistent_with_singles() {
        // Different start orders give different roundoff, not different values.
        let seq = bessel_j_seq(8, 4.6);
        for (nu, &v) in seq.iter().enumerate() {
            assert_close(v, bessel_j(nu, 4.6), 1e-13, &format!("seq nu={nu}"));
        }
    }

    #[test]
    fn j_at_zero_argument() {
        let seq = bessel_j_seq(3, 0.0);
        assert_eq!(seq, vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn k_ratios_agree_with_values() {
        for &x in &[0.05, 0.7, 3.0, 20.0] {
            let seq = bessel_k_seq(6, x);
            let ratios = bessel_k_ratio_seq(5, x);
            for n in 0..=5 {
                assert_close(
                    ratios[n],
                    seq[n + 1] / seq[n],
                    1e-12,
                    &format!("K ratio n={n} x={x}"),
                );
            }
        }
    }

    #[test]
    fn k_log_deriv_handles_tiny_arguments() {
        // K_nu'(x)/(x K_nu) ~ -nu/x^2 as x -> 0 for nu >= 1.
        let x = 1e-9;
        let got = bessel_k_log_deriv_over_x(4, x);
        let expect = -4.0 / (x * x);
        assert_close(got, expect, 1e-6, "log-deriv ratio at tiny x");
    }

    #[test]
    fn i_k_wronskian_holds_on_series_branch() {
        for &x in &[0.1, 0.5, 1.0, 1.9] {
            let (k0, k1) = bessel_k01(x);
            let resid = bessel_i0_series(x) * k1 + bessel_i1_series(x) * k0 - 1.0 / x;
            assert!(
                resid.abs() < 1e-12 / x,
                "Wronskian residual {resid:e} at x={x}"
            );
        }
    }

    #[test]
    fn frozen_zeros_are_zeros() {
        assert!(bessel_j(0, J0_ZERO_1).abs() < 1e-14);
        assert!(bessel_j(1, J1_ZERO_1).abs() < 1e-14);
    }
}
