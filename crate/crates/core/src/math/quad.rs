//! Small quadrature toolbox: a globally adaptive Simpson integrator for the
//! radial mode integrals and fixed 2-point Gauss-Legendre nodes for per-cell
//! overlap integration.
//!
//! The integrator splits whichever interval currently carries the largest
//! error estimate (priority queue), so integrands whose values are small
//! residuals of large cancelling products (near-cutoff modes) cannot trap it
//! into refining roundoff noise: the work budget bounds the cost, and a
//! noise-floor acceptance decides whether budget exhaustion is a failure.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[derive(Debug)]
struct Interval {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    estimate: f64,
    error: f64,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Interval {}
impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn make_interval<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fb: f64) -> Interval {
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    let lm = f(0.5 * (a + m));
    let rm = f(0.5 * (m + b));
    let refined = simpson(a, m, fa, lm, fm) + simpson(m, b, fm, rm, fb);
    Interval {
        a,
        b,
        fa,
        fm,
        fb,
        estimate: refined + (refined - whole) / 15.0,
        error: (refined - whole).abs() / 15.0,
    }
}

/// Integrate `f` over [a, b] to relative tolerance `rel_tol` (with respect
/// to the integral magnitude or the sampled integrand scale, whichever is
/// larger). Exhausting the interval budget is an error only if the result
/// is still worse than the 1e-6 noise floor.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }

    // Integrand scale from a coarse probe; anchors the tolerance when the
    // integral itself is (near) zero, e.g. orthogonality integrals.
    let mut scale = 0.0_f64;
    for i in 0..=16 {
        scale = scale.max(f(a + (b - a) * i as f64 / 16.0).abs());
    }
    let scale_len = scale * (b - a).abs();

    let mut heap = BinaryHeap::new();
    // Seed with a few intervals so a probe-transparent feature still splits.
    let seeds = 8;
    for s in 0..seeds {
        let x0 = a + (b - a) * s as f64 / seeds as f64;
        let x1 = a + (b - a) * (s + 1) as f64 / seeds as f64;
        heap.push(make_interval(f, x0, x1, f(x0), f(x1)));
    }

    let mut n = heap.len();
    loop {
        let total: f64 = heap.iter().map(|iv| iv.estimate).sum();
        let err: f64 = heap.iter().map(|iv| iv.error).sum();
        let target = rel_tol * total.abs().max(scale_len).max(1e-300);
        if err <= target {
            return Ok(total);
        }
        if n >= max_intervals {
            if err <= 1e-6 * total.abs().max(scale_len) {
                return Ok(total);
            }
            return Err(Error::Quadrature(format!(
                "interval budget exhausted on [{a}, {b}] (error {err:e} vs total {total:e})"
            )));
        }
        let worst = heap.pop().expect("heap non-empty");
        let m = 0.5 * (worst.a + worst.b);
        if m == worst.a || m == worst.b {
            // Machine-width interval; its error is irreducible roundoff.
            let mut rest = heap.into_sorted_vec();
            let total: f64 = rest.iter().map(|iv| iv.estimate).sum::<f64>() + worst.estimate;
            rest.clear();
            return Ok(total);
        }
        heap.push(make_interval(f, worst.a, m, worst.fa, worst.fm));
        heap.push(make_interval(f, m, worst.b, worst.fm, worst.fb));
        n += 1;
    }
}

/// Nodes of the 2-point Gauss-Legendre rule on [0, 1], weights 1/2 each.
pub const GAUSS2_NODES: [f64; 2] = [
    0.5 - 0.288_675_134_594_812_9, // (1 - 1/sqrt(3))/2
    0.5 + 0.288_675_134_594_812_9,
];

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn integrates_polynomials() {
        let f = |x: f64| 3.0 * x * x;
        let v = integrate_adaptive(&f, 0.0, 2.0, 1e-12, 1000).unwrap();
        assert!((v - 8.0).abs() < 1e-10);
    }

    #[test]
    fn integrates_oscillatory_function() {
        let f = |x: f64| x.sin();
        let v = integrate_adaptive(&f, 0.0, PI, 1e-12, 4000).unwrap();
        assert!((v - 2.0).abs() < 1e-11);
    }

    #[test]
    fn integrates_exponential_tail() {
        let f = |x: f64| (-x).exp();
        let v = integrate_adaptive(&f, 0.0, 40.0, 1e-12, 4000).unwrap();
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn resolves_a_narrow_bump_missed_by_probing() {
        // Gaussian of width 1e-3 at an irrational spot; the probe grid and
        // seed intervals straddle it.
        let f = |x: f64| (-(x - 0.377_f64).powi(2) / 2e-6).exp();
        let v = integrate_adaptive(&f, 0.0, 1.0, 1e-10, 20000).unwrap();
        let exact = (2.0 * PI * 1e-6).sqrt() * 0.5 * 2.0; // sigma = 1e-3
        assert!((v - exact).abs() / exact < 1e-8, "got {v}, want {exact}");
    }

    #[test]
    fn errors_on_budget_exhaustion() {
        // A step cannot be integrated to 1e-12 with four intervals.
        let f = |x: f64| if x < 1.0 / 3.0 { 0.0 } else { 1.0 };
        assert!(integrate_adaptive(&f, 0.0, 1.0, 1e-12, 4).is_err());
    }

    #[test]
    fn accepts_noise_floor_results() {
        // Smooth integral plus 1e-7-relative multiplicative noise: the
        // budget runs out but the answer is within the noise floor.
        let f = |x: f64| {
            let noise = 1.0 + 1e-7 * ((x * 1e12).sin());
            x.cos() * noise
        };
        let v = integrate_adaptive(&f, 0.0, 1.0, 1e-12, 600).unwrap();
        assert!((v - 1.0f64.sin()).abs() < 1e-6);
    }

    #[test]
    fn gauss2_nodes_integrate_cubics() {
        // int_0^1 x^3 dx = 1/4 with weights 1/2.
        let v: f64 = GAUSS2_NODES.iter().map(|&x| 0.5 * x * x * x).sum();
        assert!((v - 0.25).abs() < 1e-15);
    }
}
