//! Numerical building blocks: Bessel functions and quadrature.

pub mod bessel;
pub mod quad;
