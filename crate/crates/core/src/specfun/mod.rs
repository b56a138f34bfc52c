//! Special-function kernels: orthogonal polynomials, spherical Bessel
//! functions, and the gamma family.

mod bessel;
mod gamma;
mod polynomials;

pub use bessel::spherical_bessel;
pub use gamma::{
    digamma, digamma_difference, digamma_exact, gamma_ratio_asym, ln_gamma, DigammaValue,
    EULER_GAMMA,
};
pub use polynomials::{
    chebyshev_u, chebyshev_u_power_series, gegenbauer, gegenbauer_exact, laguerre_assoc,
    laguerre_assoc_exact, legendre_p, PolynomialFamily, PolynomialSpec,
};
