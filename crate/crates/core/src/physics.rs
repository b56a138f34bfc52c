//! Physical units and the first-order shift from a `-alpha b / P` perturbation.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::invp::inv_p;
use crate::specfun::digamma;
use crate::wavefun::{PhysicalScales, QuantumState};

/// `<1/P>_{nl} = (n a / hbar) <hbar kappa / P>_{nl}`.
pub fn inv_p_physical(state: &QuantumState, scales: &PhysicalScales) -> Result<f64> {
    let dimensionless = inv_p(state)?.value;
    Ok(state.n() as f64 * scales.bohr_radius / scales.hbar * dimensionless)
}

/// `(8 a n / h) [psi(n + 1/2) + gamma + ln 4 - 2 n^2/(4n^2 - 1)]` for `l = 0`.
pub fn inv_p_swave_physical(n: u32, scales: &PhysicalScales) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidState("principal quantum number must be >= 1".into()));
    }
    let nf = n as f64;
    let bracket = digamma(nf + 0.5)? + crate::specfun::EULER_GAMMA + 4f64.ln() - 2.0 * nf * nf / (4.0 * nf * nf - 1.0);
    Ok(8.0 * scales.bohr_radius * nf / scales.h() * bracket)
}

/// `(2 pi a / h) Gamma(n+1) Gamma(n+2) / (Gamma(n+1/2) Gamma(n+3/2))` for `l = n-1`.
pub fn inv_p_circular_physical(n: u32, scales: &PhysicalScales) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidState("principal quantum number must be >= 1".into()));
    }
    let nf = n as f64;
    let ln = crate::specfun::ln_gamma;
    let g = (ln(nf + 1.0) + ln(nf + 2.0) - ln(nf + 0.5) - ln(nf + 1.5)).exp();
    Ok(2.0 * PI * scales.bohr_radius / scales.h() * g)
}

/// First-order `Delta E_{nl} = -alpha b <1/P>_{nl}`.
pub fn energy_shift(state: &QuantumState, scales: &PhysicalScales) -> Result<f64> {
    if scales.b == 0.0 {
        return Ok(0.0);
    }
    Ok(-scales.alpha * scales.b * inv_p_physical(state, scales)?)
}

/// Maximum of the effective potential, `E_0 = b L - 2 alpha sqrt(b L)`.
pub fn effective_potential_max(angular_momentum: f64, alpha: f64, b: f64) -> Result<f64> {
    for (name, v) in [("L", angular_momentum), ("alpha", alpha), ("b", b)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
        }
    }
    let bl = b * angular_momentum;
    Ok(bl - 2.0 * alpha * bl.sqrt())
}
