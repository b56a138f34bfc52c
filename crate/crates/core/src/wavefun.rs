//! Hydrogenic radial wavefunctions in position and momentum space.
//!
//! Conventions: the momentum wavefunction is normalized against the measure
//! `k^2 dk / (8 pi^3)`, i.e. `d^3p / h^3` with `p = hbar k`. The radial
//! transform is `P(k) = 4 pi int j_l(k r) R(r) r^2 dr`, consistent with the
//! position normalization `int R^2 r^2 dr = 1`. Angular factors are never
//! evaluated.

use std::fmt;

use crate::error::{Error, Result};
use crate::quadrature::adaptive::{integrate_panels, Tolerance};
use crate::specfun::{gegenbauer, laguerre_assoc, ln_gamma, spherical_bessel};

/// Quantum numbers `(n, l, m)` with `n > l >= |m| >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumState {
    n: u32,
    l: u32,
    m: i32,
}

impl QuantumState {
    pub fn new(n: u32, l: u32) -> Result<Self> {
        Self::with_m(n, l, 0)
    }

    pub fn with_m(n: u32, l: u32, m: i32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidState("principal quantum number must be >= 1".into()));
        }
        if l >= n {
            return Err(Error::InvalidState(format!("l = {l} must be below n = {n}")));
        }
        if m.unsigned_abs() > l {
            return Err(Error::InvalidState(format!("|m| = {} exceeds l = {l}", m.abs())));
        }
        Ok(Self { n, l, m })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    /// Degree `n - l - 1` of the radial polynomials.
    pub fn radial_degree(&self) -> u32 {
        self.n - self.l - 1
    }

    /// Every state with principal number up to `n_max`, ordered by `n`, then `l`.
    pub fn all_up_to(n_max: u32) -> impl Iterator<Item = QuantumState> {
        (1..=n_max).flat_map(|n| (0..n).map(move |l| QuantumState { n, l, m: 0 }))
    }
}

impl fmt::Display for QuantumState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, l={})", self.n, self.l)
    }
}

/// Physical scales of the Coulomb problem plus the reciprocity scale `b`.
///
/// `b` carries units of momentum per length so that `alpha * b / P` is an
/// energy. The mass is not independent: `a = hbar^2 / (m alpha)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalScales {
    pub bohr_radius: f64,
    pub hbar: f64,
    pub alpha: f64,
    pub b: f64,
}

impl PhysicalScales {
    pub fn new(bohr_radius: f64, hbar: f64, alpha: f64, b: f64) -> Result<Self> {
        for (name, v) in [("bohr_radius", bohr_radius), ("hbar", hbar), ("alpha", alpha)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
            }
        }
        if !(b >= 0.0 && b.is_finite()) {
            return Err(Error::InvalidArgument(format!("b must be non-negative, got {b}")));
        }
        Ok(Self {
            bohr_radius,
            hbar,
            alpha,
            b,
        })
    }

    /// `a = hbar = alpha = 1`, `b = 0`.
    pub fn atomic() -> Self {
        Self {
            bohr_radius: 1.0,
            hbar: 1.0,
            alpha: 1.0,
            b: 0.0,
        }
    }

    pub fn with_b(self, b: f64) -> Result<Self> {
        Self::new(self.bohr_radius, self.hbar, self.alpha, b)
    }

    /// Planck's constant `h = 2 pi hbar`.
    pub fn h(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.hbar
    }

    pub fn kappa(&self, n: u32) -> f64 {
        1.0 / (n as f64 * self.bohr_radius)
    }

    pub fn mass(&self) -> f64 {
        self.hbar * self.hbar / (self.alpha * self.bohr_radius)
    }
}

/// `16 pi sqrt(n (n-l-1)! / (n+l)!) l!`
fn momentum_norm(state: &QuantumState) -> f64 {
    let (n, l) = (state.n as f64, state.l as f64);
    let log = 0.5 * (n.ln() + ln_gamma(n - l) - ln_gamma(n + l + 1.0)) + ln_gamma(l + 1.0);
    16.0 * std::f64::consts::PI * log.exp()
}

/// Radial momentum wavefunction `P_{nl}(k)`.
///
/// `16 pi kappa^(5/2) sqrt(n (n-l-1)!/(n+l)!) (4 k kappa)^l l! / (k^2+kappa^2)^(l+2)
///  * C_{n-l-1}^{l+1}((k^2 - kappa^2)/(k^2 + kappa^2))`. At `k = 0` the value is
/// the continuous limit.
pub fn momentum_radial(state: &QuantumState, kappa: f64, k: f64) -> f64 {
    let s = k * k + kappa * kappa;
    let x = (k * k - kappa * kappa) / s;
    let angular = (4.0 * k * kappa / s).powi(state.l as i32);
    momentum_norm(state) * kappa.powf(2.5) * angular / (s * s)
        * gegenbauer(state.radial_degree() as i64, state.l as f64 + 1.0, x)
}

/// Radial position wavefunction `R_{nl}(r)` (angular factor excluded).
pub fn position_radial(state: &QuantumState, kappa: f64, r: f64) -> f64 {
    let (n, l) = (state.n as f64, state.l as f64);
    let log_norm = 0.5 * (ln_gamma(n - l) - n.ln() - ln_gamma(n + l + 1.0));
    let rho = 2.0 * kappa * r;
    2.0 * kappa.powf(1.5) * log_norm.exp() * (-kappa * r).exp() * rho.powi(state.l as i32)
        * laguerre_assoc(state.radial_degree() as i64, 2.0 * l + 1.0, rho)
}

fn check_z(z: f64) -> Result<()> {
    if z.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("generating variable needs |z| < 1, got {z}")))
    }
}

/// Closed form of the momentum generating function,
/// `8 pi kappa (4 k kappa)^l (1 - z^2) (l+1)! / (kappa^2 (1+z)^2 + k^2 (1-z)^2)^(l+2)`.
pub fn generating_closed(l: u32, kappa: f64, k: f64, z: f64) -> Result<f64> {
    check_z(z)?;
    let d = kappa * kappa * (1.0 + z).powi(2) + k * k * (1.0 - z).powi(2);
    let fact = ln_gamma(l as f64 + 2.0).exp();
    Ok(8.0 * std::f64::consts::PI * kappa * (4.0 * k * kappa / d).powi(l as i32) * (1.0 - z * z) * fact
        / (d * d))
}

/// Weight of `P_{nl}(k) z^v` (with `n = v + l + 1`) in the generating series:
/// `sqrt(n (n+l)! / v!) / (2 kappa^(3/2))`.
pub fn generating_weight(l: u32, v: u32, kappa: f64) -> f64 {
    let n = (v + l + 1) as f64;
    let log = 0.5 * (n.ln() + ln_gamma(n + l as f64 + 1.0) - ln_gamma(v as f64 + 1.0));
    log.exp() / (2.0 * kappa.powf(1.5))
}

/// The weight as typeset alongside the generating series,
/// `sqrt(v! / ((v+l+1) (v+2l+1)! kappa^3))`. Kept only to document that it
/// does not reproduce the closed form.
pub fn generating_weight_as_printed(l: u32, v: u32, kappa: f64) -> f64 {
    let n = (v + l + 1) as f64;
    let log = 0.5 * (ln_gamma(v as f64 + 1.0) - n.ln() - ln_gamma((v + 2 * l) as f64 + 2.0));
    log.exp() / kappa.powf(1.5)
}

fn partial_sum(l: u32, kappa: f64, k: f64, z: f64, terms: u32, weight: fn(u32, u32, f64) -> f64) -> Result<f64> {
    check_z(z)?;
    let mut sum = 0.0;
    let mut zp = 1.0;
    for v in 0..terms {
        let state = QuantumState::new(v + l + 1, l)?;
        sum += weight(l, v, kappa) * momentum_radial(&state, kappa, k) * zp;
        zp *= z;
    }
    Ok(sum)
}

/// First `terms` terms of the generating series built from [`momentum_radial`].
pub fn generating_partial(l: u32, kappa: f64, k: f64, z: f64, terms: u32) -> Result<f64> {
    partial_sum(l, kappa, k, z, terms, generating_weight)
}

pub fn generating_partial_as_printed(l: u32, kappa: f64, k: f64, z: f64, terms: u32) -> Result<f64> {
    partial_sum(l, kappa, k, z, terms, generating_weight_as_printed)
}

/// Radial cutoff for the Fourier oracle, in units of length.
pub fn fourier_cutoff(state: &QuantumState, kappa: f64) -> f64 {
    (40.0 + 10.0 * state.l as f64) * state.n as f64 / kappa
}

/// `4 pi int_0^inf j_l(k r) R_{nl}(r) r^2 dr` by adaptive quadrature.
///
/// The range is cut at [`fourier_cutoff`] and pre-split into panels no wider
/// than a quarter Bessel period or one decay length.
pub fn fourier_oracle(state: &QuantumState, kappa: f64, k: f64) -> Result<f64> {
    if !(k > 0.0) {
        return Err(Error::InvalidArgument(format!("fourier oracle needs k > 0, got {k}")));
    }
    let r_max = fourier_cutoff(state, kappa);
    let width = (0.5 * std::f64::consts::PI / k).min(1.0 / kappa);
    let panels = ((r_max / width).ceil() as usize).clamp(1, 20_000);
    let breaks: Vec<f64> = (0..=panels).map(|i| r_max * i as f64 / panels as f64).collect();
    let scale = momentum_norm(state) * kappa.powf(-1.5);
    let tol = Tolerance {
        abs: 1e-12 * scale,
        rel: 1e-12,
        max_intervals: 200_000,
    };
    let integral = integrate_panels(
        |r| spherical_bessel(state.l, k * r) * position_radial(state, kappa, r) * r * r,
        &breaks,
        tol,
    )?;
    Ok(4.0 * std::f64::consts::PI * integral.value)
}

/// `int_0^inf t^(v+1) e^(-beta t) J_v(gamma t) dt` with `v = l + 1/2`, numerically.
///
/// Uses `J_{l+1/2}(z) = sqrt(2 z / pi) j_l(z)`.
pub fn laplace_bessel_numeric(l: u32, beta: f64, gamma: f64) -> Result<f64> {
    let nu = l as f64 + 0.5;
    let t_max = (80.0 + 4.0 * l as f64) / beta;
    let width = (0.5 * std::f64::consts::PI / gamma).min(1.0 / beta);
    let panels = ((t_max / width).ceil() as usize).max(1);
    let breaks: Vec<f64> = (0..=panels).map(|i| t_max * i as f64 / panels as f64).collect();
    let tol = Tolerance {
        abs: 1e-300,
        rel: 1e-12,
        max_intervals: 100_000,
    };
    let integral = integrate_panels(
        |t| {
            let z = gamma * t;
            let j = (2.0 * z / std::f64::consts::PI).sqrt() * spherical_bessel(l, z);
            t.powf(nu + 1.0) * (-beta * t).exp() * j
        },
        &breaks,
        tol,
    )?;
    Ok(integral.value)
}

/// `2^(v+1) beta gamma^v Gamma(v + 3/2) / (sqrt(pi) (beta^2 + gamma^2)^(v + 3/2))`, `v = l + 1/2`.
pub fn laplace_bessel_closed(l: u32, beta: f64, gamma: f64) -> f64 {
    let nu = l as f64 + 0.5;
    let log = (nu + 1.0) * std::f64::consts::LN_2 + beta.ln() + nu * gamma.ln() + ln_gamma(nu + 1.5)
        - 0.5 * std::f64::consts::PI.ln()
        - (nu + 1.5) * (beta * beta + gamma * gamma).ln();
    log.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::rules::GaussRule;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn state_validation() {
        assert!(QuantumState::new(0, 0).is_err());
        assert!(QuantumState::new(3, 3).is_err());
        assert!(QuantumState::with_m(3, 1, 2).is_err());
        assert!(QuantumState::with_m(3, 2, -2).is_ok());
        assert_eq!(QuantumState::all_up_to(6).count(), 21);
    }

    #[test]
    fn scales_invariants() {
        let s = PhysicalScales::new(0.7, 1.3, 2.0, 0.0).unwrap();
        assert!((s.h() - 2.0 * std::f64::consts::PI * 1.3).abs() < 1e-15);
        for n in 1..10 {
            assert!((s.kappa(n) * n as f64 * 0.7 - 1.0).abs() < 1e-15);
        }
        assert!(PhysicalScales::new(-1.0, 1.0, 1.0, 0.0).is_err());
        assert!(PhysicalScales::new(1.0, 1.0, 1.0, -1e-3).is_err());
    }

    #[test]
    fn ground_state_closed_forms() {
        let s = QuantumState::new(1, 0).unwrap();
        let kappa: f64 = 0.8;
        for &k in &[0.0, 0.1, 0.8, 3.0] {
            let expect = 16.0 * std::f64::consts::PI * kappa.powf(2.5) / (k * k + kappa * kappa).powi(2);
            assert!(rel(momentum_radial(&s, kappa, k), expect) < 1e-14);
        }
        for &r in &[0.0, 0.5, 4.0] {
            let expect = 2.0 * kappa.powf(1.5) * (-kappa * r).exp();
            assert!(rel(position_radial(&s, kappa, r), expect) < 1e-14);
        }
    }

    #[test]
    fn momentum_endpoint_limit() {
        for s in QuantumState::all_up_to(6) {
            let v = momentum_radial(&s, 1.0, 0.0);
            if s.l() > 0 {
                assert_eq!(v, 0.0);
            } else {
                assert!(v.is_finite() && v != 0.0);
            }
        }
    }

    #[test]
    fn momentum_node_count() {
        for s in QuantumState::all_up_to(8) {
            let mut changes = 0;
            let mut prev = momentum_radial(&s, 1.0, 1e-3);
            // x(k) maps (0, inf) onto (-1, 1); sample uniformly in x
            for i in 1..4000 {
                let x = -1.0 + 2.0 * i as f64 / 4000.0;
                let k = ((1.0 + x) / (1.0 - x)).sqrt();
                let v = momentum_radial(&s, 1.0, k);
                if v * prev < 0.0 {
                    changes += 1;
                }
                if v != 0.0 {
                    prev = v;
                }
            }
            assert_eq!(changes, s.radial_degree(), "{s}");
        }
    }

    #[test]
    fn position_norm_by_gauss_laguerre() {
        // t = 2 kappa r: int R^2 r^2 dr = (1/(2kappa))^3 int e^{-t} [R e^{t/2}]^2 t^2 dt
        for s in QuantumState::all_up_to(8) {
            let kappa = 1.0 / s.n() as f64;
            let rule = GaussRule::laguerre(2 * s.n() as usize + 4, 0.0).unwrap();
            let scale = 1.0 / (2.0 * kappa);
            let v = rule.integrate(|t| {
                let r = t * scale;
                let rr = position_radial(&s, kappa, r) * (0.5 * t).exp();
                rr * rr * r * r
            }) * scale;
            assert!((v - 1.0).abs() < 1e-12, "{s}: {v}");
        }
    }

    #[test]
    fn laguerre_orthogonality() {
        let rule = GaussRule::laguerre(12, 3.0).unwrap();
        let v = rule.integrate(|t| laguerre_assoc(1, 3.0, t) * laguerre_assoc(2, 3.0, t));
        assert!(v.abs() < 1e-12);
        let rule = GaussRule::laguerre(12, 1.0).unwrap();
        let v = rule.integrate(|t| laguerre_assoc(2, 1.0, t).powi(2));
        assert!((v - 3.0).abs() < 1e-12);
    }

    #[test]
    fn generating_series_converges_to_closed_form() {
        let cases = [(0u32, 1.0, 0.5), (2, 2.0, -0.5), (1, 0.5, 0.5), (3, 1.5, -0.5)];
        for &(l, k, z) in &cases {
            let closed = generating_closed(l, 1.0, k, z).unwrap();
            let partial = generating_partial(l, 1.0, k, z, 60).unwrap();
            assert!(rel(partial, closed) < 1e-8, "l={l} k={k} z={z}: {partial} vs {closed}");
        }
    }

    #[test]
    fn generating_series_at_origin() {
        for l in 0..5u32 {
            let closed = generating_closed(l, 1.3, 0.7, 0.0).unwrap();
            let one = generating_partial(l, 1.3, 0.7, 0.0, 1).unwrap();
            let many = generating_partial(l, 1.3, 0.7, 0.0, 10).unwrap();
            assert_eq!(one, many);
            assert!(rel(one, closed) < 1e-13);
            let s = QuantumState::new(l + 1, l).unwrap();
            let direct = generating_weight(l, 0, 1.3) * momentum_radial(&s, 1.3, 0.7);
            assert!(rel(direct, closed) < 1e-13);
        }
        assert!(generating_closed(0, 1.0, 1.0, 1.0).is_err());
        assert!(generating_closed(0, 1.0, 1.0, 0.3).unwrap() > 0.0);
    }

    #[test]
    fn printed_generating_weight_fails() {
        let closed = generating_closed(0, 1.0, 1.0, 0.0).unwrap();
        let printed = generating_partial_as_printed(0, 1.0, 1.0, 0.0, 1).unwrap();
        assert!((printed / closed - 2.0).abs() < 1e-13);
        let closed = generating_closed(2, 1.0, 2.0, -0.5).unwrap();
        let printed = generating_partial_as_printed(2, 1.0, 2.0, -0.5, 60).unwrap();
        assert!(rel(printed, closed) > 0.1);
    }

    #[test]
    fn fourier_oracle_matches_closed_form() {
        let s = QuantumState::new(1, 0).unwrap();
        let v = fourier_oracle(&s, 1.0, 1.0).unwrap();
        let expect = 16.0 * std::f64::consts::PI / 4.0;
        assert!(rel(v, expect) < 1e-8);
        // (3,1) has a node at k = kappa; sample off it
        let s = QuantumState::new(3, 1).unwrap();
        let kappa = 1.0 / 3.0;
        for &k in &[kappa / 2.0, 0.7 * kappa, 3.0 * kappa] {
            let v = fourier_oracle(&s, kappa, k).unwrap();
            assert!(rel(v, momentum_radial(&s, kappa, k)) < 1e-8, "k={k}");
        }
        let s = QuantumState::new(6, 5).unwrap();
        let kappa = 1.0 / 6.0;
        let v = fourier_oracle(&s, kappa, kappa).unwrap();
        assert!(rel(v, momentum_radial(&s, kappa, kappa)) < 1e-6);
        assert!(fourier_oracle(&s, kappa, 0.0).is_err());
    }

    #[test]
    fn laplace_bessel_integral() {
        for l in 0..=5u32 {
            for &gamma in &[0.5, 1.0, 2.0] {
                let num = laplace_bessel_numeric(l, 1.0, gamma).unwrap();
                let closed = laplace_bessel_closed(l, 1.0, gamma);
                assert!(((num - closed) / closed).abs() < 1e-9, "l={l} gamma={gamma}: {num} vs {closed}");
            }
        }
    }
}
