//! Large-`n` behavior of `<hbar kappa / P>`.

use std::f64::consts::PI;
use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::BigRational;
use crate::invp::{inv_p, inv_p_series39};
use crate::specfun::{digamma, EULER_GAMMA};
use crate::wavefun::QuantumState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    SWave,
    SmallEll,
    NearCircular,
    FixedLambda,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::SWave => "swave",
            Regime::SmallEll => "small_ell",
            Regime::NearCircular => "near_circular",
            Regime::FixedLambda => "fixed_lambda",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeEstimate {
    pub regime: Regime,
    pub estimate: f64,
    pub exact: f64,
    pub rel_error: f64,
}

impl RegimeEstimate {
    pub fn new(regime: Regime, estimate: f64, exact: f64) -> Self {
        Self {
            regime,
            estimate,
            exact,
            rel_error: (estimate / exact - 1.0).abs(),
        }
    }
}

fn exact_value(n: u32, l: u32) -> Result<f64> {
    Ok(inv_p(&QuantumState::new(n, l)?)?.value)
}

/// `(4/pi) [ln(4n) + gamma - 1/2 - 1/(12 n^2)]`.
pub fn swave_asymptotic(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidState("principal quantum number must be >= 1".into()));
    }
    let nf = n as f64;
    Ok(4.0 / PI * ((4.0 * nf).ln() + EULER_GAMMA - 0.5 - 1.0 / (12.0 * nf * nf)))
}

/// `4 psi(n + 1/2) / pi`, independent of `l`.
pub fn small_ell_asymptotic(n: u32, l: u32) -> Result<f64> {
    QuantumState::new(n, l)?;
    Ok(4.0 * digamma(n as f64 + 0.5)? / PI)
}

/// `1 + 3(2 delta + 1)/(4n)` for `l = n - 1 - delta`.
pub fn near_circular_asymptotic(n: u32, delta: u32) -> Result<f64> {
    if n < delta + 1 {
        return Err(Error::InvalidState(format!("need n >= delta + 1, got n = {n}, delta = {delta}")));
    }
    Ok(1.0 + 3.0 * (2 * delta + 1) as f64 / (4.0 * n as f64))
}

pub fn compare_swave(n: u32) -> Result<RegimeEstimate> {
    Ok(RegimeEstimate::new(Regime::SWave, swave_asymptotic(n)?, exact_value(n, 0)?))
}

pub fn compare_small_ell(n: u32, l: u32) -> Result<RegimeEstimate> {
    Ok(RegimeEstimate::new(Regime::SmallEll, small_ell_asymptotic(n, l)?, exact_value(n, l)?))
}

pub fn compare_near_circular(n: u32, delta: u32) -> Result<RegimeEstimate> {
    let est = near_circular_asymptotic(n, delta)?;
    Ok(RegimeEstimate::new(Regime::NearCircular, est, exact_value(n, n - 1 - delta)?))
}

/// Signed `exact - estimate` in the near-circular regime.
pub fn near_circular_error(n: u32, delta: u32) -> Result<f64> {
    let r = compare_near_circular(n, delta)?;
    Ok(r.exact - r.estimate)
}

/// Extrapolated large-`n` value of `<hbar kappa/P>` along `l = lambda (n-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaLimit {
    pub lambda: BigRational,
    pub estimate: f64,
    /// `|R2 - R1|` between the last two Richardson levels.
    pub uncertainty: f64,
    /// `(n, l, value)` at the three sampled points.
    pub samples: Vec<(u32, u32, f64)>,
}

impl LambdaLimit {
    pub fn as_estimate(&self) -> RegimeEstimate {
        let last = self.samples.last().map(|s| s.2).unwrap_or(f64::NAN);
        RegimeEstimate::new(Regime::FixedLambda, last, self.estimate)
    }
}

/// Uncertainty above which [`lambda_limit`] reports non-convergence.
pub const LAMBDA_LIMIT_TOLERANCE: f64 = 0.05;

/// Large-`n` limit at fixed `lambda = l/(n-1)` in `(0, 1)`.
///
/// Samples `m = n - 1` at `m0, 2 m0, 4 m0`, with `m0` the largest multiple of
/// the denominator of `lambda` such that `4 m0 <= n_max - 1`, so that `l` is
/// always an exact integer. Two rounds of Richardson extrapolation remove the
/// `1/m` and `1/m^2` terms.
pub fn lambda_limit(lambda: &BigRational, n_max: u32) -> Result<LambdaLimit> {
    if !(lambda.is_positive() && lambda < &BigRational::from_integer(1.into())) {
        return Err(Error::InvalidArgument(format!("lambda must lie in (0, 1), got {lambda}")));
    }
    let q = lambda
        .denom()
        .to_u32()
        .ok_or_else(|| Error::InvalidArgument(format!("lambda denominator too large: {lambda}")))?;
    let m0 = (n_max.saturating_sub(1) / (4 * q)) * q;
    if m0 == 0 {
        return Err(Error::InvalidArgument(format!(
            "n_max = {n_max} is too small to sample lambda = {lambda}"
        )));
    }
    let mut samples = Vec::with_capacity(3);
    for m in [m0, 2 * m0, 4 * m0] {
        let l_exact = lambda * BigRational::from_integer(m.into());
        debug_assert!(l_exact.denom() == &1.into());
        let l = l_exact.to_integer().to_u32().expect("l fits in u32");
        let v = inv_p_series39(&QuantumState::new(m + 1, l)?)?.to_f64();
        samples.push((m + 1, l, v));
    }
    let v: Vec<f64> = samples.iter().map(|s| s.2).collect();
    let r1a = 2.0 * v[1] - v[0];
    let r1b = 2.0 * v[2] - v[1];
    let r2 = (4.0 * r1b - r1a) / 3.0;
    let uncertainty = (r2 - r1b).abs();
    if !(uncertainty <= LAMBDA_LIMIT_TOLERANCE) {
        return Err(Error::NonConvergence {
            estimate: r2,
            error: uncertainty,
            requested: LAMBDA_LIMIT_TOLERANCE,
        });
    }
    Ok(LambdaLimit {
        lambda: lambda.clone(),
        estimate: r2,
        uncertainty,
        samples,
    })
}

/// Least-squares fit `value ~ a + b ln(1/lambda)`, returning `(a, b)`.
pub fn fit_log_coefficient(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 2 {
        return Err(Error::InvalidArgument("need at least two points to fit".into()));
    }
    let xs: Vec<f64> = points.iter().map(|p| (1.0 / p.0).ln()).collect();
    let k = points.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx.is_zero() {
        return Err(Error::InvalidArgument("fit needs distinct lambda values".into()));
    }
    let sxy: f64 = xs.iter().zip(points).map(|(x, p)| (x - mx) * (p.1 - my)).sum();
    let b = sxy / sxx;
    Ok((my - b * mx, b))
}

/// `(2 pi a n / h) (1 + 3/(4n))`, the large-`n` form of `<1/P>` for `l = n-1`.
pub fn circular_physical_asymptote(n: u32, bohr_radius: f64, h: f64) -> f64 {
    let nf = n as f64;
    2.0 * PI * bohr_radius * nf / h * (1.0 + 3.0 / (4.0 * nf))
}

/// `(8 pi a / h) (1 + 3/(4n))` as typeset; off from the exact large-`n`
/// behavior by a factor `4/n`.
pub fn circular_physical_asymptote_as_printed(n: u32, bohr_radius: f64, h: f64) -> f64 {
    8.0 * PI * bohr_radius / h * (1.0 + 3.0 / (4.0 * n as f64))
}
