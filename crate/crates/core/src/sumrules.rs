//! Sum rules over `l`, the `J_n` integrals, and the Gegenbauer addition theorem.

use std::f64::consts::PI;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{int, ratio, BigRational, PiGraded, PiSum};
use crate::invp::inv_p;
use crate::quadrature::{ExpectationResult, GaussRule, Method};
use crate::specfun::{chebyshev_u, digamma_difference, gegenbauer, legendre_p, ln_gamma};
use crate::wavefun::QuantumState;

fn exact_inv_p(n: u32, l: u32) -> Result<PiGraded> {
    Ok(inv_p(&QuantumState::new(n, l)?)?
        .exact
        .expect("inv_p is always exact"))
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidState("principal quantum number must be >= 1".into()));
    }
    Ok(())
}

/// `sum_l (2l+1) <hbar kappa/P>_{nl}` and `16 n^2 / (3 pi)`.
pub fn sum_rule_even(n: u32) -> Result<(PiGraded, PiGraded)> {
    check_n(n)?;
    let mut lhs = PiGraded::zero(-1)?;
    for l in 0..n {
        lhs = lhs.checked_add(&exact_inv_p(n, l)?.scale(&int(2 * l as i64 + 1)))?;
    }
    let nn = n as i64 * n as i64;
    Ok((lhs, PiGraded::new(ratio(16 * nn, 3), -1)?))
}

/// `J_n = int_{-1}^{1} U_n(2x^2 - 1) dx` from
/// `2 J_n = psi(n/2 + 5/4) - psi(n/2 + 3/4) + (-1)^n pi`; `J_{-1} = 0`.
///
/// The `pi` terms cancel, so the result always has only a rational part.
pub fn j_integral(n: i64) -> Result<PiSum> {
    if n < -1 {
        return Err(Error::InvalidArgument(format!("J_n is defined for n >= -1, got {n}")));
    }
    if n == -1 {
        return Ok(PiSum::zero());
    }
    let half_n = ratio(n, 2);
    let diff = digamma_difference(&(&half_n + ratio(5, 4)), &(&half_n + ratio(3, 4)))?;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let total = diff.add(&PiSum::monomial(int(sign), 1));
    Ok(total.scale(&ratio(1, 2)))
}

/// `J_n` from `J_0 = 2` and `J_n + J_{n-1} = 2/(2n+1)`.
pub fn j_integral_recurrence(n: i64) -> Result<BigRational> {
    if n < -1 {
        return Err(Error::InvalidArgument(format!("J_n is defined for n >= -1, got {n}")));
    }
    let mut j = BigRational::zero();
    for k in 0..=n {
        j = ratio(2, 2 * k + 1) - j;
    }
    Ok(j)
}

/// `J_n` by Gauss-Legendre (exact for the polynomial integrand).
pub fn j_integral_numeric(n: i64) -> Result<f64> {
    if n < -1 {
        return Err(Error::InvalidArgument(format!("J_n is defined for n >= -1, got {n}")));
    }
    let rule = GaussRule::legendre(n.max(0) as usize + 2)?;
    Ok(rule.integrate(|x| chebyshev_u(n, 2.0 * x * x - 1.0)))
}

fn require_single(sum: PiSum) -> Result<PiGraded> {
    sum.as_single_grade()
        .ok_or_else(|| Error::InternalFault(format!("expected a single pi grade, got {sum}")))
}

/// `sum_l (2l+1)(-1)^l <hbar kappa/P>_{nl}`.
pub fn alternating_lhs(n: u32) -> Result<PiGraded> {
    check_n(n)?;
    let mut lhs = PiGraded::zero(-1)?;
    for l in 0..n {
        let sign = if l % 2 == 0 { 1 } else { -1 };
        lhs = lhs.checked_add(&exact_inv_p(n, l)?.scale(&int(sign * (2 * l as i64 + 1))))?;
    }
    Ok(lhs)
}

/// `(n/pi) [4n/(4n^2-1) + psi(a + 1/2) - psi(a) + (-1)^(n-1) pi]`.
fn alternating_rhs_at(n: u32, a: BigRational) -> Result<PiSum> {
    let nn = n as i64;
    let diff = digamma_difference(&(&a + ratio(1, 2)), &a)?;
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let bracket = diff
        .add(&PiSum::rational(ratio(4 * nn, 4 * nn * nn - 1)))
        .add(&PiSum::monomial(int(sign), 1));
    Ok(bracket.scale(&int(nn)).times_pi_power(-1))
}

/// Alternating sum rule: the exact left side and the right side with
/// digamma arguments `n/2 + 3/4`, `n/2 + 1/4`.
pub fn sum_rule_alternating(n: u32) -> Result<(PiGraded, PiGraded)> {
    let lhs = alternating_lhs(n)?;
    let rhs = require_single(alternating_rhs_at(n, ratio(n as i64, 2) + ratio(1, 4))?)?;
    Ok((lhs, rhs))
}

/// The right side with arguments `n + 3/4`, `n + 1/4`, as typeset. Generally
/// mixes grades 0 and -1.
pub fn sum_rule_alternating_as_printed(n: u32) -> Result<PiSum> {
    check_n(n)?;
    alternating_rhs_at(n, int(n as i64) + ratio(1, 4))
}

/// `(n / 2 pi)(J_n + 6 J_{n-1} + J_{n-2})`.
pub fn alternating_via_j(n: u32) -> Result<PiGraded> {
    check_n(n)?;
    let nn = n as i64;
    let s = j_integral(nn)?
        .add(&j_integral(nn - 1)?.scale(&int(6)))
        .add(&j_integral(nn - 2)?);
    require_single(s.scale(&ratio(nn, 2)).times_pi_power(-1))
}

/// `(2n/pi) int (1+x^2) U_{n-1}(2x^2 - 1) dx` by Gauss-Legendre.
pub fn alternating_integral_numeric(n: u32) -> Result<f64> {
    check_n(n)?;
    let rule = GaussRule::legendre(n as usize + 2)?;
    let v = rule.integrate(|x| (1.0 + x * x) * chebyshev_u(n as i64 - 1, 2.0 * x * x - 1.0));
    Ok(2.0 * n as f64 / PI * v)
}

/// `F(y) = (2n/pi) int (1+x^2) U_{n-1}(x^2 + (1-x^2) y) dx`, which equals
/// `sum_l (2l+1) P_l(y) <hbar kappa/P>_{nl}`.
pub fn legendre_generating(n: u32, y: f64, rule: &GaussRule) -> f64 {
    let v = rule.integrate(|x| {
        let x2 = x * x;
        (1.0 + x2) * chebyshev_u(n as i64 - 1, x2 + (1.0 - x2) * y)
    });
    2.0 * n as f64 / PI * v
}

/// `<hbar kappa/P>_{nl}` as the `l`-th Legendre coefficient of `F(y)`:
/// `(1/2) int P_l(y) F(y) dy`.
pub fn legendre_projection(state: &QuantumState) -> Result<ExpectationResult> {
    let (n, l) = (state.n(), state.l());
    let eval = |m: usize| -> Result<f64> {
        let rx = GaussRule::legendre(m)?;
        let ry = GaussRule::legendre(m)?;
        Ok(0.5 * ry.integrate(|y| legendre_p(l, y) * legendre_generating(n, y, &rx)))
    };
    let m = n as usize + 4;
    let coarse = eval(m)?;
    let fine = eval(m + m / 2 + 1)?;
    Ok(ExpectationResult {
        value: fine,
        exact: None,
        method: Method::Quadrature,
        err_estimate: (fine - coarse).abs() + 64.0 * f64::EPSILON * fine.abs(),
    })
}

/// `|lhs - rhs|` of
/// `C^1_{n-1}(cos^2 t + sin^2 t cos psi) = sum_l (2l+1)(l!)^2 (n-l-1)!/(n+l)! (2 sin t)^(2l)
///  [C^{l+1}_{n-l-1}(cos t)]^2 P_l(cos psi)`.
pub fn addition_identity_check(n: u32, theta: f64, psi: f64) -> Result<f64> {
    check_n(n)?;
    for (name, v) in [("theta", theta), ("psi", psi)] {
        if !(0.0..=PI).contains(&v) {
            return Err(Error::InvalidArgument(format!("{name} must lie in [0, pi], got {v}")));
        }
    }
    let (s, c) = theta.sin_cos();
    let cp = psi.cos();
    let lhs = gegenbauer(n as i64 - 1, 1.0, c * c + s * s * cp);
    let mut rhs = 0.0;
    for l in 0..n {
        let lf = l as f64;
        let weight =
            (2.0 * lf + 1.0) * (2.0 * ln_gamma(lf + 1.0) + ln_gamma((n - l) as f64) - ln_gamma((n + l) as f64 + 1.0)).exp();
        let g = gegenbauer((n - l - 1) as i64, lf + 1.0, c);
        rhs += weight * (2.0 * s).powi(2 * l as i32) * g * g * legendre_p(l, cp);
    }
    Ok((lhs - rhs).abs())
}

/// Both sides of
/// `int (1+x)^2 U_{n-1}(x^2 + (1-x^2) c) dx = (pi/2n) sum_l (2l+1) P_l(c) <hbar kappa/P>_{nl}`,
/// the left by quadrature and the right from exact values.
pub fn projected_addition_sides(n: u32, cos_psi: f64) -> Result<(f64, f64)> {
    check_n(n)?;
    let rule = GaussRule::legendre(n as usize + 4)?;
    let lhs = rule.integrate(|x| {
        let x2 = x * x;
        (1.0 + x).powi(2) * chebyshev_u(n as i64 - 1, x2 + (1.0 - x2) * cos_psi)
    });
    let mut rhs = 0.0;
    for l in 0..n {
        rhs += (2 * l + 1) as f64 * legendre_p(l, cos_psi) * exact_inv_p(n, l)?.to_f64();
    }
    Ok((lhs, PI / (2.0 * n as f64) * rhs))
}
