use std::f64::consts::{FRAC_PI_2, LN_2, PI};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::PiGraded;
use crate::specfun::{chebyshev_u, gegenbauer, legendre_p, ln_gamma};
use crate::wavefun::{momentum_radial, QuantumState};

use super::adaptive::{integrate, Tolerance};
use super::rules::GaussRule;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rule {
    GaussLegendre,
    GaussJacobi { alpha: f64, beta: f64 },
    GaussLaguerre { alpha: f64 },
    /// Gauss-Jacobi whose exponents absorb the integrand's endpoint behavior.
    MatchedJacobi,
    AdaptivePanels,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Substitution {
    /// `x = (k^2 - kappa^2)/(k^2 + kappa^2)` on `[-1, 1]`.
    XVariable,
    /// `k = kappa tan(theta)` on `[0, pi/2]`.
    ThetaVariable,
    /// `k = kappa t/(1-t)` on `[0, 1]`, straight from the momentum wavefunction.
    KVariable,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rule: Rule,
    pub nodes: usize,
    pub rel_tol: f64,
    pub substitution: Substitution,
}

impl QuadratureSpec {
    pub fn new(rule: Rule, nodes: usize, rel_tol: f64, substitution: Substitution) -> Result<Self> {
        if nodes < 2 {
            return Err(Error::InvalidArgument(format!("need at least 2 nodes, got {nodes}")));
        }
        if !(rel_tol >= 1e-14) {
            return Err(Error::InvalidArgument(format!("rel_tol must be >= 1e-14, got {rel_tol}")));
        }
        match rule {
            Rule::GaussJacobi { alpha, beta } if !(alpha > -1.0 && beta > -1.0) => {
                return Err(Error::InvalidArgument(format!(
                    "Jacobi exponents must exceed -1, got ({alpha}, {beta})"
                )))
            }
            Rule::GaussLaguerre { alpha } if !(alpha > -1.0) => {
                return Err(Error::InvalidArgument(format!(
                    "Laguerre exponent must exceed -1, got {alpha}"
                )))
            }
            _ => {}
        }
        Ok(Self {
            rule,
            nodes,
            rel_tol,
            substitution,
        })
    }

    /// Default node count `64 + 8n`.
    pub fn default_nodes(state: &QuantumState) -> usize {
        64 + 8 * state.n() as usize
    }

    /// Matched Gauss-Jacobi in `x` with the default node count.
    pub fn for_state(state: &QuantumState) -> Self {
        Self {
            rule: Rule::MatchedJacobi,
            nodes: Self::default_nodes(state),
            rel_tol: 1e-12,
            substitution: Substitution::XVariable,
        }
    }

    pub fn theta(rel_tol: f64) -> Result<Self> {
        Self::new(Rule::AdaptivePanels, 15, rel_tol, Substitution::ThetaVariable)
    }

    pub fn k_variable(rel_tol: f64) -> Result<Self> {
        Self::new(Rule::AdaptivePanels, 15, rel_tol, Substitution::KVariable)
    }

    fn tolerance(&self) -> Tolerance {
        Tolerance {
            abs: 0.0,
            rel: self.rel_tol,
            max_intervals: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Series32,
    Series39,
    Quadrature,
    DoubleIntegral,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Series32 => "series32",
            Method::Series39 => "series39",
            Method::Quadrature => "quadrature",
            Method::DoubleIntegral => "double_integral",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "closed_form" | "closed-form" => Method::ClosedForm,
            "series32" => Method::Series32,
            "series39" => Method::Series39,
            "quadrature" => Method::Quadrature,
            "double_integral" | "double-integral" => Method::DoubleIntegral,
            _ => return Err(Error::Parse(format!("unknown method '{s}'"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationResult {
    pub value: f64,
    pub exact: Option<PiGraded>,
    pub method: Method,
    pub err_estimate: f64,
}

impl ExpectationResult {
    pub fn exact(value: PiGraded, method: Method) -> Self {
        let v = value.to_f64();
        Self {
            value: v,
            err_estimate: 4.0 * f64::EPSILON * v.abs(),
            exact: Some(value),
            method,
        }
    }
}

/// A function of the dimensionless momentum `u = p / (hbar kappa)`.
#[derive(Clone)]
pub enum MomentumFunction {
    One,
    /// `hbar kappa / p`
    InvP,
    /// `p / hbar kappa`
    P,
    /// `(p / hbar kappa)^2`
    P2,
    /// `(p / hbar kappa)^s`
    Power(f64),
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for MomentumFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentumFunction::Custom(_) => f.write_str("Custom(..)"),
            other => write!(f, "Power({})", other.power().unwrap_or(f64::NAN)),
        }
    }
}

impl MomentumFunction {
    pub fn custom(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        MomentumFunction::Custom(Arc::new(f))
    }

    pub fn power(&self) -> Option<f64> {
        match self {
            MomentumFunction::One => Some(0.0),
            MomentumFunction::InvP => Some(-1.0),
            MomentumFunction::P => Some(1.0),
            MomentumFunction::P2 => Some(2.0),
            MomentumFunction::Power(s) => Some(*s),
            MomentumFunction::Custom(_) => None,
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        match self {
            MomentumFunction::One => 1.0,
            MomentumFunction::InvP => 1.0 / u,
            MomentumFunction::P => u,
            MomentumFunction::P2 => u * u,
            MomentumFunction::Power(s) => u.powf(*s),
            MomentumFunction::Custom(f) => f(u),
        }
    }
}

/// Endpoint exponents `(x -> 1, x -> -1)` of the x-form integrand for `p^s`.
pub fn moment_exponents(l: u32, s: f64) -> (f64, f64) {
    let l = l as f64;
    (l + 1.5 - 0.5 * s, l + 0.5 + 0.5 * s)
}

/// Rejects `p^s` moments whose integral diverges at either end.
pub fn check_moment(l: u32, s: f64) -> Result<()> {
    let (upper, lower) = moment_exponents(l, s);
    if upper <= -1.0 || lower <= -1.0 || !s.is_finite() {
        return Err(Error::DivergentMoment {
            power: s,
            l,
            upper,
            lower,
        });
    }
    Ok(())
}

/// `2 n (n-l-1)! (2^l l!)^2 / (pi (n+l)!)`
pub fn x_form_prefactor(state: &QuantumState) -> f64 {
    let (n, l) = (state.n() as f64, state.l() as f64);
    (LN_2 + n.ln() + ln_gamma(n - l) + 2.0 * (l * LN_2 + ln_gamma(l + 1.0)) - PI.ln() - ln_gamma(n + l + 1.0)).exp()
}

fn gegenbauer_sq(state: &QuantumState, x: f64) -> f64 {
    let c = gegenbauer(state.radial_degree() as i64, state.l() as f64 + 1.0, x);
    c * c
}

/// Runs a Gauss rule at `N` and `ceil(1.5 N)` nodes.
fn nested_gauss(
    build: impl Fn(usize) -> Result<GaussRule>,
    nodes: usize,
    rel_tol: f64,
    f: impl Fn(f64) -> f64,
) -> Result<(f64, f64)> {
    let coarse = build(nodes)?.integrate_with_magnitude(&f);
    let fine_n = (3 * nodes).div_ceil(2);
    let (fine, mag) = build(fine_n)?.integrate_with_magnitude(&f);
    let err = (fine - coarse.0).abs() + 16.0 * f64::EPSILON * mag;
    if !fine.is_finite() || err > rel_tol * fine.abs().max(f64::MIN_POSITIVE) {
        return Err(Error::NonConvergence {
            estimate: fine,
            error: err,
            requested: rel_tol,
        });
    }
    Ok((fine, err))
}

fn quadrature_result(value: f64, err: f64) -> ExpectationResult {
    ExpectationResult {
        value,
        exact: None,
        method: Method::Quadrature,
        err_estimate: err,
    }
}

/// Numeric `<f(P)>_{nl}` for a function of `u = p / (hbar kappa)`.
pub fn expectation_f(state: &QuantumState, f: &MomentumFunction, spec: &QuadratureSpec) -> Result<ExpectationResult> {
    if let Some(s) = f.power() {
        check_moment(state.l(), s)?;
    }
    match spec.substitution {
        Substitution::XVariable => x_form(state, f, spec),
        Substitution::ThetaVariable => theta_form(state, f, spec),
        Substitution::KVariable => k_form(state, f, spec),
    }
}

fn x_form(state: &QuantumState, f: &MomentumFunction, spec: &QuadratureSpec) -> Result<ExpectationResult> {
    let l = state.l() as f64;
    let c = x_form_prefactor(state);
    // weight (1-x)^A (1+x)^B times C^2, with the power of u folded in when known
    let (a, b, power) = match f.power() {
        Some(s) => {
            let (a, b) = moment_exponents(state.l(), s);
            (a, b, Some(s))
        }
        None => (l + 1.5, l + 0.5, None),
    };
    let remainder = |x: f64| {
        let base = gegenbauer_sq(state, x);
        match power {
            Some(_) => base,
            None => base * f.eval(((1.0 + x) / (1.0 - x)).sqrt()),
        }
    };
    let full = |x: f64| (1.0 - x).powf(a) * (1.0 + x).powf(b) * remainder(x);
    let (value, err) = match spec.rule {
        Rule::MatchedJacobi => nested_gauss(|n| GaussRule::jacobi(n, a, b), spec.nodes, spec.rel_tol, remainder)?,
        Rule::GaussJacobi { alpha, beta } => nested_gauss(
            |n| GaussRule::jacobi(n, alpha, beta),
            spec.nodes,
            spec.rel_tol,
            |x| (1.0 - x).powf(a - alpha) * (1.0 + x).powf(b - beta) * remainder(x),
        )?,
        Rule::GaussLegendre => nested_gauss(GaussRule::legendre, spec.nodes, spec.rel_tol, full)?,
        Rule::AdaptivePanels => {
            let r = integrate(full, -1.0, 1.0, spec.tolerance())?;
            (r.value, r.error)
        }
        Rule::GaussLaguerre { .. } => {
            return Err(Error::InvalidArgument(
                "Gauss-Laguerre does not apply on the finite x interval".into(),
            ))
        }
    };
    Ok(quadrature_result(c * value, c * err))
}

fn theta_form(state: &QuantumState, f: &MomentumFunction, spec: &QuadratureSpec) -> Result<ExpectationResult> {
    let c = 2.0 * x_form_prefactor(state);
    let e = 2 * state.l() as i32 + 2;
    let integrand = |t: f64| {
        let c2 = (2.0 * t).cos();
        (2.0 * t).sin().powi(e) * (1.0 + c2) * gegenbauer_sq(state, c2) * f.eval(t.tan())
    };
    let (value, err) = match spec.rule {
        Rule::AdaptivePanels => {
            let r = integrate(integrand, 0.0, FRAC_PI_2, spec.tolerance())?;
            (r.value, r.error)
        }
        Rule::GaussLegendre => nested_gauss(
            |n| Ok(GaussRule::legendre(n)?.mapped(0.0, FRAC_PI_2)),
            spec.nodes,
            spec.rel_tol,
            integrand,
        )?,
        _ => {
            return Err(Error::InvalidArgument(
                "the theta form supports Gauss-Legendre or adaptive panels".into(),
            ))
        }
    };
    Ok(quadrature_result(c * value, c * err))
}

fn k_form(state: &QuantumState, f: &MomentumFunction, spec: &QuadratureSpec) -> Result<ExpectationResult> {
    if !matches!(spec.rule, Rule::AdaptivePanels) {
        return Err(Error::InvalidArgument("the k form uses adaptive panels".into()));
    }
    let integrand = |t: f64| {
        let s = 1.0 - t;
        let k = t / s;
        let p = momentum_radial(state, 1.0, k);
        p * p * k * k * f.eval(k) / (s * s)
    };
    let r = integrate(integrand, 0.0, 1.0, spec.tolerance())?;
    let norm = 1.0 / (8.0 * PI * PI * PI);
    Ok(quadrature_result(r.value * norm, r.error * norm))
}

/// Both numeric forms of `<hbar kappa / P>`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvPNumeric {
    /// Gauss-Jacobi with weight `(1-x^2)^l` on `[(1+x) C]^2`.
    pub x_form: ExpectationResult,
    /// Adaptive on `(sin 2t)^(2l+1) cos^4 t C^2(cos 2t)`.
    pub theta_form: ExpectationResult,
}

impl InvPNumeric {
    pub fn value(&self) -> f64 {
        self.x_form.value
    }
}

pub fn inv_p_numeric(state: &QuantumState, spec: &QuadratureSpec) -> Result<InvPNumeric> {
    let c = x_form_prefactor(state);
    let l = state.l() as f64;
    let (xv, xe) = nested_gauss(
        |n| GaussRule::jacobi(n, l, l),
        spec.nodes,
        spec.rel_tol,
        |x| (1.0 + x).powi(2) * gegenbauer_sq(state, x),
    )?;
    let e = 2 * state.l() as i32 + 1;
    let theta = integrate(
        |t: f64| (2.0 * t).sin().powi(e) * t.cos().powi(4) * gegenbauer_sq(state, (2.0 * t).cos()),
        0.0,
        FRAC_PI_2,
        spec.tolerance(),
    )?;
    let x_form = quadrature_result(c * xv, c * xe);
    let theta_form = quadrature_result(8.0 * c * theta.value, 8.0 * c * theta.error);
    let gap = (x_form.value - theta_form.value).abs();
    if gap > 10.0 * spec.rel_tol * x_form.value.abs() + x_form.err_estimate + theta_form.err_estimate {
        return Err(Error::InternalFault(format!(
            "x and theta forms disagree for {state}: {} vs {}",
            x_form.value, theta_form.value
        )));
    }
    Ok(InvPNumeric { x_form, theta_form })
}

/// `K_v(n) = int_0^{pi/2} sin^2(2 n t) cos^(2v+1) t / sin t dt` for `v` in `{0, 1}`.
pub fn knu_integral(nu: u32, n: u32, spec: &QuadratureSpec) -> Result<f64> {
    if nu > 1 {
        return Err(Error::InvalidArgument(format!("K_v is defined for v in {{0, 1}}, got {nu}")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("K_v(n) needs n >= 1".into()));
    }
    let e = 2 * nu as i32 + 1;
    let nf = n as f64;
    let r = integrate(
        |t: f64| (2.0 * nf * t).sin().powi(2) * t.cos().powi(e) / t.sin(),
        0.0,
        FRAC_PI_2,
        spec.tolerance(),
    )?;
    Ok(r.value)
}

/// `(n/pi) int int (1+x^2) P_l(y) U_{n-1}(x^2 + (1-x^2) y) dy dx` on `[-1,1]^2`
/// by tensor Gauss-Legendre.
pub fn double_integral_rep(state: &QuantumState, spec: &QuadratureSpec) -> Result<ExpectationResult> {
    let n = state.n();
    let l = state.l();
    let nx = spec.nodes.max(n as usize + 2);
    let ny = spec.nodes.max((n + l) as usize / 2 + 2);
    let eval = |nx: usize, ny: usize| -> Result<(f64, f64)> {
        let rx = GaussRule::legendre(nx)?;
        let ry = GaussRule::legendre(ny)?;
        let mut sum = 0.0;
        let mut mag = 0.0;
        for (&x, &wx) in rx.nodes.iter().zip(&rx.weights) {
            let x2 = x * x;
            let inner: f64 = ry
                .nodes
                .iter()
                .zip(&ry.weights)
                .map(|(&y, &wy)| {
                    let v = wy * legendre_p(l, y) * chebyshev_u(n as i64 - 1, x2 + (1.0 - x2) * y);
                    mag += (wx * (1.0 + x2) * v).abs();
                    v
                })
                .sum();
            sum += wx * (1.0 + x2) * inner;
        }
        Ok((sum, mag))
    };
    let (coarse, _) = eval(nx, ny)?;
    let (fine, mag) = eval((3 * nx).div_ceil(2), (3 * ny).div_ceil(2))?;
    let scale = n as f64 / PI;
    let err = ((fine - coarse).abs() + 16.0 * f64::EPSILON * mag) * scale;
    Ok(ExpectationResult {
        value: fine * scale,
        exact: None,
        method: Method::DoubleIntegral,
        err_estimate: err,
    })
}
