//! Exact `<hbar kappa / P>_{nl}`.
//!
//! Every value is a rational multiple of `1/pi`. Three independent routes are
//! provided: the squared connection-coefficient sum, the compact alternating
//! sum, and closed forms for `l = 0`, `l = n-1` and `l = n-2`.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactnum::{harmonic_odd, int, ratio, BigRational, GammaMonomial, GammaTable, PiGraded};
use crate::quadrature::{ExpectationResult, Method};
use crate::specfun::gegenbauer_exact;
use crate::wavefun::QuantumState;

/// Coefficients re-expanding `C^{l+1}_{n-l-1}` in `C^{l+1/2}` (`beta`) and `C^{l+3/2}` (`gamma_c`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionCoefficient {
    pub j: u32,
    pub n: u32,
    pub l: u32,
    pub beta: BigRational,
    pub gamma_c: BigRational,
}

impl ConnectionCoefficient {
    /// Degree `n - l - 1 - 2j` of the target polynomial.
    pub fn degree(&self) -> u32 {
        self.n - self.l - 1 - 2 * self.j
    }
}

fn big(v: i64) -> BigRational {
    int(v)
}

fn rat(q: BigRational) -> GammaMonomial {
    GammaMonomial::rational(q)
}

/// `Gamma(lambda) C^lambda_N = sum_j (N - 2j + mu)/j! Gamma(lambda - mu + j) Gamma(N + lambda - j)
///  / (Gamma(lambda - mu) Gamma(N + mu - j + 1)) Gamma(mu) C^mu_{N-2j}` with
/// `lambda = l+1`, `N = n-l-1` and `mu = l+1/2` or `l+3/2`.
pub fn connection_coeffs(state: &QuantumState) -> Result<Vec<ConnectionCoefficient>> {
    connection_coeffs_with(state, &GammaTable::for_principal(state.n()))
}

pub fn connection_coeffs_with(state: &QuantumState, table: &GammaTable) -> Result<Vec<ConnectionCoefficient>> {
    let (n, l) = (state.n(), state.l());
    let sqrt_pi_ratio_l = rat(BigRational::one()) * &table.half_gamma(l) / &table.gamma_int(l + 1)?;
    let sqrt_pi_ratio_l1 = rat(BigRational::one()) * &table.half_gamma(l + 1) / &table.gamma_int(l + 1)?;
    let half0 = table.half_gamma(0).value_coeff;
    let mut out = Vec::new();
    for j in 0..=(n - l - 1) / 2 {
        let jf = table.factorial_rational(j);
        let beta = rat(ratio(2 * (n as i64 - 2 * j as i64) - 1, 2) / &jf)
            * sqrt_pi_ratio_l.clone()
            * rat(&table.half_gamma(j).value_coeff / &half0)
            * &table.gamma_int(n - j)?
            / &table.half_gamma(n - j);
        let gamma_c = rat(ratio(2 * (n as i64 - 2 * j as i64) + 1, 2) / &jf)
            * sqrt_pi_ratio_l1.clone()
            * rat(crate::exactnum::gamma_ratio_from_minus_half(j))
            * &table.gamma_int(n - j)?
            / &table.half_gamma(n - j + 1);
        out.push(ConnectionCoefficient {
            j,
            n,
            l,
            beta: beta.into_rational()?,
            gamma_c: gamma_c.into_rational()?,
        });
    }
    Ok(out)
}

fn falling(table: &GammaTable, top: u32, bottom: u32) -> BigRational {
    BigRational::new(table.factorial(top), table.factorial(bottom))
}

/// Sum over squared connection coefficients, before substituting them.
pub fn inv_p_series31(state: &QuantumState) -> Result<PiGraded> {
    let table = GammaTable::for_principal(state.n());
    let (n, l) = (state.n() as i64, state.l() as i64);
    let lf = table.factorial_rational(state.l());
    let hl = table.half_gamma(state.l()).value_coeff;
    // (Gamma(l+1)/Gamma(l+1/2))^2 = (l!/h_l)^2 / pi
    let ratio_sq = (&lf / &hl) * (&lf / &hl);
    let pref = falling(&table, (n - l - 1) as u32, (n + l) as u32) * big(2 * n) * ratio_sq;
    let mut sum = BigRational::from_integer(BigInt::from(0));
    for c in connection_coeffs_with(state, &table)? {
        let j = c.j as i64;
        let g = falling(&table, (n + l - 2 * j - 1) as u32, (n - l - 2 * j - 1) as u32);
        let first = big(2) * &c.beta * &c.beta / ratio(2 * (n - 2 * j) - 1, 2);
        let second = big((n + l - 2 * j) * (n + l + 1 - 2 * j)) * &c.gamma_c * &c.gamma_c
            / (big((2 * l + 1) * (2 * l + 1)) * ratio(2 * (n - 2 * j) + 1, 2));
        sum += g * (first - second);
    }
    PiGraded::new(pref * sum, -1)
}

/// Reduced single sum over `j = 0..=(n-l-1)/2` with integer and half-integer gammas.
pub fn inv_p_series32(state: &QuantumState) -> Result<PiGraded> {
    inv_p_series32_with(state, &GammaTable::for_principal(state.n()))
}

pub fn inv_p_series32_with(state: &QuantumState, table: &GammaTable) -> Result<PiGraded> {
    let (n, l) = (state.n() as i64, state.l() as i64);
    let pref = big(2 * n) * falling(table, (n - l - 1) as u32, (n + l) as u32);
    let mut sum = BigRational::from_integer(BigInt::from(0));
    for j in 0..=(n - l - 1) / 2 {
        let ju = j as u32;
        // Gamma(j+1/2) Gamma(n-j) / (Gamma(j+1) Gamma(n-j+1/2)); sqrt(pi) cancels
        let r = (rat(BigRational::one()) * &table.half_gamma(ju) * &table.gamma_int(n as u32 - ju)?
            / &table.gamma_int(ju + 1)?
            / &table.half_gamma(n as u32 - ju))
            .into_rational()?;
        let g = falling(table, (n + l - 2 * j - 1) as u32, (n - l - 2 * j - 1) as u32);
        let bracket = big(2 * n - 1 - 4 * j)
            - ratio((n + l - 2 * j) * (2 * n + 1 - 4 * j) * (n + l + 1 - 2 * j), 1)
                / big(2 * (2 * j - 1).pow(2) * (2 * n - 2 * j + 1).pow(2));
        sum += &r * &r * g * bracket;
    }
    PiGraded::new(pref * sum, -1)
}

/// Compact alternating sum over `j = 0..n-l-1`.
///
/// Evaluated as `t_0 (1 + r_0 (1 + r_1 (...)))` where each term ratio
/// `r_j = t_{j+1}/t_j` is a ratio of small integers, so the whole sum costs one
/// rational reduction.
pub fn inv_p_series39(state: &QuantumState) -> Result<PiGraded> {
    let table = GammaTable::new((2 * state.n() + 4) as usize);
    let (n, l) = (state.n() as i64, state.l() as i64);
    let lu = state.l();
    // t_0 = n (l+2) (n+l)! (l!)^2 / ((n-l-1)! (2l+1)! Gamma(l+3/2) Gamma(l+5/2))
    let lf = table.factorial(lu);
    let num = BigInt::from(n * (l + 2)) * table.factorial((n + l) as u32) * &lf * &lf;
    let den = table.factorial((n - l - 1) as u32) * table.factorial(2 * lu + 1);
    let t0 = BigRational::new(num, den)
        / (table.half_gamma(lu + 1).value_coeff * table.half_gamma(lu + 2).value_coeff);

    let terms = n - l;
    let mut acc_n = BigInt::one();
    let mut acc_d = BigInt::one();
    let (n, l) = (n as i128, l as i128);
    for j in (0..terms as i128 - 1).rev() {
        let p = -4 * (l + j + 3) * (n + l + j + 1) * (l + j + 1) * (l + j + 1) * (n - l - j - 1);
        let q = (l + j + 2) * (2 * l + j + 2) * (j + 1) * (2 * l + 2 * j + 3) * (2 * l + 2 * j + 5);
        let (p, q) = (BigInt::from(p), BigInt::from(q));
        acc_n = &q * &acc_d + p * acc_n;
        acc_d *= q;
    }
    PiGraded::new(t0 * BigRational::new(acc_n, acc_d), -1)
}

/// `(8/pi) [K_0(n) - n^2/(4n^2 - 1)]`, `K_0(n) = sum_{k=1}^n 1/(2k-1)`.
pub fn inv_p_swave(n: u32) -> Result<PiGraded> {
    if n == 0 {
        return Err(Error::InvalidState("principal quantum number must be >= 1".into()));
    }
    let nn = (n as i64) * (n as i64);
    let k0 = harmonic_odd(n)?;
    PiGraded::new(big(8) * (k0 - ratio(nn, 4 * nn - 1)), -1)
}

/// `Gamma(n) Gamma(n+2) / (Gamma(n+1/2) Gamma(n+3/2))` for `l = n-1`.
pub fn inv_p_circular(n: u32) -> Result<PiGraded> {
    if n == 0 {
        return Err(Error::InvalidState("principal quantum number must be >= 1".into()));
    }
    let t = GammaTable::new(n as usize + 2);
    (rat(BigRational::one()) * &t.gamma_int(n)? * &t.gamma_int(n + 2)? / &t.half_gamma(n) / &t.half_gamma(n + 1))
        .into_pi_graded()
}

/// `(n+2) Gamma(n-1) Gamma(n+1) / (Gamma(n-1/2) Gamma(n+3/2))` for `l = n-2`.
pub fn inv_p_near_circular(n: u32) -> Result<PiGraded> {
    if n < 2 {
        return Err(Error::InvalidState(format!("l = n-2 needs n >= 2, got n = {n}")));
    }
    let t = GammaTable::new(n as usize + 2);
    (rat(big(n as i64 + 2)) * &t.gamma_int(n - 1)? * &t.gamma_int(n + 1)? / &t.half_gamma(n - 1)
        / &t.half_gamma(n + 1))
        .into_pi_graded()
}

/// Exact `<hbar kappa / P>`: closed form for `l` in `{0, n-1, n-2}`, otherwise
/// the compact series.
pub fn inv_p(state: &QuantumState) -> Result<ExpectationResult> {
    let (n, l) = (state.n(), state.l());
    let (value, method) = if l == 0 {
        (inv_p_swave(n)?, Method::ClosedForm)
    } else if l + 1 == n {
        (inv_p_circular(n)?, Method::ClosedForm)
    } else if l + 2 == n {
        (inv_p_near_circular(n)?, Method::ClosedForm)
    } else {
        (inv_p_series39(state)?, Method::Series39)
    };
    Ok(ExpectationResult::exact(value, method))
}

/// `<2 pi hbar kappa / P>`, the rational tabulated quantity.
pub fn table_entry(state: &QuantumState) -> Result<BigRational> {
    let v = inv_p(state)?.exact.expect("inv_p is always exact");
    Ok(v.coefficient() * big(2))
}

/// Largest exact residual of both connection expansions on `x = i/half - 1`, `i = 0..=2 half`.
pub fn reconstruction_residual(state: &QuantumState, half: u32) -> Result<BigRational> {
    if half == 0 {
        return Err(Error::InvalidArgument("grid needs at least one interval".into()));
    }
    let l = state.l() as i64;
    let coeffs = connection_coeffs(state)?;
    let (mu1, mu2, lam) = (ratio(2 * l + 1, 2), ratio(2 * l + 3, 2), big(l + 1));
    let mut worst = BigRational::from_integer(0.into());
    for i in 0..=2 * half as i64 {
        let x = ratio(i - half as i64, half as i64);
        let target = gegenbauer_exact(state.radial_degree() as i64, &lam, &x);
        let mut b = -target.clone();
        let mut g = -target;
        for c in &coeffs {
            b += &c.beta * gegenbauer_exact(c.degree() as i64, &mu1, &x);
            g += &c.gamma_c * gegenbauer_exact(c.degree() as i64, &mu2, &x);
        }
        worst = worst.max(b.abs()).max(g.abs());
    }
    Ok(worst)
}
