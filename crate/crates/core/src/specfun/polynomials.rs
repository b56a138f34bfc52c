//! Classical orthogonal polynomials by forward three-term recurrence.
//!
//! Negative degrees evaluate to zero for every family.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{half_gamma, int, rational_to_f64, BigRational};

/// Gegenbauer `C_N^lambda(x)`.
///
/// `lambda == 0` is degenerate (every positive degree vanishes); use
/// [`PolynomialSpec`] for a checked entry point.
pub fn gegenbauer(degree: i64, lambda: f64, x: f64) -> f64 {
    if degree < 0 {
        return 0.0;
    }
    let mut prev = 1.0;
    if degree == 0 {
        return prev;
    }
    let mut cur = 2.0 * lambda * x;
    for k in 1..degree {
        let kf = k as f64;
        let next = (2.0 * (kf + lambda) * x * cur - (kf + 2.0 * lambda - 1.0) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Exact `C_N^lambda(x)` for rational `lambda` and `x`.
pub fn gegenbauer_exact(degree: i64, lambda: &BigRational, x: &BigRational) -> BigRational {
    if degree < 0 {
        return BigRational::zero();
    }
    let mut prev = BigRational::one();
    if degree == 0 {
        return prev;
    }
    let two = int(2);
    let mut cur = &two * lambda * x;
    for k in 1..degree {
        let kq = int(k);
        let next = (&two * (&kq + lambda) * x * &cur - (&kq + &two * lambda - BigRational::one()) * &prev)
            / (kq + BigRational::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// Chebyshev polynomial of the second kind `U_N(x)`; `U_{-1} = 0`.
pub fn chebyshev_u(degree: i64, x: f64) -> f64 {
    if degree < 0 {
        return 0.0;
    }
    let mut prev = 1.0;
    if degree == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for _ in 1..degree {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `U_{n-1}(z)` from its finite expansion in powers of `(1 - z)`,
/// `sqrt(pi) sum_j (-1)^j (n+j)! (1-z)^j / (j! (n-j-1)! 2^(j+1) gamma(j+3/2))`.
///
/// The coefficients are exact rationals (the `sqrt(pi)` cancels against
/// `gamma(j + 3/2)`) and `z` is taken at its exact binary value, so the only
/// rounding is the final conversion.
pub fn chebyshev_u_power_series(n: u32, z: f64) -> f64 {
    let Some(zq) = BigRational::from_float(z) else {
        return f64::NAN;
    };
    let t = BigRational::one() - zq;
    let mut sum = BigRational::zero();
    let mut t_pow = BigRational::one();
    for j in 0..n {
        let hg = half_gamma(j + 1).value_coeff;
        let mut coeff = BigRational::from_integer(crate::exactnum::factorial(n + j))
            / (BigRational::from_integer(crate::exactnum::factorial(j))
                * BigRational::from_integer(crate::exactnum::factorial(n - j - 1))
                * int(2).pow(j as i32 + 1)
                * hg);
        if j % 2 == 1 {
            coeff = -coeff;
        }
        sum += coeff * &t_pow;
        t_pow *= &t;
    }
    rational_to_f64(&sum)
}

/// Legendre polynomial `P_l(y)`.
pub fn legendre_p(degree: u32, y: f64) -> f64 {
    let mut prev = 1.0;
    if degree == 0 {
        return prev;
    }
    let mut cur = y;
    for k in 1..degree {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * y * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Associated Laguerre polynomial `L_N^alpha(x)`.
pub fn laguerre_assoc(degree: i64, alpha: f64, x: f64) -> f64 {
    if degree < 0 {
        return 0.0;
    }
    let mut prev = 1.0;
    if degree == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..degree {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Exact `L_N^alpha(x)`.
pub fn laguerre_assoc_exact(degree: i64, alpha: &BigRational, x: &BigRational) -> BigRational {
    if degree < 0 {
        return BigRational::zero();
    }
    let one = BigRational::one();
    let mut prev = one.clone();
    if degree == 0 {
        return prev;
    }
    let mut cur = &one + alpha - x;
    for k in 1..degree {
        let kq = int(k);
        let next = ((int(2 * k + 1) + alpha - x) * &cur - (&kq + alpha) * &prev) / (kq + &one);
        prev = cur;
        cur = next;
    }
    cur
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolynomialFamily {
    Gegenbauer,
    ChebyshevU,
    LegendreP,
    LaguerreAssoc,
}

/// A validated polynomial request.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialSpec {
    pub family: PolynomialFamily,
    pub degree: i64,
    /// lambda for Gegenbauer, alpha for Laguerre; ignored otherwise.
    pub parameter: BigRational,
}

impl PolynomialSpec {
    pub fn new(family: PolynomialFamily, degree: i64, parameter: BigRational) -> Result<Self> {
        if family == PolynomialFamily::Gegenbauer && parameter.is_zero() {
            return Err(Error::InvalidArgument(
                "Gegenbauer parameter lambda must be nonzero".into(),
            ));
        }
        Ok(Self {
            family,
            degree,
            parameter,
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let p = rational_to_f64(&self.parameter);
        match self.family {
            PolynomialFamily::Gegenbauer => gegenbauer(self.degree, p, x),
            PolynomialFamily::ChebyshevU => chebyshev_u(self.degree, x),
            PolynomialFamily::LegendreP => {
                if self.degree < 0 {
                    0.0
                } else {
                    legendre_p(self.degree as u32, x)
                }
            }
            PolynomialFamily::LaguerreAssoc => laguerre_assoc(self.degree, p, x),
        }
    }

    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        match self.family {
            PolynomialFamily::Gegenbauer => gegenbauer_exact(self.degree, &self.parameter, x),
            PolynomialFamily::ChebyshevU => gegenbauer_exact(self.degree, &int(1), x),
            PolynomialFamily::LegendreP => gegenbauer_exact(self.degree, &crate::exactnum::ratio(1, 2), x),
            PolynomialFamily::LaguerreAssoc => laguerre_assoc_exact(self.degree, &self.parameter, x),
        }
    }
}
