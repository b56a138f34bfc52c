//! Gauss rules from three-term recurrences (Golub-Welsch).

use crate::error::{Error, Result};
use crate::specfun::ln_gamma;

/// Nodes and weights of an `n`-point Gauss rule for a weight `w(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Gauss-Legendre on `[-1, 1]`.
    pub fn legendre(n: usize) -> Result<Self> {
        Self::jacobi(n, 0.0, 0.0)
    }

    /// Gauss-Jacobi for `(1-x)^alpha (1+x)^beta` on `[-1, 1]`.
    pub fn jacobi(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0 && beta > -1.0) {
            return Err(Error::InvalidArgument(format!(
                "Jacobi exponents must exceed -1, got ({alpha}, {beta})"
            )));
        }
        let ab = alpha + beta;
        let mut a = Vec::with_capacity(n + 1);
        let mut b = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let kf = k as f64;
            let s = 2.0 * kf + ab;
            a.push(if k == 0 {
                (beta - alpha) / (ab + 2.0)
            } else {
                (beta * beta - alpha * alpha) / (s * (s + 2.0))
            });
            b.push(match k {
                0 => 0.0,
                1 => 4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0).powi(2) * (ab + 3.0)),
                _ => 4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0)),
            });
        }
        let mu0 = ((ab + 1.0) * std::f64::consts::LN_2 + ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0)
            - ln_gamma(ab + 2.0))
        .exp();
        Self::from_recurrence(&a, &b, mu0)
    }

    /// Generalized Gauss-Laguerre for `x^alpha e^{-x}` on `[0, inf)`.
    pub fn laguerre(n: usize, alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) {
            return Err(Error::InvalidArgument(format!(
                "Laguerre exponent must exceed -1, got {alpha}"
            )));
        }
        let a: Vec<f64> = (0..=n).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
        let b: Vec<f64> = (0..=n).map(|k| k as f64 * (k as f64 + alpha)).collect();
        Self::from_recurrence(&a, &b, ln_gamma(alpha + 1.0).exp())
    }

    /// Builds the rule from monic recurrence coefficients
    /// `p_{k+1} = (x - a_k) p_k - b_k p_{k-1}`, given for `k = 0..=n`.
    fn from_recurrence(a: &[f64], b: &[f64], mu0: f64) -> Result<Self> {
        let n = a.len() - 1;
        if n == 0 {
            return Err(Error::InvalidArgument("a Gauss rule needs at least one node".into()));
        }
        let mut diag = a[..n].to_vec();
        let mut off: Vec<f64> = (1..n).map(|k| b[k].sqrt()).collect();
        off.push(0.0);
        symmetric_tridiagonal_eigenvalues(&mut diag, &mut off)?;
        diag.sort_by(|x, y| x.total_cmp(y));

        let sb: Vec<f64> = b.iter().map(|v| v.sqrt()).collect();
        let p0 = 1.0 / mu0.sqrt();
        // orthonormal values p_0..p_{n-1}, plus p_n and its derivative
        let eval = |x: f64| {
            let (mut prev, mut cur) = (0.0, p0);
            let (mut dprev, mut dcur) = (0.0, 0.0);
            let mut sum_sq = p0 * p0;
            for k in 0..n {
                let next = ((x - a[k]) * cur - sb[k] * prev) / sb[k + 1];
                let dnext = (cur + (x - a[k]) * dcur - sb[k] * dprev) / sb[k + 1];
                prev = cur;
                cur = next;
                dprev = dcur;
                dcur = dnext;
                if k + 1 < n {
                    sum_sq += cur * cur;
                }
            }
            (cur, dcur, sum_sq)
        };

        let mut weights = Vec::with_capacity(n);
        for x in diag.iter_mut() {
            for _ in 0..3 {
                let (p, dp, _) = eval(*x);
                if !(p.is_finite() && dp.is_finite()) || dp == 0.0 {
                    break;
                }
                let step = p / dp;
                if step.abs() > 1e-6 * (1.0 + x.abs()) {
                    break;
                }
                *x -= step;
                if step.abs() <= f64::EPSILON * x.abs() {
                    break;
                }
            }
            let (_, _, sum_sq) = eval(*x);
            weights.push(if sum_sq.is_finite() { 1.0 / sum_sq } else { 0.0 });
        }
        Ok(Self { nodes: diag, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum_i w_i f(x_i)`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Returns `(sum w_i f(x_i), sum |w_i f(x_i)|)`.
    pub fn integrate_with_magnitude(&self, f: impl Fn(f64) -> f64) -> (f64, f64) {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold((0.0, 0.0), |(s, m), (&x, &w)| {
                let v = w * f(x);
                if w == 0.0 {
                    (s, m)
                } else {
                    (s + v, m + v.abs())
                }
            })
    }

    /// Gauss-Legendre rule mapped to `[lo, hi]`.
    pub fn mapped(&self, lo: f64, hi: f64) -> Self {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        Self {
            nodes: self.nodes.iter().map(|x| mid + half * x).collect(),
            weights: self.weights.iter().map(|w| w * half).collect(),
        }
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with
/// Wilkinson shifts. `off[i]` couples rows `i` and `i+1`; its last entry is
/// scratch. Eigenvalues overwrite `diag`.
pub(crate) fn symmetric_tridiagonal_eigenvalues(diag: &mut [f64], off: &mut [f64]) -> Result<()> {
    let n = diag.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::InternalFault("tridiagonal QL iteration did not converge".into()));
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}
