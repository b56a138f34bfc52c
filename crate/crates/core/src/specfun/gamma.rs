//! Gamma-family kernels: `ln gamma`, digamma (floating and exact), and the
//! two-term asymptotic gamma ratio.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{int, ratio, rational_to_f64, BigRational, PiSum};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln |gamma(x)|` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    if x >= 10.0 {
        let inv = 1.0 / x;
        let inv2 = inv * inv;
        let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
        return (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series;
    }
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).abs().ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// B_{2k} / (2k) for k = 1..=7.
const DIGAMMA_ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
];

/// Digamma `psi(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "digamma requires a positive finite argument, got {x}"
        )));
    }
    let mut shift = 0.0;
    let mut y = x;
    while y < 10.0 {
        shift += 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    let mut series = 0.0;
    let mut p = inv2;
    for c in DIGAMMA_ASYMPTOTIC {
        series += c * p;
        p *= inv2;
    }
    Ok(y.ln() - 0.5 / y - series - shift)
}

/// `gamma(z + a) / gamma(z + b) ~ z^(a-b) [1 + (a-b)(a+b-1)/(2z)]`.
///
/// The correction coefficient is the standard `(a-b)(a+b-1)/2`; the printed
/// `(a+b+1)` variant disagrees with a direct log-gamma evaluation (see tests).
pub fn gamma_ratio_asym(z: f64, a: f64, b: f64) -> f64 {
    if a == b {
        return 1.0;
    }
    z.powf(a - b) * (1.0 + (a - b) * (a + b - 1.0) / (2.0 * z))
}

/// Exact value of a digamma at a positive rational whose denominator
/// divides 4, as `rational + pi*c_pi + ln2*c_ln2 + gamma*c_euler`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigammaValue {
    pub rational: BigRational,
    pub pi: BigRational,
    pub ln2: BigRational,
    pub euler_gamma: BigRational,
}

impl DigammaValue {
    fn base(pi: BigRational, ln2: BigRational) -> Self {
        Self {
            rational: BigRational::zero(),
            pi,
            ln2,
            euler_gamma: int(-1),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            rational: &self.rational - &other.rational,
            pi: &self.pi - &other.pi,
            ln2: &self.ln2 - &other.ln2,
            euler_gamma: &self.euler_gamma - &other.euler_gamma,
        }
    }

    /// Drops to `rational + c*pi` when the `ln 2` and Euler terms vanish.
    pub fn into_pi_sum(self) -> Option<PiSum> {
        if self.ln2.is_zero() && self.euler_gamma.is_zero() {
            Some(PiSum::rational_plus_pi(self.rational, self.pi))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.rational)
            + rational_to_f64(&self.pi) * std::f64::consts::PI
            + rational_to_f64(&self.ln2) * std::f64::consts::LN_2
            + rational_to_f64(&self.euler_gamma) * EULER_GAMMA
    }
}

/// Exact reduction of `psi(x)` for `x` in `{k, k+1/2, k+1/4, k+3/4}`.
///
/// Starts from `psi(1) = -gamma`, `psi(1/2) = -gamma - 2 ln 2`,
/// `psi(1/4) = -gamma - pi/2 - 3 ln 2`, obtains `psi(3/4)` by reflection
/// `psi(1-x) - psi(x) = pi cot(pi x)`, then shifts with `psi(x+1) = psi(x) + 1/x`.
pub fn digamma_exact(x: &BigRational) -> Result<DigammaValue> {
    if !x.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "digamma requires a positive argument, got {x}"
        )));
    }
    let den = x.denom().to_u32().unwrap_or(0);
    if ![1, 2, 4].contains(&den) {
        return Err(Error::InvalidArgument(format!(
            "exact digamma is only reduced at quarter-integer arguments, got {x}"
        )));
    }
    let floor = x.numer().div_floor(x.denom());
    let frac = x - BigRational::from_integer(floor);
    let (base_arg, mut value) = if frac.is_zero() {
        (int(1), DigammaValue::base(BigRational::zero(), BigRational::zero()))
    } else if frac == ratio(1, 2) {
        (ratio(1, 2), DigammaValue::base(BigRational::zero(), int(-2)))
    } else if frac == ratio(1, 4) {
        (ratio(1, 4), DigammaValue::base(ratio(-1, 2), int(-3)))
    } else {
        let quarter = DigammaValue::base(ratio(-1, 2), int(-3));
        // psi(3/4) = psi(1/4) + pi cot(pi/4)
        let mut v = quarter;
        v.pi += BigRational::one();
        (ratio(3, 4), v)
    };
    let mut arg = base_arg;
    while &arg < x {
        value.rational += arg.recip();
        arg += BigRational::one();
    }
    debug_assert_eq!(&arg, x);
    Ok(value)
}

/// `psi(a) - psi(b)` as `rational + c*pi`, exact.
///
/// Defined when the `ln 2` and Euler terms cancel, i.e. both arguments are
/// integer-or-half classes alike, or both are quarter classes.
pub fn digamma_difference(a: &BigRational, b: &BigRational) -> Result<PiSum> {
    digamma_exact(a)?
        .sub(&digamma_exact(b)?)
        .into_pi_sum()
        .ok_or_else(|| {
            Error::InvalidArgument(format!(
                "psi({a}) - psi({b}) retains ln 2 or Euler-gamma terms"
            ))
        })
}
