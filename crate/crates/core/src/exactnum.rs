//! Exact scalar algebra.
//!
//! Everything here is built on [`BigRational`], which is always kept in lowest
//! terms with a positive denominator. Three carriers sit on top of it:
//!
//! * [`PiGraded`]: `q * pi^k` with `k` in `-1..=1`. Expectation values and the
//!   sides of the sum rules live here, so a units slip becomes a grade error.
//! * [`PiSum`]: a finite sum of such monomials (any integer grade). Used where
//!   intermediate expressions mix `pi^0` and `pi^1`, e.g. digamma differences.
//! * [`HalfGamma`] / [`GammaMonomial`]: gamma values at integer and
//!   half-integer arguments, with the `sqrt(pi)` factor tracked structurally.
//!
//! Written form of an exact value is `p/q`, optionally followed by `*pi^k`
//! for a nonzero grade. The denominator is always printed, including `/1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational;

/// `p/q` as a [`BigRational`].
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p))
}

/// `numer/denom` in lowest terms, denominator always written.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| Error::Parse(s.to_string()))?;
    let den: BigInt = den.parse().map_err(|_| Error::Parse(s.to_string()))?;
    if den.is_zero() {
        return Err(Error::Parse(s.to_string()));
    }
    Ok(BigRational::new(num, den))
}

/// Nearest `f64` to an exact rational.
///
/// The quotient is formed with 64 significant bits before conversion, so
/// numerators and denominators with thousands of digits neither overflow
/// nor lose precision.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let num = q.numer().abs();
    let den = q.denom();
    let shift = 64i64 - (num.bits() as i64 - den.bits() as i64);
    let quotient = if shift >= 0 {
        (num << (shift as usize)) / den
    } else {
        num / (den << ((-shift) as usize))
    };
    let value = ldexp(quotient.to_f64().unwrap_or(f64::NAN), -shift);
    if q.is_negative() {
        -value
    } else {
        value
    }
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

/// Sum of odd reciprocals `1 + 1/3 + ... + 1/(2n-1)`.
pub fn harmonic_odd(n: u32) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "harmonic_odd requires n >= 1".into(),
        ));
    }
    let mut sum = BigRational::zero();
    for m in 1..=n as i64 {
        sum += ratio(1, 2 * m - 1);
    }
    Ok(sum)
}

/// Exact scalar `coefficient * pi^pi_power` with `pi_power` in `-1..=1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiGraded {
    coefficient: BigRational,
    pi_power: i32,
}

impl PiGraded {
    pub const MIN_GRADE: i32 = -1;
    pub const MAX_GRADE: i32 = 1;

    pub fn new(coefficient: BigRational, pi_power: i32) -> Result<Self> {
        check_grade(pi_power)?;
        Ok(Self {
            coefficient,
            pi_power,
        })
    }

    pub fn rational(coefficient: BigRational) -> Self {
        Self {
            coefficient,
            pi_power: 0,
        }
    }

    pub fn zero(pi_power: i32) -> Result<Self> {
        Self::new(BigRational::zero(), pi_power)
    }

    pub fn coefficient(&self) -> &BigRational {
        &self.coefficient
    }

    pub fn pi_power(&self) -> i32 {
        self.pi_power
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    /// Zero is compatible with every grade; otherwise grades must match.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.pi_power == other.pi_power {
            return Ok(Self {
                coefficient: &self.coefficient + &other.coefficient,
                pi_power: self.pi_power,
            });
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        Err(Error::GradeMismatch {
            left: self.pi_power,
            right: other.pi_power,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other.clone())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        Self::new(
            &self.coefficient * &other.coefficient,
            self.pi_power + other.pi_power,
        )
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self {
            coefficient: &self.coefficient * factor,
            pi_power: self.pi_power,
        }
    }

    /// Multiplies by `pi^k`.
    pub fn times_pi_power(&self, k: i32) -> Result<Self> {
        Self::new(self.coefficient.clone(), self.pi_power + k)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.coefficient) * std::f64::consts::PI.powi(self.pi_power)
    }
}

fn check_grade(pi_power: i32) -> Result<()> {
    if (PiGraded::MIN_GRADE..=PiGraded::MAX_GRADE).contains(&pi_power) {
        Ok(())
    } else {
        Err(Error::GradeOverflow(pi_power))
    }
}

impl Neg for PiGraded {
    type Output = PiGraded;
    fn neg(self) -> PiGraded {
        PiGraded {
            coefficient: -self.coefficient,
            pi_power: self.pi_power,
        }
    }
}

impl fmt::Display for PiGraded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.coefficient))?;
        if self.pi_power != 0 {
            write!(f, "*pi^{}", self.pi_power)?;
        }
        Ok(())
    }
}

impl FromStr for PiGraded {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.split_once("*pi^") {
            Some((coeff, power)) => {
                let k: i32 = power
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(s.to_string()))?;
                PiGraded::new(parse_rational(coeff)?, k)
            }
            None => Ok(PiGraded::rational(parse_rational(t)?)),
        }
    }
}

/// Exact finite sum `sum_k c_k * pi^k` (zero coefficients are never stored).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PiSum {
    terms: BTreeMap<i32, BigRational>,
}

impl PiSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coefficient: BigRational, pi_power: i32) -> Self {
        let mut s = Self::zero();
        s.add_term(coefficient, pi_power);
        s
    }

    pub fn rational(coefficient: BigRational) -> Self {
        Self::monomial(coefficient, 0)
    }

    /// `rational + pi_coefficient * pi`.
    pub fn rational_plus_pi(rational: BigRational, pi_coefficient: BigRational) -> Self {
        let mut s = Self::rational(rational);
        s.add_term(pi_coefficient, 1);
        s
    }

    fn add_term(&mut self, coefficient: BigRational, pi_power: i32) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(pi_power).or_insert_with(BigRational::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&pi_power);
        }
    }

    pub fn coefficient(&self, pi_power: i32) -> BigRational {
        self.terms
            .get(&pi_power)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn grades(&self) -> impl Iterator<Item = i32> + '_ {
        self.terms.keys().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(c.clone(), k);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        let mut out = Self::zero();
        for (&k, c) in &self.terms {
            out.add_term(c * factor, k);
        }
        out
    }

    pub fn times_pi_power(&self, shift: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, c)| (k + shift, c.clone())).collect(),
        }
    }

    /// The value as a single [`PiGraded`] monomial, if it is one.
    /// Zero maps to grade 0.
    pub fn as_single_grade(&self) -> Option<PiGraded> {
        match self.terms.len() {
            0 => Some(PiGraded::rational(BigRational::zero())),
            1 => {
                let (&k, c) = self.terms.iter().next()?;
                PiGraded::new(c.clone(), k).ok()
            }
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&k, c)| rational_to_f64(c) * std::f64::consts::PI.powi(k))
            .sum()
    }
}

impl From<PiGraded> for PiSum {
    fn from(value: PiGraded) -> Self {
        PiSum::monomial(value.coefficient, value.pi_power)
    }
}

impl fmt::Display for PiSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0/1");
        }
        for (i, (&k, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", format_rational(c))?;
            if k != 0 {
                write!(f, "*pi^{k}")?;
            }
        }
        Ok(())
    }
}

/// A gamma value at an integer or half-integer argument:
/// `value_coeff * sqrt(pi)` when `sqrt_pi_present`, plain `value_coeff` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfGamma {
    pub value_coeff: BigRational,
    pub sqrt_pi_present: bool,
}

/// `gamma(m + 1/2) = (2m)! / (4^m m!) * sqrt(pi)`.
pub fn half_gamma(m: u32) -> HalfGamma {
    let mut coeff = BigRational::one();
    for i in 0..m as i64 {
        coeff *= ratio(2 * i + 1, 2);
    }
    HalfGamma {
        value_coeff: coeff,
        sqrt_pi_present: true,
    }
}

/// `gamma(k) = (k-1)!` for integer `k >= 1`.
pub fn gamma_int(k: u32) -> Result<HalfGamma> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "gamma has a pole at 0".into(),
        ));
    }
    Ok(HalfGamma {
        value_coeff: BigRational::from_integer(factorial(k - 1)),
        sqrt_pi_present: false,
    })
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k as u64).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `gamma(j - 1/2) / gamma(-1/2)` as the finite product `prod_{i<j} (i - 1/2)`.
///
/// Equals 1 at `j = 0`; never touches the pole at `-1/2`.
pub fn gamma_ratio_from_minus_half(j: u32) -> BigRational {
    (0..j as i64).fold(BigRational::one(), |acc, i| acc * ratio(2 * i - 1, 2))
}

impl HalfGamma {
    pub fn monomial(&self) -> GammaMonomial {
        GammaMonomial {
            coeff: self.value_coeff.clone(),
            sqrt_pi_power: i32::from(self.sqrt_pi_present),
        }
    }

    /// `self / other`, which must share `sqrt(pi)` parity.
    pub fn ratio(&self, other: &HalfGamma) -> Result<BigRational> {
        if self.sqrt_pi_present != other.sqrt_pi_present {
            return Err(Error::SqrtPiParity(
                "ratio of gamma values with different sqrt(pi) parity is irrational".into(),
            ));
        }
        Ok(&self.value_coeff / &other.value_coeff)
    }

    pub fn to_f64(&self) -> f64 {
        let c = rational_to_f64(&self.value_coeff);
        if self.sqrt_pi_present {
            c * std::f64::consts::PI.sqrt()
        } else {
            c
        }
    }
}

/// `coeff * sqrt(pi)^sqrt_pi_power`; the closure of [`HalfGamma`] under `*` and `/`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaMonomial {
    pub coeff: BigRational,
    pub sqrt_pi_power: i32,
}

impl GammaMonomial {
    pub fn rational(coeff: BigRational) -> Self {
        Self {
            coeff,
            sqrt_pi_power: 0,
        }
    }

    /// The value as a plain rational; fails unless every `sqrt(pi)` cancelled.
    pub fn into_rational(self) -> Result<BigRational> {
        if self.sqrt_pi_power != 0 {
            return Err(Error::SqrtPiParity(format!(
                "expected a rational, found a factor sqrt(pi)^{}",
                self.sqrt_pi_power
            )));
        }
        Ok(self.coeff)
    }

    pub fn into_pi_graded(self) -> Result<PiGraded> {
        if self.sqrt_pi_power % 2 != 0 {
            return Err(Error::SqrtPiParity(format!(
                "odd power sqrt(pi)^{} is not pi-graded",
                self.sqrt_pi_power
            )));
        }
        PiGraded::new(self.coeff, self.sqrt_pi_power / 2)
    }

    pub fn scale(self, factor: &BigRational) -> Self {
        Self {
            coeff: self.coeff * factor,
            sqrt_pi_power: self.sqrt_pi_power,
        }
    }
}

impl Mul for GammaMonomial {
    type Output = GammaMonomial;
    fn mul(self, rhs: GammaMonomial) -> GammaMonomial {
        GammaMonomial {
            coeff: self.coeff * rhs.coeff,
            sqrt_pi_power: self.sqrt_pi_power + rhs.sqrt_pi_power,
        }
    }
}

impl Div for GammaMonomial {
    type Output = GammaMonomial;
    fn div(self, rhs: GammaMonomial) -> GammaMonomial {
        GammaMonomial {
            coeff: self.coeff / rhs.coeff,
            sqrt_pi_power: self.sqrt_pi_power - rhs.sqrt_pi_power,
        }
    }
}

impl Mul<&HalfGamma> for GammaMonomial {
    type Output = GammaMonomial;
    fn mul(self, rhs: &HalfGamma) -> GammaMonomial {
        self * rhs.monomial()
    }
}

impl Div<&HalfGamma> for GammaMonomial {
    type Output = GammaMonomial;
    fn div(self, rhs: &HalfGamma) -> GammaMonomial {
        self / rhs.monomial()
    }
}

/// Write-once table of factorials and half-integer gamma coefficients.
///
/// Lookups past the bound are computed on the fly, so the table only
/// affects speed, never results.
#[derive(Debug, Clone)]
pub struct GammaTable {
    factorials: Vec<BigInt>,
    half: Vec<BigRational>,
}

impl GammaTable {
    /// Table sized for a largest principal quantum number `n_max`.
    pub fn for_principal(n_max: u32) -> Self {
        Self::new(4 * n_max as usize + 8)
    }

    pub fn new(bound: usize) -> Self {
        let mut factorials = Vec::with_capacity(bound + 1);
        let mut half = Vec::with_capacity(bound + 1);
        let mut f = BigInt::one();
        let mut h = BigRational::one();
        for k in 0..=bound {
            if k > 0 {
                f *= BigInt::from(k);
                h *= ratio(2 * k as i64 - 1, 2);
            }
            factorials.push(f.clone());
            half.push(h.clone());
        }
        Self { factorials, half }
    }

    pub fn bound(&self) -> usize {
        self.factorials.len() - 1
    }

    pub fn factorial(&self, k: u32) -> BigInt {
        match self.factorials.get(k as usize) {
            Some(f) => f.clone(),
            None => factorial(k),
        }
    }

    pub fn factorial_rational(&self, k: u32) -> BigRational {
        BigRational::from_integer(self.factorial(k))
    }

    /// `gamma(k)` for integer `k >= 1`.
    pub fn gamma_int(&self, k: u32) -> Result<HalfGamma> {
        if k == 0 {
            return Err(Error::InvalidArgument("gamma has a pole at 0".into()));
        }
        Ok(HalfGamma {
            value_coeff: self.factorial_rational(k - 1),
            sqrt_pi_present: false,
        })
    }

    /// `gamma(m + 1/2)`.
    pub fn half_gamma(&self, m: u32) -> HalfGamma {
        match self.half.get(m as usize) {
            Some(c) => HalfGamma {
                value_coeff: c.clone(),
                sqrt_pi_present: true,
            },
            None => half_gamma(m),
        }
    }
}

/// Integer `gcd(numer, denom) == 1` and positive denominator.
pub fn is_lowest_terms(q: &BigRational) -> bool {
    q.denom().is_positive() && q.numer().gcd(q.denom()).is_one()
}
