//! Globally adaptive Gauss-Kronrod (7/15) integration on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights at the odd Kronrod nodes `XGK[1], XGK[3], XGK[5], 0`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Tolerance {
    pub fn relative(rel: f64) -> Self {
        Self {
            abs: 0.0,
            rel,
            max_intervals: 5_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One Kronrod 15-point panel: `(K15, |K15 - G7| + round-off floor)`.
fn kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Panel {
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let fc = f(mid);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    let mut mag = (WGK[7] * fc).abs();
    for (i, &x) in XGK[..7].iter().enumerate() {
        let f1 = f(mid - half * x);
        let f2 = f(mid + half * x);
        k += WGK[i] * (f1 + f2);
        mag += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            g += WG[i / 2] * (f1 + f2);
        }
    }
    let value = k * half;
    let error = ((k - g) * half).abs() + 50.0 * f64::EPSILON * mag * half.abs();
    Panel { lo, hi, value, error }
}

/// Integrates `f` over consecutive breakpoints, refining the worst panel
/// until the summed error is within `max(tol.abs, tol.rel * |I|)`.
pub fn integrate_panels<F: Fn(f64) -> f64>(f: F, breaks: &[f64], tol: Tolerance) -> Result<Integral> {
    if breaks.len() < 2 {
        return Err(Error::InvalidArgument("need at least two breakpoints".into()));
    }
    let mut heap: BinaryHeap<Panel> = breaks.windows(2).map(|w| kronrod(&f, w[0], w[1])).collect();
    let mut value: f64 = heap.iter().map(|p| p.value).sum();
    let mut error: f64 = heap.iter().map(|p| p.error).sum();
    loop {
        if !value.is_finite() {
            return Err(Error::NonConvergence {
                estimate: value,
                error,
                requested: tol.rel,
            });
        }
        if error <= tol.abs.max(tol.rel * value.abs()) {
            break;
        }
        if heap.len() >= tol.max_intervals {
            return Err(Error::NonConvergence {
                estimate: value,
                error,
                requested: tol.rel,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // interval exhausted in floating point; accept what we have
            heap.push(Panel { error: 0.0, ..worst });
            error -= worst.error;
            continue;
        }
        let left = kronrod(&f, worst.lo, mid);
        let right = kronrod(&f, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // re-sum to shed accumulated cancellation in the running totals
    let value = heap.iter().map(|p| p.value).sum();
    let error = heap.iter().map(|p| p.error).sum();
    Ok(Integral {
        value,
        error,
        intervals: heap.len(),
    })
}

pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<Integral> {
    integrate_panels(f, &[lo, hi], tol)
}
