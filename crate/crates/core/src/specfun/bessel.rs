/// Spherical Bessel function `j_l(z)` for `z >= 0`.
///
/// Power series below `z = 1`, upward recurrence from `j_0`, `j_1` once
/// `z >= l`, and Miller's downward recurrence in between.
pub fn spherical_bessel(order: u32, z: f64) -> f64 {
    if z < 0.0 || z.is_nan() {
        return f64::NAN;
    }
    if z == 0.0 {
        return if order == 0 { 1.0 } else { 0.0 };
    }
    if z < 1.0 {
        return series(order, z);
    }
    let j0 = z.sin() / z;
    if order == 0 {
        return j0;
    }
    let j1 = z.sin() / (z * z) - z.cos() / z;
    if order == 1 {
        return j1;
    }
    if z >= order as f64 {
        let (mut prev, mut cur) = (j0, j1);
        for k in 1..order {
            let next = (2 * k + 1) as f64 / z * cur - prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    miller(order, z, j0, j1)
}

fn series(order: u32, z: f64) -> f64 {
    // z^l / (2l+1)!! * sum_k (-z^2/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1))
    let mut lead = 1.0;
    for k in 0..order {
        lead *= z / (2 * k + 3) as f64;
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let half_z2 = 0.5 * z * z;
    for k in 1..60 {
        term *= -half_z2 / (k as f64 * (2 * order + 2 * k + 1) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

fn miller(order: u32, z: f64, j0: f64, j1: f64) -> f64 {
    let start = order + 20 + (z.sqrt() * 4.0) as u32 + (order as f64).sqrt() as u32 * 4;
    let mut above = 0.0;
    let mut cur = 1e-280;
    let mut at_order = 0.0;
    let mut f1 = 0.0;
    let mut k = start;
    while k > 0 {
        // f_{k-1} = (2k+1)/z f_k - f_{k+1}
        let below = (2 * k + 1) as f64 / z * cur - above;
        above = cur;
        cur = below;
        k -= 1;
        if k == order {
            at_order = cur;
        }
        if k == 1 {
            f1 = cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            above *= 1e-250;
            at_order *= 1e-250;
            f1 *= 1e-250;
        }
    }
    let f0 = cur;
    if j0.abs() >= j1.abs() {
        at_order * (j0 / f0)
    } else {
        at_order * (j1 / f1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn explicit_j2(z: f64) -> f64 {
        (3.0 / (z * z) - 1.0) * z.sin() / z - 3.0 * z.cos() / (z * z)
    }

    #[test]
    fn closed_forms() {
        assert!((spherical_bessel(0, 1.0) - 1f64.sin()).abs() < 1e-15);
        assert!((spherical_bessel(0, 1.0) - 0.841_470_984_807_896_5).abs() < 1e-15);
        let z = 2.0f64;
        let j1 = z.sin() / 4.0 - z.cos() / 2.0;
        assert!((spherical_bessel(1, 2.0) - j1).abs() < 1e-15);
        assert!((spherical_bessel(1, 2.0) - 0.435_397_774_979_992).abs() < 1e-13);
        for &z in &[0.3, 1.5, 4.0, 12.0, 80.0] {
            assert!((spherical_bessel(2, z) - explicit_j2(z)).abs() < 1e-13, "z={z}");
        }
    }

    #[test]
    fn origin_limit() {
        assert_eq!(spherical_bessel(0, 0.0), 1.0);
        for l in 1..10 {
            assert_eq!(spherical_bessel(l, 0.0), 0.0);
        }
    }

    #[test]
    fn regimes_agree_with_series_near_boundaries() {
        // series is valid for all z; compare against it where it converges well
        for l in 0..=30u32 {
            for &z in &[0.2, 0.999, 1.001, 2.5, 5.0] {
                let reference = series(l, z);
                let got = spherical_bessel(l, z);
                let scale = reference.abs().max(1e-300);
                assert!(((got - reference) / scale).abs() < 1e-11, "l={l} z={z}: {got} vs {reference}");
            }
        }
    }

    #[test]
    fn three_term_recurrence_holds() {
        for l in 1..30u32 {
            for &z in &[0.7, 3.3, 17.0, 29.5, 120.0, 999.0] {
                let lhs = spherical_bessel(l - 1, z) + spherical_bessel(l + 1, z);
                let rhs = (2 * l + 1) as f64 / z * spherical_bessel(l, z);
                let scale = spherical_bessel(l - 1, z).abs().max(spherical_bessel(l + 1, z).abs()).max(1e-300);
                assert!(((lhs - rhs) / scale).abs() < 1e-9, "l={l} z={z}");
            }
        }
    }

    #[test]
    fn large_argument_envelope() {
        // |j_l(z)| <= 1/z for z well above l
        for l in 0..=30 {
            let z = 1000.0;
            assert!(spherical_bessel(l, z).abs() <= 1.0 / z + 1e-12);
        }
    }
}
