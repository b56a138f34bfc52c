use proptest::prelude::*;

use hydrogenic::exactnum::{format_rational, is_lowest_terms, parse_rational, ratio, rational_to_f64, PiGraded};
use hydrogenic::invp::{inv_p, inv_p_series32, inv_p_series39, table_entry};
use hydrogenic::physics::{energy_shift, inv_p_physical};
use hydrogenic::quadrature::{check_moment, expectation_f, GaussRule, MomentumFunction, QuadratureSpec};
use hydrogenic::specfun::{chebyshev_u, digamma, gegenbauer, gegenbauer_exact};
use hydrogenic::sumrules::{j_integral, j_integral_recurrence, sum_rule_alternating, sum_rule_even};
use hydrogenic::wavefun::{momentum_radial, PhysicalScales};
use hydrogenic::{BigRational, QuantumState};

fn state() -> impl Strategy<Value = QuantumState> {
    (1u32..=40).prop_flat_map(|n| (Just(n), 0..n)).prop_map(|(n, l)| QuantumState::new(n, l).unwrap())
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-10_000i64..10_000, 1i64..5000).prop_map(|(p, q)| ratio(p, q))
}

proptest! {
    #[test]
    fn rational_format_round_trip(q in small_rational()) {
        let s = format_rational(&q);
        prop_assert!(s.contains('/'));
        prop_assert_eq!(parse_rational(&s).unwrap(), q.clone());
        prop_assert!(is_lowest_terms(&q));
    }

    #[test]
    fn pi_graded_round_trip(q in small_rational(), k in -1i32..=1) {
        let v = PiGraded::new(q, k).unwrap();
        let back: PiGraded = v.to_string().parse().unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn pi_graded_algebra(a in small_rational(), b in small_rational(), j in -1i32..=1, k in -1i32..=1) {
        let x = PiGraded::new(a.clone(), j).unwrap();
        let y = PiGraded::new(b.clone(), k).unwrap();
        match x.checked_mul(&y) {
            Ok(p) => {
                prop_assert_eq!(p.pi_power(), j + k);
                prop_assert_eq!(p.coefficient(), &(a.clone() * b.clone()));
            }
            Err(_) => prop_assert!((j + k).abs() > 1),
        }
        let z = PiGraded::new(b, j).unwrap();
        let s = x.checked_add(&z).unwrap();
        prop_assert_eq!(s.checked_sub(&z).unwrap(), x.clone());
        if j != k && !x.is_zero() && !y.is_zero() {
            prop_assert!(x.checked_add(&y).is_err());
        }
    }

    #[test]
    fn series_forms_agree(s in state()) {
        let a = inv_p_series32(&s).unwrap();
        let b = inv_p_series39(&s).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.pi_power(), -1);
        prop_assert!(*a.coefficient() > ratio(0, 1));
        prop_assert!(is_lowest_terms(a.coefficient()));
        prop_assert_eq!(table_entry(&s).unwrap(), a.coefficient() * ratio(2, 1));
    }

    #[test]
    fn exact_and_float_gegenbauer(n in 0i64..14, lam in 1i64..8, p in -100i64..=100) {
        let x = ratio(p, 100);
        let e = rational_to_f64(&gegenbauer_exact(n, &ratio(lam, 1), &x));
        let f = gegenbauer(n, lam as f64, p as f64 / 100.0);
        prop_assert!((e - f).abs() <= 1e-12 * e.abs().max(1.0));
        if lam == 1 {
            prop_assert!((chebyshev_u(n, p as f64 / 100.0) - f).abs() <= 1e-12 * f.abs().max(1.0));
        }
    }

    #[test]
    fn digamma_recurrence(x in 0.05f64..60.0) {
        let d = digamma(x + 1.0).unwrap() - digamma(x).unwrap();
        prop_assert!((d - 1.0 / x).abs() < 1e-12 * (1.0 / x).max(1.0));
    }

    #[test]
    fn moment_guard(l in 0u32..6, s in -12.0f64..12.0) {
        let converges = (l as f64) + 2.5 - s / 2.0 > 0.0 && (l as f64) + 1.5 + s / 2.0 > 0.0;
        prop_assert_eq!(check_moment(l, s).is_ok(), converges);
    }

    #[test]
    fn momentum_wavefunction_scaling(s in state(), k in 0.01f64..5.0) {
        // P_{nl}(kappa; k) = kappa^{-3/2} P_{nl}(1; k/kappa)
        let kappa = 0.37;
        let lhs = momentum_radial(&s, kappa, k);
        let rhs = kappa.powf(-1.5) * momentum_radial(&s, 1.0, k / kappa);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(1e-300) + 1e-300);
    }

    #[test]
    fn shift_is_linear_in_b(n in 1u32..15, b in 1e-8f64..1e-2) {
        let s = QuantumState::new(n, n / 2).unwrap();
        let one = energy_shift(&s, &PhysicalScales::atomic().with_b(1.0).unwrap()).unwrap();
        let v = energy_shift(&s, &PhysicalScales::atomic().with_b(b).unwrap()).unwrap();
        prop_assert!(v < 0.0);
        prop_assert!((v - b * one).abs() <= 1e-14 * v.abs());
    }
}

#[test]
fn positive_and_decreasing_in_l() {
    for n in 1..=40u32 {
        let row: Vec<BigRational> = (0..n).map(|l| table_entry(&QuantumState::new(n, l).unwrap()).unwrap()).collect();
        assert!(row.iter().all(|v| *v > ratio(0, 1)));
        for w in row.windows(2) {
            assert!(w[1] < w[0], "n={n}");
        }
    }
}

#[test]
fn even_sum_rule_exact() {
    for n in 1..=30 {
        let (lhs, rhs) = sum_rule_even(n).unwrap();
        assert_eq!(lhs, rhs, "n={n}");
    }
}

#[test]
fn alternating_sum_rule_exact() {
    for n in 1..=30 {
        let (lhs, rhs) = sum_rule_alternating(n).unwrap();
        assert_eq!(lhs, rhs, "n={n}");
    }
}

#[test]
fn j_integral_is_rational() {
    for n in 0..=30i64 {
        let j = j_integral(n).unwrap();
        assert_eq!(j.grades().collect::<Vec<_>>(), vec![0], "n={n}");
        assert_eq!(j.coefficient(0), j_integral_recurrence(n).unwrap());
    }
}

#[test]
fn gauss_rules_exact_on_polynomials() {
    let legendre = GaussRule::legendre(8).unwrap();
    for d in 0..16 {
        let v = legendre.integrate(|x: f64| x.powi(d));
        let expect = if d % 2 == 0 { 2.0 / (d as f64 + 1.0) } else { 0.0 };
        assert!((v - expect).abs() < 1e-14);
    }
    let laguerre = GaussRule::laguerre(10, 0.0).unwrap();
    let mut fact = 1.0;
    for d in 0..20 {
        if d > 0 {
            fact *= d as f64;
        }
        let v = laguerre.integrate(|x: f64| x.powi(d));
        assert!((v / fact - 1.0).abs() < 1e-11, "d={d}");
    }
}

#[test]
fn physical_scales_consistency() {
    let scales = PhysicalScales::new(0.529, 1.054, 1.0 / 137.0, 0.0).unwrap();
    for s in QuantumState::all_up_to(20) {
        let phys = inv_p_physical(&s, &scales).unwrap();
        let dimless = inv_p(&s).unwrap().value;
        assert!((phys * scales.hbar * scales.kappa(s.n()) / dimless - 1.0).abs() < 1e-13);
    }
}

#[test]
fn virial_moment_for_all_small_states() {
    for s in QuantumState::all_up_to(12) {
        let v = expectation_f(&s, &MomentumFunction::P2, &QuadratureSpec::for_state(&s)).unwrap().value;
        assert!((v - 1.0).abs() < 1e-10, "{s}");
    }
}
