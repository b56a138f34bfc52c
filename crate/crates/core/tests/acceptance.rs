//! Acceptance run: one line per criterion, evaluated at its stated tolerance.
//!
//! Criteria listed in `KNOWN_FAILURES` are expected to print FAIL; the
//! analysis for each is in the README. The process exits nonzero on any other
//! FAIL, or if a known failure unexpectedly passes. Set `ACCEPTANCE_STRICT=1`
//! to make every FAIL fatal.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hydrogenic::asympt::{
    circular_physical_asymptote, circular_physical_asymptote_as_printed, lambda_limit, near_circular_asymptotic,
    near_circular_error, small_ell_asymptotic,
};
use hydrogenic::exactnum::{int, parse_rational, ratio, rational_to_f64, BigRational};
use hydrogenic::invp::{
    connection_coeffs, inv_p, inv_p_circular, inv_p_near_circular, inv_p_series32, inv_p_series39, inv_p_swave,
};
use hydrogenic::quadrature::{
    double_integral_rep, expectation_f, inv_p_numeric, knu_integral, MomentumFunction, QuadratureSpec,
};
use hydrogenic::specfun::{gegenbauer, gegenbauer_exact};
use hydrogenic::sumrules::{sum_rule_alternating, sum_rule_alternating_as_printed, sum_rule_even};
use hydrogenic::wavefun::{fourier_oracle, generating_closed, generating_partial, momentum_radial};
use hydrogenic::{PiSum, QuantumState};

/// Criteria that cannot pass as stated.
/// 1: the printed (n=5, l=2) entry 299088/24255 is a misprint of 299008/24255.
/// 9: 4 psi(n+1/2)/pi misses the exact l = 0, 1 values at n = 100 by 24% and 9%.
const KNOWN_FAILURES: &[u32] = &[1, 9];

/// Table values as printed, rows l = 0..5, columns n = l+1..6.
const PRINTED_TABLE: [&[&str]; 6] = [
    &["32/3", "256/15", "2144/105", "1024/45", "85088/3465", "1172224/45045"],
    &["128/15", "256/21", "512/35", "57088/3465", "809344/45045"],
    &["4096/525", "16384/1575", "299088/24255", "21856256/1576575"],
    &["16384/2205", "32768/3465", "950272/85995"],
    &["524288/72765", "8388608/945945"],
    &["2097152/297297"],
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn st(n: u32, l: u32) -> QuantumState {
    QuantumState::new(n, l).expect("valid state")
}

fn two_pi_coefficient(v: &hydrogenic::PiGraded) -> BigRational {
    assert_eq!(v.pi_power(), -1);
    v.coefficient() * int(2)
}

fn secs(d: Duration) -> String {
    format!("{:.3}s", d.as_secs_f64())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut path_split = Vec::new();
    for (l, row) in PRINTED_TABLE.iter().enumerate() {
        for (i, printed) in row.iter().enumerate() {
            let (n, l) = (l as u32 + i as u32 + 1, l as u32);
            let s = st(n, l);
            let a = two_pi_coefficient(&inv_p_series32(&s).unwrap());
            let b = two_pi_coefficient(&inv_p_series39(&s).unwrap());
            let expect = parse_rational(printed).unwrap();
            if a != b {
                path_split.push(format!("({n},{l})"));
            }
            if a != expect || b != expect {
                mismatches.push(format!("({n},{l}) computed {} printed {printed}", a));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = mismatches.is_empty() && path_split.is_empty() && elapsed < Duration::from_secs(1);
    let mut detail = format!("21 entries, both paths, {}", secs(elapsed));
    if !path_split.is_empty() {
        detail += &format!("; paths disagree at {}", path_split.join(" "));
    }
    if !mismatches.is_empty() {
        detail += &format!("; mismatch: {}", mismatches.join("; "));
    }
    Outcome { pass, detail }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    let mut bad = Vec::new();
    for n in 1..=40 {
        for l in 0..n {
            let s = st(n, l);
            if inv_p_series32(&s).unwrap() != inv_p_series39(&s).unwrap() {
                bad.push(format!("({n},{l})"));
            }
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: bad.is_empty() && count == 820 && elapsed < Duration::from_secs(30),
        detail: format!("{count} states, {} unequal, {}", bad.len(), secs(elapsed)),
    }
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=40u32 {
        let s0 = inv_p_series39(&st(n, 0)).unwrap();
        if inv_p_swave(n).unwrap() != s0 || inv_p_series32(&st(n, 0)).unwrap() != s0 {
            bad.push(format!("swave n={n}"));
        }
        let sc = inv_p_series39(&st(n, n - 1)).unwrap();
        if inv_p_circular(n).unwrap() != sc {
            bad.push(format!("circular n={n}"));
        }
        if n >= 2 && inv_p_near_circular(n).unwrap() != inv_p_series39(&st(n, n - 2)).unwrap() {
            bad.push(format!("near-circular n={n}"));
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("n <= 40, l in {{0, n-1, n-2}}; {} mismatches {}", bad.len(), bad.join(" ")),
    }
}

fn criterion_4() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut worst_at = String::new();
    for n in 1..=12u32 {
        for l in 0..n {
            let s = st(n, l);
            let exact = inv_p(&s).unwrap().value;
            let spec = QuadratureSpec::for_state(&s);
            let num = inv_p_numeric(&s, &spec).unwrap();
            let dbl = double_integral_rep(&s, &spec).unwrap();
            for (name, v) in [("x", num.x_form.value), ("theta", num.theta_form.value), ("double", dbl.value)] {
                let r = (v / exact - 1.0).abs();
                if r > worst {
                    worst = r;
                    worst_at = format!("{name} at ({n},{l})");
                }
            }
        }
    }
    let mut norm_worst: f64 = 0.0;
    let kspec = QuadratureSpec::k_variable(1e-12).unwrap();
    for n in 1..=20u32 {
        for l in 0..n {
            let v = expectation_f(&st(n, l), &MomentumFunction::One, &kspec).unwrap().value;
            norm_worst = norm_worst.max((v - 1.0).abs());
        }
    }
    Outcome {
        pass: worst < 1e-9 && norm_worst < 1e-10,
        detail: format!(
            "max rel err {worst:.2e} ({worst_at}) vs 1e-9; normalization max |N-1| {norm_worst:.2e} vs 1e-10 for n <= 20"
        ),
    }
}

/// First three of `{0.5, 0.7, 1, 1.5, 2, 3} kappa` where `|P(k)|` is at least 1% of its peak.
fn sample_momenta(s: &QuantumState, kappa: f64) -> Vec<f64> {
    let peak = (1..2000)
        .map(|i| momentum_radial(s, kappa, kappa * i as f64 * 0.005).abs())
        .fold(0.0, f64::max);
    [0.5, 0.7, 1.0, 1.5, 2.0, 3.0]
        .iter()
        .map(|f| f * kappa)
        .filter(|&k| momentum_radial(s, kappa, k).abs() >= 1e-2 * peak)
        .take(3)
        .collect()
}

fn criterion_5() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut short = Vec::new();
    for s in QuantumState::all_up_to(6) {
        let kappa = 1.0 / s.n() as f64;
        let ks = sample_momenta(&s, kappa);
        if ks.len() < 3 {
            short.push(s.to_string());
        }
        for k in ks {
            let oracle = fourier_oracle(&s, kappa, k).unwrap();
            let closed = momentum_radial(&s, kappa, k);
            worst = worst.max((oracle / closed - 1.0).abs());
        }
    }
    Outcome {
        pass: worst < 1e-6 && short.is_empty(),
        detail: format!("21 states x 3 momenta, max rel err {worst:.2e} vs 1e-6"),
    }
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=30 {
        let (l, r) = sum_rule_even(n).unwrap();
        if l != r {
            bad.push(n);
        }
    }
    let spot2 = sum_rule_even(2).unwrap().0.coefficient() == &ratio(64, 3);
    let spot3 = sum_rule_even(3).unwrap().0.coefficient() == &int(48);
    Outcome {
        pass: bad.is_empty() && spot2 && spot3,
        detail: format!("exact for n <= 30 ({} failures); n=2 -> 64/(3pi): {spot2}; n=3 -> 48/pi: {spot3}", bad.len()),
    }
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=30 {
        let (l, r) = sum_rule_alternating(n).unwrap();
        if l != r {
            bad.push(n);
        }
    }
    let printed = sum_rule_alternating_as_printed(1).unwrap();
    let printed_value = PiSum::rational(int(2)).add(&PiSum::monomial(ratio(-4, 3), -1));
    let (lhs1, _) = sum_rule_alternating(1).unwrap();
    let erratum = printed == printed_value && printed != PiSum::from(lhs1.clone());
    Outcome {
        pass: bad.is_empty() && erratum,
        detail: format!(
            "corrected rhs exact for n <= 30 ({} failures); printed rhs at n=1 = {printed} vs lhs {lhs1} (erratum shown: {erratum})",
            bad.len()
        ),
    }
}

fn criterion_8() -> Outcome {
    let spec = QuadratureSpec::theta(1e-13).unwrap();
    let mut worst: f64 = 0.0;
    let mut printed_ok = false;
    for n in 1..=10u32 {
        let nn = (n * n) as f64;
        let corrected = -nn / (4.0 * nn - 1.0);
        let diff = knu_integral(1, n, &spec).unwrap() - knu_integral(0, n, &spec).unwrap();
        let middle = -hydrogenic::quadrature::adaptive::integrate(
            |t: f64| t.sin() * t.cos() * (2.0 * n as f64 * t).sin().powi(2),
            0.0,
            PI / 2.0,
            hydrogenic::quadrature::adaptive::Tolerance::relative(1e-13),
        )
        .unwrap()
        .value;
        worst = worst.max((diff - corrected).abs()).max((middle - corrected).abs());
        let printed = 4.0 * nn / (4.0 * nn - 1.0);
        printed_ok |= (diff - printed).abs() < 1e-6;
    }
    let h = 2.0 * PI;
    let mut scaled = Vec::new();
    let mut factor_ok = true;
    for n in [10u32, 100, 1000] {
        let exact_dimless = inv_p(&st(n, n - 1)).unwrap().value;
        let est = near_circular_asymptotic(n, 0).unwrap();
        scaled.push((est / exact_dimless - 1.0).abs() * (n * n) as f64);
        let ours = circular_physical_asymptote(n, 1.0, h);
        let printed = circular_physical_asymptote_as_printed(n, 1.0, h);
        factor_ok &= (printed / ours - 4.0 / n as f64).abs() < 1e-12;
    }
    let bounded = scaled.iter().all(|c| *c < 1.0);
    Outcome {
        pass: worst < 1e-10 && !printed_ok && bounded && factor_ok,
        detail: format!(
            "K1-K0 = -n^2/(4n^2-1) max err {worst:.2e} vs 1e-10 (n <= 10); n^2*relerr of 1+3/(4n): {:.3} {:.3} {:.3}; printed prefactor ratio 4/n: {factor_ok}",
            scaled[0], scaled[1], scaled[2]
        ),
    }
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let targets = [(ratio(1, 2), 1.975, 0.01), (ratio(1, 4), 2.88, 0.02), (ratio(1, 8), 3.77, 0.02)];
    let mut lambda_ok = true;
    let mut parts = Vec::new();
    for (lambda, target, tol) in &targets {
        match lambda_limit(lambda, 385) {
            Ok(r) => {
                let ok = (r.estimate - target).abs() <= *tol;
                lambda_ok &= ok;
                parts.push(format!("lambda={lambda}: {:.4}", r.estimate));
            }
            Err(e) => {
                lambda_ok = false;
                parts.push(format!("lambda={lambda}: {e}"));
            }
        }
    }
    let lambda_time = start.elapsed();
    lambda_ok &= lambda_time < Duration::from_secs(120);

    let mut ratio_ok = true;
    let mut ratios = Vec::new();
    for delta in 0..=2u32 {
        for n in [16u32, 32, 64] {
            let r = near_circular_error(n, delta).unwrap() / near_circular_error(2 * n, delta).unwrap();
            ratio_ok &= (3.4..=4.6).contains(&r);
            ratios.push(r);
        }
    }
    let (lo, hi) = ratios.iter().fold((f64::MAX, f64::MIN), |(a, b), &r| (a.min(r), b.max(r)));

    let mut small_ok = true;
    let mut small = Vec::new();
    for l in 0..=2u32 {
        let est = small_ell_asymptotic(100, l).unwrap();
        let exact = inv_p(&st(100, l)).unwrap().value;
        let rel = (est / exact - 1.0).abs();
        small_ok &= rel < 0.01;
        small.push(format!("l={l}: {:.1}%", 100.0 * rel));
    }
    Outcome {
        pass: lambda_ok && ratio_ok && small_ok,
        detail: format!(
            "{} ({}); near-circular ratios in [{lo:.2}, {hi:.2}]; 4psi(n+1/2)/pi at n=100 rel err {} vs 1%",
            parts.join(", "),
            secs(lambda_time),
            small.join(", ")
        ),
    }
}

fn criterion_10() -> Outcome {
    // exact residual on the rational grid x = (i - 50)/50, plus the float residual relative to |C|
    let mut worst: f64 = 0.0;
    let mut float_rel: f64 = 0.0;
    for n in 1..=12u32 {
        for l in 0..n {
            let coeffs = connection_coeffs(&st(n, l)).unwrap();
            let lf = l as f64;
            let (mu1, mu2, lam) = (ratio(2 * l as i64 + 1, 2), ratio(2 * l as i64 + 3, 2), int(l as i64 + 1));
            for i in 0..=100i64 {
                let xq = ratio(i - 50, 50);
                let target = gegenbauer_exact((n - l - 1) as i64, &lam, &xq);
                let mut b = -target.clone();
                let mut g = -target.clone();
                for c in &coeffs {
                    b += &c.beta * gegenbauer_exact(c.degree() as i64, &mu1, &xq);
                    g += &c.gamma_c * gegenbauer_exact(c.degree() as i64, &mu2, &xq);
                }
                worst = worst.max(rational_to_f64(&b).abs()).max(rational_to_f64(&g).abs());

                let x = rational_to_f64(&xq);
                let tf = gegenbauer((n - l - 1) as i64, lf + 1.0, x);
                let bf: f64 = coeffs
                    .iter()
                    .map(|c| rational_to_f64(&c.beta) * gegenbauer(c.degree() as i64, lf + 0.5, x))
                    .sum();
                float_rel = float_rel.max((bf - tf).abs() / tf.abs().max(1.0));
            }
        }
    }
    let mut gen_worst: f64 = 0.0;
    for l in 0..=4u32 {
        for &k in &[0.3, 1.0, 2.5] {
            for &z in &[0.5, -0.5] {
                let closed = generating_closed(l, 1.0, k, z).unwrap();
                let partial = generating_partial(l, 1.0, k, z, 80).unwrap();
                gen_worst = gen_worst.max((partial / closed - 1.0).abs());
            }
        }
    }
    Outcome {
        pass: worst < 1e-12 && gen_worst < 1e-8,
        detail: format!(
            "reconstruction max abs residual {worst:.2e} vs 1e-12 (n <= 12, exact grid; float rel {float_rel:.1e}); generating partial sums max rel err {gen_worst:.2e} vs 1e-8 at z = +-1/2"
        ),
    }
}

fn main() -> ExitCode {
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "table reproduction", criterion_1),
        (2, "dual-series equivalence", criterion_2),
        (3, "closed-form specialization", criterion_3),
        (4, "quadrature agreement", criterion_4),
        (5, "fourier oracle", criterion_5),
        (6, "even sum rule", criterion_6),
        (7, "alternating sum rule", criterion_7),
        (8, "errata checks", criterion_8),
        (9, "asymptotics", criterion_9),
        (10, "connection reconstruction and generating function", criterion_10),
    ];
    let mut unexpected = 0;
    let mut failed = 0;
    for (id, name, run) in criteria {
        let outcome = run();
        let known = KNOWN_FAILURES.contains(&id);
        let tag = match (outcome.pass, known) {
            (true, false) => "PASS",
            (true, true) => "PASS (listed as known failure)",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {id:>2} {tag}: {name}: {}", outcome.detail);
        if !outcome.pass {
            failed += 1;
        }
        if outcome.pass == known || (strict && !outcome.pass) {
            unexpected += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed, {unexpected} unexpected", 10 - failed);
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
