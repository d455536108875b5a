use super::*;
use crate::specfun::ln_factorial;

/// Term `n` from floating-point log-factorials, independent of the big integers.
fn term_oracle(r: u32, n: u64) -> f64 {
    let mut ln_rho = ln_factorial(n + r as u64);
    for k in 0..r as u64 {
        ln_rho += 2.0 * ln_factorial(n + k);
    }
    (-ln_rho / (2.0 * n as f64)).exp()
}

#[test]
fn partial_sum_matches_float_oracle() {
    for r in 1..=3 {
        let report = carleman_sum(r, 200).unwrap();
        let oracle: f64 = (1..=200).map(|n| term_oracle(r, n)).sum();
        assert!((report.partial_sum - oracle).abs() < 1e-12 * oracle, "r={r}");
    }
}

#[test]
fn fitted_exponent_approaches_r_plus_half() {
    for r in 1..=3 {
        let a = r as f64 + 0.5;
        let short = carleman_sum(r, 100).unwrap();
        let long = carleman_sum(r, DEFAULT_CARLEMAN_TERMS).unwrap();
        // the ln n / n correction to the slope is still visible at n = 1000
        assert!((long.fitted_exponent - a).abs() < 0.15, "r={r}: {}", long.fitted_exponent);
        assert!((long.fitted_exponent - a).abs() < (short.fitted_exponent - a).abs());
        assert!(long.converges && short.converges);
    }
}

#[test]
fn fitted_exponent_matches_float_oracle_fit() {
    let r = 2;
    let n_max = 300u64;
    let pts: Vec<(f64, f64)> = (30..=n_max).map(|n| ((n as f64).ln(), term_oracle(r, n).ln())).collect();
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let cov: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    let report = carleman_sum(r, n_max).unwrap();
    assert!((report.fitted_exponent + cov / var).abs() < 1e-8);
}

#[test]
fn tail_bound_dominates_next_terms() {
    for r in 1..=3 {
        let report = carleman_sum(r, 50).unwrap();
        let next: f64 = (51..=5000).map(|n| term_oracle(r, n)).sum();
        assert!(next <= report.tail_bound, "r={r}: {next} > {}", report.tail_bound);
        let longer = carleman_sum(r, 500).unwrap();
        assert!(longer.partial_sum - report.partial_sum <= report.tail_bound);
    }
}

#[test]
fn terms_decrease_after_three() {
    for r in 1..=3 {
        let terms: Vec<f64> = (3..60).map(|n| term_oracle(r, n)).collect();
        assert!(terms.iter().all(|&t| t > 0.0));
        assert!(terms.windows(2).all(|w| w[1] < w[0]), "r={r}");
    }
}

#[test]
fn too_few_terms_is_a_configuration_error() {
    assert!(matches!(carleman_sum(1, 9), Err(Error::Configuration(_))));
    assert!(carleman_sum(1, 10).is_ok());
}

#[test]
fn weights_are_log_convex() {
    let grid = default_convexity_grid();
    for r in 1..=3 {
        let min = log_convexity_check(r, &grid).unwrap();
        assert!(min >= -CONVEXITY_SLACK, "r={r}: {min}");
    }
}

#[test]
fn convexity_grid_preconditions() {
    assert!(matches!(log_convexity_check(1, &[1.0]), Err(Error::Configuration(_))));
    let short: Vec<f64> = (0..=40).map(|i| (-2.0 + 0.1 * i as f64).exp()).collect();
    assert!(matches!(log_convexity_check(1, &short), Err(Error::Configuration(_))));
    let coarse: Vec<f64> = (0..=16).map(|i| (-4.0 + 0.5 * i as f64).exp()).collect();
    assert!(matches!(log_convexity_check(1, &coarse), Err(Error::Configuration(_))));
    let mut unsorted = default_convexity_grid();
    unsorted.swap(3, 4);
    assert!(matches!(log_convexity_check(1, &unsorted), Err(Error::Configuration(_))));
}

#[test]
fn second_difference_is_exact_on_quadratics() {
    // ψ(u) = u² on a non-uniform grid, via W(x) = exp(-ln² x)
    let u = [0.0, 0.3, 0.45, 1.0];
    let psi: Vec<f64> = u.iter().map(|v| v * v).collect();
    for i in 1..3 {
        let (hm, hp) = (u[i] - u[i - 1], u[i + 1] - u[i]);
        let d2 = 2.0 * ((psi[i + 1] - psi[i]) / hp - (psi[i] - psi[i - 1]) / hm) / (hp + hm);
        assert!((d2 - 2.0).abs() < 1e-12);
    }
}

#[test]
fn verdict_for_low_orders() {
    for r in 1..=3 {
        let report = non_uniqueness(r).unwrap();
        assert_eq!(report.verdict, Verdict::NonUnique, "r={r}: {report:?}");
        assert_eq!(report.verdict.to_string(), "non-unique");
    }
}
