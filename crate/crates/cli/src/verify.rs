//! Verification suites and their tab-separated report.
//!
//! Every line is `check <TAB> value <TAB> threshold <TAB> PASS|FAIL`. A check
//! whose computation fails carries the error text as its value and fails.

use crate::{Outcome, Suite, UsageError, VerifyArgs};
use hypercs_core::eigenfun::{derivatives_at_zero, eval_e, ode_residual, EigenFunctionSpec};
use hypercs_core::fockstate::{
    apply_generalized_lowering, apply_nonlinear_lowering, build_state, eigen_residual, falling_product,
    normalization_by_coefficients, normalization_n, overlap, stirling_f, stirling_f_unsigned, time_evolve,
    StirlingTable,
};
use hypercs_core::momentproblem::{
    default_convexity_grid, non_uniqueness_with, verify_moments, Contour, MellinBarnesSpec, QuadConfig,
    Verdict, CONVEXITY_SLACK, DEFAULT_CARLEMAN_TERMS, EXPONENT_MARGIN,
};
use hypercs_core::specfun::bessel_i1;
use hypercs_core::statistics::{
    expectation_pp, mandel_q, mandel_q_from_moments, metric_omega_standard, probability_p,
    quadrature_variances, standard_cs_probability,
};
use hypercs_core::Result;
use num_complex::Complex64;
use rayon::prelude::*;
use std::fmt::Write as _;

/// Sample points shared by the two-route consistency checks.
pub const CONSISTENCY_X: [f64; 4] = [0.5, 2.0, 8.0, 20.0];

/// Largest moment index checked per order.
pub const MOMENT_N_MAX: u64 = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub r_values: Vec<u32>,
    pub tail_tol: f64,
    pub weight: MellinBarnesSpec,
    pub quad: QuadConfig,
}

impl VerifyConfig {
    pub fn new(suite: Suite) -> Self {
        Self {
            suite,
            r_values: vec![1, 2, 3],
            tail_tol: 1e-12,
            weight: MellinBarnesSpec::for_order(1),
            quad: QuadConfig::default(),
        }
    }

    pub fn from_args(a: &VerifyArgs) -> std::result::Result<Self, UsageError> {
        let mut cfg = Self::new(a.suite);
        cfg.r_values = a.r_values.clone();
        cfg.tail_tol = a.tail_tol;
        if let Some(c) = a.contour_re {
            cfg.weight.contour = Contour::Saddle { min_re: c };
        }
        cfg.weight.im_cutoff = a.im_cutoff;
        if let Some(h) = a.quad_step {
            cfg.weight.step = h;
        }
        cfg.quad.x_max = a.x_max_integration;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> std::result::Result<(), UsageError> {
        if self.r_values.is_empty() || self.r_values.contains(&0) {
            return Err(UsageError("orders r must be positive integers".into()));
        }
        if !self.tail_tol.is_finite() {
            return Err(UsageError(format!("tail tolerance must be finite, got {}", self.tail_tol)));
        }
        self.weight.validate().map_err(|e| UsageError(e.to_string()))?;
        if let Some(x) = self.quad.x_max {
            if !(x > 0.0) || !x.is_finite() {
                return Err(UsageError(format!("integration limit must be positive, got {x}")));
            }
        }
        Ok(())
    }

    /// The weight of order `r` with the configured contour parameters.
    fn weight_for(&self, r: u32) -> MellinBarnesSpec {
        MellinBarnesSpec { gamma_shifts: MellinBarnesSpec::for_order(r).gamma_shifts, ..self.weight.clone() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: String,
    pub threshold: String,
    pub passed: bool,
}

fn sci(v: f64) -> String {
    format!("{v:.6e}")
}

/// `value < limit`.
fn below(name: String, value: Result<f64>, limit: f64) -> Check {
    compare(name, value, format!("< {}", sci(limit)), |v| v < limit)
}

/// `value >= limit`.
fn at_least(name: String, value: Result<f64>, limit: f64) -> Check {
    compare(name, value, format!(">= {}", sci(limit)), |v| v >= limit)
}

fn compare(name: String, value: Result<f64>, threshold: String, ok: impl Fn(f64) -> bool) -> Check {
    match value {
        Ok(v) => Check { name, value: sci(v), passed: ok(v), threshold },
        Err(e) => Check { name, value: format!("error: {e}"), threshold, passed: false },
    }
}

fn label(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

fn eigen_suite(cfg: &VerifyConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for r in 1..=5u32 {
        let spec = EigenFunctionSpec::new(r).unwrap();
        for x in [0.01, 1.0, 10.0, 50.0] {
            let rel = ode_residual(spec, x).and_then(|res| Ok(res.abs() / eval_e(spec, x)?.abs()));
            out.push(below(format!("ode_residual r={r} x={x}"), rel, 1e-10));
        }
        let d = derivatives_at_zero(spec);
        let factorial = (1..=r).map(f64::from).product::<f64>();
        let exact = d[..r as usize].iter().all(|&v| v == 0.0) && d[r as usize] == factorial;
        out.push(Check {
            name: format!("initial_conditions r={r}"),
            value: d.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
            threshold: format!("== 0 x{r}, {factorial}"),
            passed: exact,
        });
    }
    let spec = EigenFunctionSpec::new(1).unwrap();
    let worst = (0..200)
        .map(|i| {
            let x = 50.0 * i as f64 / 199.0;
            let e = eval_e(spec, x)?;
            let y = 2.0 * x.sqrt();
            Ok((e - x.sqrt() * bessel_i1(y)?).abs() / e.max(1.0))
        })
        .collect::<Result<Vec<f64>>>()
        .map(|v| v.into_iter().fold(0.0, f64::max));
    out.push(below("bessel_identity r=1 x=[0,50]".into(), worst, 1e-12));
    for &r in &cfg.r_values {
        for z in eigen_labels() {
            let scaled = eigen_residual(r, z, cfg.tail_tol).map(|v| v / z.norm().max(1.0));
            out.push(below(format!("eigenproperty r={r} z={}", label(z)), scaled, 1e-9));
        }
    }
    out
}

fn eigen_labels() -> [Complex64; 3] {
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0), Complex64::new(-1.5, 0.5)]
}

fn state_suite(cfg: &VerifyConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for &r in &cfg.r_values {
        for z in eigen_labels() {
            let state = build_state(r, z, cfg.tail_tol);
            let name = |what: &str| format!("{what} r={r} z={}", label(z));
            out.push(below(name("state_norm"), state.clone().map(|s| (s.norm_squared() - 1.0).abs()), 1e-12));
            let evolved = state.clone().map(|s| (time_evolve(&s, 0.7).norm_squared() - s.norm_squared()).abs());
            out.push(below(name("time_evolution_norm"), evolved, 1e-12));
            let nonlinear = state.map(|s| {
                let a = apply_generalized_lowering(&s);
                let b = apply_nonlinear_lowering(&s, &StirlingTable::new(r));
                let scale = a.coefficients.iter().map(|c| c.norm()).fold(0.0, f64::max);
                let diff = a.coefficients.iter().zip(&b.coefficients).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
                diff / scale
            });
            out.push(below(name("nonlinear_form"), nonlinear, 1e-12));
            out.push(below(name("self_overlap"), overlap(r, z, z).map(|o| (o - 1.0).norm()), 1e-12));
        }
        for x in CONSISTENCY_X {
            let diff = normalization_n(r, x)
                .and_then(|a| Ok((a - normalization_by_coefficients(r, x)?).abs() / a));
            out.push(below(format!("normalization_routes r={r} x={x}"), diff, 1e-12));
        }
    }
    for r in 1..=6u32 {
        let mismatches = (-5..=20i64)
            .filter(|&m| {
                let a = stirling_f(r, m);
                a != stirling_f_unsigned(r, m) || a != falling_product(r, m)
            })
            .count();
        out.push(Check {
            name: format!("stirling_forms r={r} m=[-5,20]"),
            value: mismatches.to_string(),
            threshold: "== 0".into(),
            passed: mismatches == 0,
        });
    }
    out
}

/// `Σ_k k(k-1)...(k-p+1) P_r(k, x)`, summed until the terms are negligible.
fn direct_factorial_moment(r: u32, x: f64, p: u32) -> Result<f64> {
    let mut acc = 0.0;
    let mut k = r as u64;
    loop {
        let prob = probability_p(r, k, x)?;
        let term = prob * (0..p as u64).map(|j| k.saturating_sub(j) as f64).product::<f64>();
        acc += term;
        if k > r as u64 + 10 && term < 1e-18 * acc {
            return Ok(acc);
        }
        k += 1;
    }
}

/// Sample grid on `(0, 20]` for the sign and ordering checks.
fn figure_grid() -> Vec<f64> {
    (1..=200).map(|i| 0.1 * i as f64).collect()
}

fn statistics_suite(cfg: &VerifyConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for &r in &cfg.r_values {
        for x in CONSISTENCY_X {
            let diff = mandel_q(r, x).and_then(|a| Ok((a - mandel_q_from_moments(r, x)?).abs()));
            out.push(below(format!("mandel_routes r={r} x={x}"), diff, 1e-10));
            for p in 1..=2 {
                let diff = expectation_pp(r, x, p)
                    .and_then(|a| Ok((a - direct_factorial_moment(r, x, p)?).abs() / a));
                out.push(below(format!("factorial_moment_routes r={r} x={x} p={p}"), diff, 1e-10));
            }
        }
        let sum = (r as u64..=r as u64 + 200)
            .map(|k| probability_p(r, k, 4.0))
            .sum::<Result<f64>>()
            .map(|s| (s - 1.0).abs());
        out.push(below(format!("probability_sum r={r} x=4"), sum, 1e-12));
        let q_max = figure_grid()
            .par_iter()
            .map(|&x| mandel_q(r, x))
            .collect::<Result<Vec<f64>>>()
            .map(|v| v.into_iter().fold(f64::NEG_INFINITY, f64::max));
        out.push(below(format!("sub_poissonian r={r} max_Q x=(0,20]"), q_max, 0.0));
    }
    let mut sorted = cfg.r_values.clone();
    sorted.sort_unstable();
    sorted.dedup();
    for pair in sorted.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let gap = figure_grid()
            .par_iter()
            .map(|&x| Ok(mandel_q(hi, x)?.abs() - mandel_q(lo, x)?.abs()))
            .collect::<Result<Vec<f64>>>()
            .map(|v| v.into_iter().fold(f64::INFINITY, f64::min));
        out.push(compare(format!("q_ordering r={lo}<r={hi} min(|Q_hi|-|Q_lo|)"), gap, "> 0".into(), |v| v > 0.0));
    }
    out.extend(peak_checks(&sorted));
    let var_x_min = figure_grid()
        .par_iter()
        .map(|&x| Ok(quadrature_variances(1, Complex64::new(x.sqrt(), 0.0))?.0))
        .collect::<Result<Vec<f64>>>()
        .map(|v| v.into_iter().fold(f64::INFINITY, f64::min));
    out.push(below("squeezing r=1 min_varX x=(0,20]".into(), var_x_min, 0.5));
    let plane: Vec<f64> = (0..21).map(|i| -3.0 + 0.3 * i as f64).collect();
    for &r in &cfg.r_values {
        let product = plane
            .par_iter()
            .map(|&re| {
                plane.iter().try_fold(f64::INFINITY, |m, &im| {
                    let (vx, vp) = quadrature_variances(r, Complex64::new(re, im))?;
                    Ok(m.min(vx * vp))
                })
            })
            .collect::<Result<Vec<f64>>>()
            .map(|v| v.into_iter().fold(f64::INFINITY, f64::min));
        out.push(at_least(format!("heisenberg r={r} min_varX*varP 21x21"), product, 0.25 - 1e-12));
    }
    let omega = [0.5, 2.0, 8.0]
        .iter()
        .map(|&x| Ok((metric_omega_standard(x)? - 1.0).abs()))
        .collect::<Result<Vec<f64>>>()
        .map(|v| v.into_iter().fold(0.0, f64::max));
    out.push(below("omega_standard_cs".into(), omega, 1e-12));
    let poisson = (0..=80).map(|k| standard_cs_probability(k, 5.0)).sum::<f64>();
    out.push(below("poisson_sum x=5".into(), Ok((poisson - 1.0).abs()), 1e-12));
    out
}

/// Logarithmic grid on `[1e-3, 1e4]`, 100 points per decade. The maxima of
/// `P_r(r+1, x)` sit near 4.4, 39 and 626 for `r = 1, 2, 3`.
fn peak_grid() -> Vec<f64> {
    (0..=700).map(|i| 10f64.powf(-3.0 + i as f64 / 100.0)).collect()
}

/// `P_r(r+1, x)` rises then falls once on the grid, and the peak moves right with `r`.
fn peak_checks(rs: &[u32]) -> Vec<Check> {
    let grid = peak_grid();
    let mut out = Vec::new();
    let mut previous: Option<(u32, f64)> = None;
    for &r in rs {
        let values = grid
            .par_iter()
            .map(|&x| probability_p(r, r as u64 + 1, x))
            .collect::<Result<Vec<f64>>>();
        let located = values.map(|v| {
            let peak = (0..v.len()).fold(0, |best, i| if v[i] > v[best] { i } else { best });
            let unimodal = v[..=peak].windows(2).all(|w| w[1] > w[0]) && v[peak..].windows(2).all(|w| w[1] < w[0]);
            let interior = peak > 0 && peak + 1 < v.len();
            (grid[peak], unimodal && interior)
        });
        match located {
            Ok((x_peak, single)) => {
                out.push(Check {
                    name: format!("single_interior_max P_r(r+1) r={r}"),
                    value: format!("x_peak={}", sci(x_peak)),
                    threshold: "one interior maximum".into(),
                    passed: single,
                });
                if let Some((lo, x_lo)) = previous {
                    out.push(Check {
                        name: format!("peak_ordering r={lo}<r={r}"),
                        value: format!("{} -> {}", sci(x_lo), sci(x_peak)),
                        threshold: "increasing".into(),
                        passed: x_peak > x_lo,
                    });
                }
                previous = Some((r, x_peak));
            }
            Err(e) => out.push(compare(format!("single_interior_max P_r(r+1) r={r}"), Err(e), "one interior maximum".into(), |_| false)),
        }
    }
    out
}

fn moments_suite(cfg: &VerifyConfig) -> Vec<Check> {
    let ns: Vec<u64> = (0..=MOMENT_N_MAX).collect();
    let mut out = Vec::new();
    for &r in &cfg.r_values {
        match verify_moments(&cfg.weight_for(r), &ns, &cfg.quad) {
            Ok(checks) => {
                for c in checks {
                    out.push(below(format!("moment r={r} n={}", c.n), Ok(c.rel_error), cfg.quad.tolerance));
                }
            }
            Err(e) => out.push(below(format!("moment r={r} n=0..{MOMENT_N_MAX}"), Err(e), cfg.quad.tolerance)),
        }
    }
    out
}

fn nonuniqueness_suite(cfg: &VerifyConfig) -> Vec<Check> {
    let grid = default_convexity_grid();
    let mut out = Vec::new();
    for &r in &cfg.r_values {
        match non_uniqueness_with(r, &cfg.weight_for(r), DEFAULT_CARLEMAN_TERMS, &grid) {
            Ok(rep) => {
                out.push(compare(
                    format!("carleman_exponent r={r}"),
                    Ok(rep.carleman.fitted_exponent),
                    format!("> {}", sci(1.0 + EXPONENT_MARGIN)),
                    |_| rep.carleman.converges,
                ));
                out.push(Check {
                    name: format!("carleman_sum r={r} n=1..{DEFAULT_CARLEMAN_TERMS}"),
                    value: format!("{} + tail <= {}", sci(rep.carleman.partial_sum), sci(rep.carleman.tail_bound)),
                    threshold: "finite".into(),
                    passed: rep.carleman.partial_sum.is_finite() && rep.carleman.tail_bound.is_finite(),
                });
                out.push(at_least(
                    format!("log_convexity r={r} min_psi'' u=[-4,4]"),
                    Ok(rep.min_second_derivative),
                    -CONVEXITY_SLACK,
                ));
                out.push(Check {
                    name: format!("verdict r={r}"),
                    value: rep.verdict.to_string(),
                    threshold: Verdict::NonUnique.to_string(),
                    passed: rep.verdict == Verdict::NonUnique,
                });
            }
            Err(e) => out.push(compare(format!("nonuniqueness r={r}"), Err(e), "no error".into(), |_| false)),
        }
    }
    out
}

/// Runs the configured suite; the order of the checks is fixed.
pub fn collect_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let suites: &[fn(&VerifyConfig) -> Vec<Check>] = match cfg.suite {
        Suite::Eigen => &[eigen_suite],
        Suite::State => &[state_suite],
        Suite::Statistics => &[statistics_suite],
        Suite::Moments => &[moments_suite],
        Suite::Nonuniqueness => &[nonuniqueness_suite],
        Suite::All => &[eigen_suite, state_suite, statistics_suite, moments_suite, nonuniqueness_suite],
    };
    suites.iter().flat_map(|s| s(cfg)).collect()
}

pub fn render_report(checks: &[Check]) -> String {
    let mut out = String::from("check\tvalue\tthreshold\tstatus\n");
    for c in checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let value = c.value.replace(['\t', '\n'], " ");
        let _ = writeln!(out, "{}\t{}\t{}\t{}", c.name, value, c.threshold, status);
    }
    out
}

pub fn run_verify(cfg: &VerifyConfig) -> Outcome {
    let checks = collect_checks(cfg);
    let failed = checks.iter().filter(|c| !c.passed).count();
    eprintln!("{} checks, {failed} failed", checks.len());
    Outcome { document: render_report(&checks), passed: failed == 0 }
}
