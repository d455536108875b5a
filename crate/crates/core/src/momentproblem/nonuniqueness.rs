//! Sufficient conditions for an indeterminate Stieltjes moment problem:
//! a convergent Carleman-type sum `Σ ρ(n)^{-1/(2n)}` together with a
//! weight whose `ψ(u) = -ln W(e^u)` is convex.

use super::moments::{ln_biguint, rho, rho_ratio};
use super::weight::MellinBarnesSpec;
use crate::error::{Error, Result};
use crate::specfun::CompensatedSum;
use rayon::prelude::*;

/// Default number of Carleman terms.
pub const DEFAULT_CARLEMAN_TERMS: u64 = 1000;

/// A fitted tail exponent must exceed one by this much to count as convergent.
pub const EXPONENT_MARGIN: f64 = 0.1;

/// Numerical slack on the sign of `ψ''`.
pub const CONVEXITY_SLACK: f64 = 1e-6;

/// Default log-convexity grid: `u = ln x` from -4 to 4.
pub const DEFAULT_U_RANGE: (f64, f64) = (-4.0, 4.0);
pub const DEFAULT_U_STEP: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct CarlemanReport {
    pub r: u32,
    pub n_max: u64,
    /// `Σ_{n=1}^{n_max} ρ(n)^{-1/(2n)}`.
    pub partial_sum: f64,
    /// Upper bound on `Σ_{n>n_max}`.
    pub tail_bound: f64,
    /// `α` in `term ~ n^{-α}`, fitted on `[n_max/10, n_max]`.
    pub fitted_exponent: f64,
    pub converges: bool,
}

/// Carleman-type partial sum with a tail bound.
///
/// The bound uses `ρ_r(n) ≥ (n!)^{2r+1} ≥ (n/e)^{(2r+1)n}`, so each term is at
/// most `(e/n)^a` with `a = r + 1/2`.
pub fn carleman_sum(r: u32, n_max: u64) -> Result<CarlemanReport> {
    if r == 0 {
        return Err(Error::Domain("order r must be positive".into()));
    }
    if n_max < 10 {
        return Err(Error::Configuration(format!("need at least 10 Carleman terms, got {n_max}")));
    }
    let mut moment = rho(r, 0);
    let mut ln_terms = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        moment *= rho_ratio(r, n);
        ln_terms.push(-ln_biguint(&moment) / (2.0 * n as f64));
    }
    let partial_sum: f64 = ln_terms.iter().map(|l| l.exp()).collect::<CompensatedSum>().value();

    let a = r as f64 + 0.5;
    let tail_bound = (a + (1.0 - a) * (n_max as f64).ln()).exp() / (a - 1.0);

    let first = (n_max / 10).max(1);
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    let count = (n_max - first + 1) as f64;
    for n in first..=n_max {
        let x = (n as f64).ln();
        let y = ln_terms[(n - 1) as usize];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    let fitted_exponent = -slope;

    Ok(CarlemanReport {
        r,
        n_max,
        partial_sum,
        tail_bound,
        fitted_exponent,
        converges: fitted_exponent > 1.0 + EXPONENT_MARGIN,
    })
}

/// `x = e^u` on the default grid.
pub fn default_convexity_grid() -> Vec<f64> {
    let (lo, hi) = DEFAULT_U_RANGE;
    let steps = ((hi - lo) / DEFAULT_U_STEP).round() as usize;
    (0..=steps).map(|i| (lo + i as f64 * DEFAULT_U_STEP).exp()).collect()
}

/// Minimum central-difference `ψ''(u)` of `ψ(u) = -ln W(e^u)`, with `W`
/// evaluated from `spec` at each point of `x_grid`.
pub fn log_convexity_check_with(spec: &MellinBarnesSpec, x_grid: &[f64]) -> Result<f64> {
    if x_grid.len() < 3 {
        return Err(Error::Configuration(format!(
            "second differences need at least 3 grid points, got {}",
            x_grid.len()
        )));
    }
    if x_grid.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
        return Err(Error::Configuration("grid points must be finite and positive".into()));
    }
    let u: Vec<f64> = x_grid.iter().map(|x| x.ln()).collect();
    if u.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Configuration("grid must be strictly increasing".into()));
    }
    let (lo, hi) = DEFAULT_U_RANGE;
    let max_step = u.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    // the last ulp of the end points is lost in exp/ln
    if u[0] > lo + 1e-12 || u[u.len() - 1] < hi - 1e-12 || max_step > 0.1 + 1e-12 {
        return Err(Error::Configuration(format!(
            "grid must cover ln x in [{lo}, {hi}] with step at most 0.1; got [{}, {}] with step {max_step}",
            u[0],
            u[u.len() - 1]
        )));
    }
    let psi: Vec<f64> = x_grid
        .par_iter()
        .map(|&x| spec.eval(x).map(|w| -w.ln_value))
        .collect::<Result<_>>()?;
    let mut min = f64::INFINITY;
    for i in 1..u.len() - 1 {
        let hm = u[i] - u[i - 1];
        let hp = u[i + 1] - u[i];
        let d2 = 2.0 * ((psi[i + 1] - psi[i]) / hp - (psi[i] - psi[i - 1]) / hm) / (hp + hm);
        min = min.min(d2);
    }
    Ok(min)
}

/// [`log_convexity_check_with`] for the default weight of order `r`.
pub fn log_convexity_check(r: u32, x_grid: &[f64]) -> Result<f64> {
    if r == 0 {
        return Err(Error::Domain("order r must be positive".into()));
    }
    log_convexity_check_with(&MellinBarnesSpec::for_order(r), x_grid)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Both sufficient conditions hold.
    NonUnique,
    /// At least one condition failed; nothing follows.
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::NonUnique => "non-unique",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonUniquenessReport {
    pub carleman: CarlemanReport,
    pub min_second_derivative: f64,
    pub log_convex: bool,
    pub verdict: Verdict,
}

/// Runs both conditions for the weight described by `spec` (of order `r`).
pub fn non_uniqueness_with(
    r: u32,
    spec: &MellinBarnesSpec,
    n_max: u64,
    x_grid: &[f64],
) -> Result<NonUniquenessReport> {
    let carleman = carleman_sum(r, n_max)?;
    let min_second_derivative = log_convexity_check_with(spec, x_grid)?;
    let log_convex = min_second_derivative >= -CONVEXITY_SLACK;
    let verdict = if carleman.converges && log_convex { Verdict::NonUnique } else { Verdict::Inconclusive };
    Ok(NonUniquenessReport { carleman, min_second_derivative, log_convex, verdict })
}

/// [`non_uniqueness_with`] at the default settings.
pub fn non_uniqueness(r: u32) -> Result<NonUniquenessReport> {
    if r == 0 {
        return Err(Error::Domain("order r must be positive".into()));
    }
    non_uniqueness_with(r, &MellinBarnesSpec::for_order(r), DEFAULT_CARLEMAN_TERMS, &default_convexity_grid())
}

#[cfg(test)]
mod tests;
