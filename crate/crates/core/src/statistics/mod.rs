//! Photon statistics of `|z>_r`: number distribution, moments, Mandel
//! parameter, metric factor and quadrature variances.
//!
//! Everything is expressed through the weights `w_n = ρ_r(0) / ρ_r(n)`, the
//! coefficients of `ρ_r(0) N_r(x)`. The number state `|n+r>` carries
//! probability `w_n x^n / Σ_m w_m x^m`.

use crate::error::{Error, Result};
use crate::fockstate::weight_series;
use crate::momentproblem::rho_ratio_f64;
use crate::specfun::series::{falling_factorial, RatioSeries, RELATIVE_CUTOFF, TERM_CAP};
use crate::specfun::CompensatedSum;
use num_complex::Complex64;

/// Summary of the state characteristics at one point `x = |z|^2`.
///
/// Variances are in units where the vacuum has `(ΔX)^2 = (ΔP)^2 = 1/2`;
/// they are evaluated at the real label `z = sqrt(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatisticsReport {
    pub r: u32,
    pub x: f64,
    pub mean_n: f64,
    pub mean_n2: f64,
    pub mandel_q: f64,
    pub metric_omega: f64,
    pub var_x: f64,
    pub var_p: f64,
}

impl StatisticsReport {
    pub fn new(r: u32, x: f64) -> Result<Self> {
        let (var_x, var_p) = quadrature_variances(r, Complex64::new(x.sqrt(), 0.0))?;
        Ok(Self {
            r,
            x,
            mean_n: mean_photon_number(r, x)?,
            mean_n2: moments_np(r, x, 2)?,
            mandel_q: mandel_q(r, x)?,
            metric_omega: metric_omega(r, x)?,
            var_x,
            var_p,
        })
    }
}

fn check(r: u32, x: f64) -> Result<()> {
    if r == 0 {
        return Err(Error::Domain("r must be >= 1".into()));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("x = |z|^2 must be finite and >= 0, got {x}")));
    }
    Ok(())
}

/// `P_r(k, x) = x^{k-r} / (N_r(x) ρ_r(k-r))` for `k >= r`.
pub fn probability_p(r: u32, k: u64, x: f64) -> Result<f64> {
    check(r, x)?;
    if k < r as u64 {
        return Err(Error::Domain(format!("P_r(k) is only defined for k >= r (k = {k}, r = {r})")));
    }
    let series = weight_series(r);
    let n = (k - r as u64) as usize;
    let total = series.sum(x)?;
    Ok(series.term(n, x) / total)
}

/// `<n^p>` in `|z>_r`.
pub fn moments_np(r: u32, x: f64, p: u32) -> Result<f64> {
    check(r, x)?;
    let series = weight_series(r);
    let total = series.sum(x)?;
    let weighted = series.weighted_sum(x, |n| ((n + r as usize) as f64).powi(p as i32))?;
    Ok(weighted / total)
}

/// `n̄_r(x) = Σ_k k P_r(k, x)`; exactly `r` at `x = 0`.
pub fn mean_photon_number(r: u32, x: f64) -> Result<f64> {
    moments_np(r, x, 1)
}

/// `<(a†)^p a^p> = x^{p-r} / N_r(x) · d^p/dx^p [x^r N_r(x)]`.
pub fn expectation_pp(r: u32, x: f64, p: u32) -> Result<f64> {
    check(r, x)?;
    let series = weight_series(r);
    let total = series.sum(x)?;
    Ok(series.reduced_derivative(r as usize, p as usize, x)? / total)
}

/// Amplitudes `sqrt(w_n x^n)` up to the point where their squares are
/// negligible against the accumulated norm.
fn amplitudes(r: u32, x: f64) -> Result<Vec<f64>> {
    let mut out = vec![1.0];
    let mut norm = 1.0;
    let mut quiet = 0;
    for n in 1..TERM_CAP {
        let a = out[n - 1] * (x / rho_ratio_f64(r, n)).sqrt();
        if a == 0.0 {
            return Ok(out);
        }
        out.push(a);
        norm += a * a;
        if a * a < RELATIVE_CUTOFF * norm {
            quiet += 1;
            if quiet == 2 {
                return Ok(out);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Convergence { terms: TERM_CAP })
}

/// `<(a†)^p a^s>` in `|z>_r`.
///
/// Summed as `Σ_n conj(c_{n+p-s}) c_n sqrt((n+r)_s (n+r-s+p)_p)` over the
/// Fock coefficients, with `(m)_k` the falling factorial; only the common
/// phase `exp(i (s-p) arg z)` depends on the argument of `z`.
pub fn expectation_ps(r: u32, z: Complex64, p: u32, s: u32) -> Result<Complex64> {
    let x = z.norm_sqr();
    check(r, x)?;
    let amps = amplitudes(r, x)?;
    let total = weight_series(r).sum(x)?;
    let (p, s, r) = (p as i64, s as i64, r as i64);
    let mut acc = CompensatedSum::new();
    for n in 0..amps.len() as i64 {
        let m = n + p - s;
        if m < 0 || n + r - s < 0 || m >= amps.len() as i64 {
            continue;
        }
        let element = falling_factorial((n + r) as usize, s as usize)
            * falling_factorial((m + r) as usize, p as usize);
        acc.add(amps[n as usize] * amps[m as usize] * element.sqrt());
    }
    let phase = if x == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        (z / z.norm()).powi((s - p) as i32)
    };
    Ok(phase * (acc.value() / total))
}

/// Mandel parameter `x [F''/F' - F'/F]` with `F = x^r N_r(x)`, derivatives
/// taken term by term. At `x = 0` this is the series limit `-1`.
pub fn mandel_q(r: u32, x: f64) -> Result<f64> {
    check(r, x)?;
    let series = weight_series(r);
    let g0 = series.reduced_derivative(r as usize, 0, x)?;
    let g1 = series.reduced_derivative(r as usize, 1, x)?;
    let g2 = series.reduced_derivative(r as usize, 2, x)?;
    Ok(g2 / g1 - g1 / g0)
}

/// Mandel parameter from the number moments, `(<n^2> - <n>^2) / <n> - 1`.
pub fn mandel_q_from_moments(r: u32, x: f64) -> Result<f64> {
    let m1 = moments_np(r, x, 1)?;
    let m2 = moments_np(r, x, 2)?;
    Ok((m2 - m1 * m1) / m1 - 1.0)
}

/// Metric factor `[x N'(x) / N(x)]'` of any normalization series.
pub fn metric_factor<R: Fn(usize) -> f64>(series: &RatioSeries<R>, x: f64) -> Result<f64> {
    let d0 = series.derivative(0, 0, x)?;
    let d1 = series.derivative(0, 1, x)?;
    let d2 = series.derivative(0, 2, x)?;
    let log_slope = d1 / d0;
    Ok(log_slope + x * d2 / d0 - x * log_slope * log_slope)
}

/// `ω_r(x) = [x N'_r(x) / N_r(x)]'`.
pub fn metric_omega(r: u32, x: f64) -> Result<f64> {
    check(r, x)?;
    metric_factor(&weight_series(r), x)
}

/// `ω` for the standard coherent states (`N = e^x`); identically one.
pub fn metric_omega_standard(x: f64) -> Result<f64> {
    metric_factor(&RatioSeries::new(1.0, |n| 1.0 / n as f64), x)
}

/// `((ΔX)^2, (ΔP)^2)` with `X = (a + a†)/√2`, `P = -i (a - a†)/√2`.
pub fn quadrature_variances(r: u32, z: Complex64) -> Result<(f64, f64)> {
    let a = expectation_ps(r, z, 0, 1)?;
    let ad = expectation_ps(r, z, 1, 0)?;
    let a2 = expectation_ps(r, z, 0, 2)?;
    let ad2 = expectation_ps(r, z, 2, 0)?;
    let n = expectation_ps(r, z, 1, 1)?;
    let common = 1.0 + 2.0 * n - 2.0 * a * ad;
    let var_x = 0.5 * (common + a2 + ad2 - a * a - ad * ad);
    let var_p = 0.5 * (common - a2 - ad2 + a * a + ad * ad);
    Ok((var_x.re, var_p.re))
}

/// Poisson weight `e^{-x} x^k / k!` of the standard coherent state.
pub fn standard_cs_probability(k: u64, x: f64) -> f64 {
    if x == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    let ln = k as f64 * x.ln() - x - crate::specfun::ln_factorial(k);
    ln.exp()
}
