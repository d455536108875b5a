//! Moment integrals `∫_0^∞ x^n W(x) dx` of an inverse Mellin transform.
//!
//! The integral is taken in `u = ln x` over a finite window with the
//! trapezoidal rule. Both discarded tails are bounded through
//! `W(x) ≤ A(c) x^{-c}` (see [`MellinBarnesSpec::modulus_integral`]), with a
//! `c` below `n + 1` near the origin and above it at infinity.

use super::moments::ln_biguint;
use super::weight::MellinBarnesSpec;
use crate::error::{Error, Result};
use crate::specfun::{digamma, CompensatedSum};
use num_traits::ToPrimitive;
use rayon::prelude::*;

/// Abscissae `c` tried for the bound on `[0, x_min]`.
const LOWER_CONTOURS: [f64; 5] = [0.02, 0.05, 0.1, 0.25, 0.5];

/// Offsets `c - (n + 1)` tried for the bound on `[x_max, ∞)`.
const UPPER_OFFSETS: [f64; 8] = [0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0];

/// Automatic window ends aim for tails this far below the tolerance.
const TAIL_SHARE: f64 = 1e-3;

/// Largest `|ln x|` the automatic window search will try.
const WINDOW_LIMIT: f64 = 80.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    /// Trapezoid step in `u = ln x`.
    pub u_step: f64,
    /// Lower end of the window; chosen from the tail bound when `None`.
    pub x_min: Option<f64>,
    /// Upper end of the window; chosen from the tail bound when `None`.
    pub x_max: Option<f64>,
    /// Largest accepted relative tail bound.
    pub tolerance: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { u_step: 0.05, x_min: None, x_max: None, tolerance: 1e-6 }
    }
}

/// Outcome of one moment integral.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentCheck {
    pub n: u64,
    pub integral: f64,
    pub exact: f64,
    /// `|integral - exact| / exact`.
    pub rel_error: f64,
    /// Bound on both discarded tails, relative to `exact`.
    pub tail_bound_rel: f64,
    pub x_min: f64,
    pub x_max: f64,
}

impl QuadConfig {
    fn validate(&self) -> Result<()> {
        if !(self.u_step > 0.0) || !self.u_step.is_finite() {
            return Err(Error::Configuration(format!("u_step must be positive, got {}", self.u_step)));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::Configuration(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        for x in [self.x_min, self.x_max].into_iter().flatten() {
            if !(x > 0.0) || !x.is_finite() {
                return Err(Error::Configuration(format!("window ends must be finite and positive, got {x}")));
            }
        }
        if let (Some(a), Some(b)) = (self.x_min, self.x_max) {
            if a >= b {
                return Err(Error::Configuration(format!("x_min = {a} must be below x_max = {b}")));
            }
        }
        Ok(())
    }
}

/// `ln` of the bound on `∫_0^{e^u} x^n W dx`, minimised over [`LOWER_CONTOURS`].
fn ln_lower_tail(spec: &MellinBarnesSpec, n: u64, u: f64) -> Result<f64> {
    let p = n as f64 + 1.0;
    let mut best = f64::INFINITY;
    for c in LOWER_CONTOURS.into_iter().filter(|&c| c < p) {
        let v = spec.ln_modulus_integral(c)? + (p - c) * u - (p - c).ln();
        best = best.min(v);
    }
    Ok(best)
}

/// `ln` of the bound on `∫_{e^u}^∞ x^n W dx`, minimised over [`UPPER_OFFSETS`].
fn ln_upper_tail(spec: &MellinBarnesSpec, n: u64, u: f64) -> Result<f64> {
    let p = n as f64 + 1.0;
    let mut best = f64::INFINITY;
    for d in UPPER_OFFSETS {
        let v = spec.ln_modulus_integral(p + d)? - d * u - d.ln();
        best = best.min(v);
    }
    Ok(best)
}

fn ln_exact(spec: &MellinBarnesSpec, n: u64) -> f64 {
    ln_biguint(&spec.exact_moment(n))
}

/// Smallest `u` on a unit lattice, walking outward from `start`, where
/// `bound(u)` drops below `ln_target`.
fn search_end(
    start: f64,
    direction: f64,
    ln_target: f64,
    mut bound: impl FnMut(f64) -> Result<f64>,
) -> Result<f64> {
    let mut u = start;
    while bound(u)? > ln_target {
        u += direction;
        if u.abs() > WINDOW_LIMIT {
            return Err(Error::Configuration(format!(
                "no integration window with |ln x| <= {WINDOW_LIMIT} meets the tail target"
            )));
        }
    }
    Ok(u)
}

/// Integrates `x^n W(x)` for every `n` in `ns` on one shared grid.
pub fn verify_moments(spec: &MellinBarnesSpec, ns: &[u64], cfg: &QuadConfig) -> Result<Vec<MomentCheck>> {
    spec.validate()?;
    cfg.validate()?;
    if ns.is_empty() {
        return Ok(Vec::new());
    }
    let n_lo = *ns.iter().min().unwrap();
    let n_hi = *ns.iter().max().unwrap();
    let ln_target = (cfg.tolerance * TAIL_SHARE).ln();

    let u_min = match cfg.x_min {
        Some(x) => x.ln(),
        None => search_end(0.0, -1.0, ln_target, |u| {
            Ok(ln_lower_tail(spec, n_lo, u)? - ln_exact(spec, n_lo))
        })?,
    };
    let u_max = match cfg.x_max {
        Some(x) => x.ln(),
        None => {
            // the mass of x^n W sits near ln x = Σ m ψ(n + 1 + a)
            let mut peak = 0.0;
            for &(a, m) in &spec.gamma_shifts {
                peak += m as f64 * digamma(n_hi as f64 + 1.0 + a as f64)?;
            }
            let start = peak.ceil().max(0.0);
            search_end(start, 1.0, ln_target, |u| Ok(ln_upper_tail(spec, n_hi, u)? - ln_exact(spec, n_hi)))?
        }
    };
    if u_min >= u_max {
        return Err(Error::Configuration(format!("empty integration window [{u_min}, {u_max}] in ln x")));
    }

    let steps = ((u_max - u_min) / cfg.u_step).ceil() as usize;
    let h = (u_max - u_min) / steps as f64;
    let grid: Vec<f64> = (0..=steps).map(|i| u_min + i as f64 * h).collect();
    let ln_w: Vec<f64> = grid
        .par_iter()
        .map(|&u| spec.eval(u.exp()).map(|w| w.ln_value))
        .collect::<Result<_>>()?;

    let mut out = Vec::with_capacity(ns.len());
    for &n in ns {
        let p = n as f64 + 1.0;
        let mut acc = CompensatedSum::new();
        for (i, (&u, &lw)) in grid.iter().zip(&ln_w).enumerate() {
            let end_weight = if i == 0 || i == steps { 0.5 } else { 1.0 };
            acc.add(end_weight * (p * u + lw).exp());
        }
        let integral = acc.value() * h;
        let exact_int = spec.exact_moment(n);
        let exact = exact_int.to_f64().unwrap_or(f64::INFINITY);
        let ln_ex = ln_biguint(&exact_int);
        let tail_bound_rel = (ln_lower_tail(spec, n, u_min)? - ln_ex).exp()
            + (ln_upper_tail(spec, n, u_max)? - ln_ex).exp();
        if tail_bound_rel > cfg.tolerance {
            return Err(Error::Accuracy { estimate: tail_bound_rel, tolerance: cfg.tolerance });
        }
        out.push(MomentCheck {
            n,
            integral,
            exact,
            rel_error: (integral - exact).abs() / exact,
            tail_bound_rel,
            x_min: u_min.exp(),
            x_max: u_max.exp(),
        });
    }
    Ok(out)
}

/// Single-moment form of [`verify_moments`].
pub fn verify_moment(spec: &MellinBarnesSpec, n: u64, cfg: &QuadConfig) -> Result<MomentCheck> {
    Ok(verify_moments(spec, &[n], cfg)?.remove(0))
}
