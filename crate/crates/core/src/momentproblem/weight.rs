//! Inverse Mellin transform of a product of Gamma factors,
//!
//! ```text
//! W(x) = (1/2πi) ∫_{c-i∞}^{c+i∞} Π_j Γ(s + a_j)^{m_j} x^{-s} ds,
//! ```
//!
//! evaluated by the trapezoidal rule on the vertical line `Re s = c`. The
//! integrand decays like `exp(-K π |t| / 2)` with `K = Σ m_j`, so the rule
//! converges geometrically in the step.

use crate::error::{Error, Result};
use crate::specfun::{digamma, log_gamma, CompensatedSum};
use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::One;

/// Default quadrature step along the contour.
pub const DEFAULT_STEP: f64 = 0.05;

/// Contour truncation: stop once the integrand envelope drops below this
/// fraction of its value on the real axis.
pub const ENVELOPE_CUTOFF: f64 = 1e-18;

/// Largest accepted relative estimate for the truncated contour tail.
pub const TAIL_TOLERANCE: f64 = 1e-10;

/// Placement of the vertical integration line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Contour {
    /// `Re s = c`, independent of `x`.
    Fixed(f64),
    /// Through the real saddle point of `M(s) x^{-s}`, but never left of `min_re`.
    Saddle { min_re: f64 },
}

/// Gamma-factor multiset and contour parameters of a Mellin–Barnes integral.
#[derive(Debug, Clone, PartialEq)]
pub struct MellinBarnesSpec {
    /// `(shift, multiplicity)` pairs encoding `Π Γ(s + shift)^multiplicity`.
    pub gamma_shifts: Vec<(u32, u32)>,
    pub contour: Contour,
    /// Truncation height `T`; chosen from [`ENVELOPE_CUTOFF`] when `None`.
    pub im_cutoff: Option<f64>,
    pub step: f64,
}

/// A weight value together with the quadrature diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightValue {
    pub value: f64,
    /// `ln value`, finite even where `value` underflows.
    pub ln_value: f64,
    pub contour_re: f64,
    pub im_cutoff: f64,
    /// Estimated contribution of `|t| > T`, relative to the result.
    pub tail_estimate: f64,
}

impl MellinBarnesSpec {
    /// `[Π_{k=0}^{r-1} Γ(s+k)]^2 Γ(s+r)`: shifts `0..r` twice each, `r` once.
    pub fn for_order(r: u32) -> Self {
        let mut gamma_shifts: Vec<(u32, u32)> = (0..r).map(|k| (k, 2)).collect();
        gamma_shifts.push((r, 1));
        Self {
            gamma_shifts,
            contour: Contour::Saddle { min_re: 0.5 },
            im_cutoff: None,
            step: DEFAULT_STEP,
        }
    }

    pub fn with_contour(mut self, contour: Contour) -> Self {
        self.contour = contour;
        self
    }

    pub fn with_im_cutoff(mut self, im_cutoff: Option<f64>) -> Self {
        self.im_cutoff = im_cutoff;
        self
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.step = step;
        self
    }

    /// Total number of Gamma factors, `Σ multiplicity`.
    pub fn factor_count(&self) -> u32 {
        self.gamma_shifts.iter().map(|(_, m)| m).sum()
    }

    fn min_shift(&self) -> f64 {
        self.gamma_shifts.iter().map(|(a, _)| *a).min().unwrap_or(0) as f64
    }

    pub fn validate(&self) -> Result<()> {
        if self.gamma_shifts.is_empty() || self.gamma_shifts.iter().any(|(_, m)| *m == 0) {
            return Err(Error::Configuration("need at least one Gamma factor with positive multiplicity".into()));
        }
        let rightmost_pole = 0.0 - self.min_shift();
        let c = match self.contour {
            Contour::Fixed(c) => c,
            Contour::Saddle { min_re } => min_re,
        };
        if !(c > rightmost_pole) || !c.is_finite() {
            return Err(Error::Configuration(format!(
                "contour Re s = {c} must lie right of the pole at s = {rightmost_pole}"
            )));
        }
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::Configuration(format!("quadrature step must be positive, got {}", self.step)));
        }
        if let Some(t) = self.im_cutoff {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::Configuration(format!("contour height must be positive, got {t}")));
            }
        }
        Ok(())
    }

    /// `ln Π Γ(s + shift)^mult`, sharing one log-gamma call across shifts.
    pub fn log_mellin(&self, s: Complex64) -> Result<Complex64> {
        let base_shift = self.min_shift() as u32;
        let base = log_gamma(s + base_shift as f64)?;
        let mut total = Complex64::new(0.0, 0.0);
        for &(shift, mult) in &self.gamma_shifts {
            let mut v = base;
            for j in base_shift..shift {
                v += (s + j as f64).ln();
            }
            total += v * mult as f64;
        }
        Ok(total)
    }

    /// Exact Mellin transform at `s = n + 1`, `Π ((n + shift)!)^mult`.
    pub fn exact_moment(&self, n: u64) -> BigUint {
        self.gamma_shifts.iter().fold(BigUint::one(), |acc, &(shift, mult)| {
            let f = (2..=n + shift as u64).fold(BigUint::one(), |a, k| a * k);
            acc * f.pow(mult)
        })
    }

    fn log_mellin_real_derivative(&self, s: f64) -> Result<f64> {
        let mut acc = 0.0;
        for &(shift, mult) in &self.gamma_shifts {
            acc += mult as f64 * digamma(s + shift as f64)?;
        }
        Ok(acc)
    }

    /// Real saddle point of `M(s) x^{-s}`, i.e. the root of `Σ m ψ(s + a) = ln x`.
    pub fn saddle_point(&self, ln_x: f64) -> Result<f64> {
        let floor = -self.min_shift();
        let mut lo = floor + 1e-6;
        if self.log_mellin_real_derivative(lo)? >= ln_x {
            return Ok(lo);
        }
        let mut hi = floor + 1.0;
        while self.log_mellin_real_derivative(hi)? < ln_x {
            lo = hi;
            hi = floor + 2.0 * (hi - floor);
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if self.log_mellin_real_derivative(mid)? < ln_x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    fn contour_for(&self, ln_x: f64) -> Result<f64> {
        match self.contour {
            Contour::Fixed(c) => Ok(c),
            Contour::Saddle { min_re } => Ok(self.saddle_point(ln_x)?.max(min_re)),
        }
    }

    /// `(1/π) ∫_0^∞ |M(c + it)| dt`, which bounds `x^c W(x)` for every `x > 0`.
    pub fn modulus_integral(&self, c: f64) -> Result<f64> {
        Ok(self.ln_modulus_integral(c)?.exp())
    }

    /// Logarithm of [`Self::modulus_integral`], finite where the value overflows.
    pub fn ln_modulus_integral(&self, c: f64) -> Result<f64> {
        let base = self.log_mellin(Complex64::new(c, 0.0))?.re;
        let h = self.step;
        let mut acc = CompensatedSum::new();
        acc.add(0.5);
        let mut k = 1;
        loop {
            let t = k as f64 * h;
            let env = (self.log_mellin(Complex64::new(c, t))?.re - base).exp();
            acc.add(env);
            if env < ENVELOPE_CUTOFF {
                break;
            }
            k += 1;
        }
        Ok(base + (acc.value() * h / std::f64::consts::PI).ln())
    }

    /// Evaluates the inverse Mellin transform at `x > 0`.
    pub fn eval(&self, x: f64) -> Result<WeightValue> {
        self.validate()?;
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::Domain(format!("weight is defined for finite x > 0, got {x}")));
        }
        let ln_x = x.ln();
        let c = self.contour_for(ln_x)?;
        let phase = |s: Complex64| -> Result<Complex64> { Ok(self.log_mellin(s)? - s * ln_x) };
        let base = phase(Complex64::new(c, 0.0))?.re;
        let h = self.step;

        let mut acc = CompensatedSum::new();
        acc.add(0.5);
        let mut k = 1usize;
        let (cutoff, last_envelope) = loop {
            let t = k as f64 * h;
            let e = (phase(Complex64::new(c, t))? - base).exp();
            let envelope = e.norm();
            if let Some(limit) = self.im_cutoff {
                if t > limit {
                    break (t - h, envelope);
                }
            }
            acc.add(e.re);
            if self.im_cutoff.is_none() && envelope < ENVELOPE_CUTOFF {
                break (t, envelope);
            }
            k += 1;
        };

        let scaled = acc.value() * h / std::f64::consts::PI;
        let decay_rate = self.factor_count() as f64 * std::f64::consts::FRAC_PI_2;
        let tail_estimate = last_envelope / decay_rate / std::f64::consts::PI / scaled.abs();
        if tail_estimate > TAIL_TOLERANCE {
            return Err(Error::Accuracy { estimate: tail_estimate, tolerance: TAIL_TOLERANCE });
        }
        Ok(WeightValue {
            value: base.exp() * scaled,
            ln_value: base + scaled.ln(),
            contour_re: c,
            im_cutoff: cutoff,
            tail_estimate,
        })
    }
}

/// Value of the inverse Mellin transform described by `spec` at `x > 0`.
pub fn weight_w(spec: &MellinBarnesSpec, x: f64) -> Result<f64> {
    Ok(spec.eval(x)?.value)
}
