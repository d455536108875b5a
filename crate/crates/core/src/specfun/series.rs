//! Power series defined by their leading coefficient and successive
//! coefficient ratios, summed with compensation and a relative stopping rule.

use super::summation::CompensatedSum;
use crate::error::{Error, Result};

/// Hard cap on the number of terms; exceeding it is a convergence error.
pub const TERM_CAP: usize = 10_000;

/// A term is negligible once it is below this fraction of the running sum.
pub const RELATIVE_CUTOFF: f64 = 1e-17;

/// Falling factorial `m (m-1) ... (m-p+1)` as a float; zero when `p > m`.
pub fn falling_factorial(m: usize, p: usize) -> f64 {
    if p > m {
        return 0.0;
    }
    ((m + 1 - p)..=m).fold(1.0, |acc, k| acc * k as f64)
}

/// `Σ_n c_n x^n` with `c_0 = leading` and `c_n = c_{n-1} * ratio(n)`.
///
/// Every coefficient ratio used in this crate is positive and decreasing, so
/// once terms start falling they keep falling and the relative stopping rule
/// is safe.
#[derive(Clone)]
pub struct RatioSeries<R> {
    leading: f64,
    ratio: R,
}

impl<R: Fn(usize) -> f64> RatioSeries<R> {
    pub fn new(leading: f64, ratio: R) -> Self {
        Self { leading, ratio }
    }

    /// Coefficient `c_n` by repeated ratios.
    pub fn coefficient(&self, n: usize) -> f64 {
        (1..=n).fold(self.leading, |c, k| c * (self.ratio)(k))
    }

    /// Term `c_n x^n`, accumulated ratio by ratio so that it stays finite
    /// where `x^n` alone would overflow.
    pub fn term(&self, n: usize, x: f64) -> f64 {
        (1..=n).fold(self.leading, |t, k| t * ((self.ratio)(k) * x))
    }

    /// `Σ_n c_n m(n) x^n`, stopping when two consecutive terms fall below
    /// [`RELATIVE_CUTOFF`] of the running sum.
    pub fn weighted_sum(&self, x: f64, multiplier: impl Fn(usize) -> f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("series argument {x} is not finite")));
        }
        let mut acc = CompensatedSum::new();
        let mut base = self.leading;
        let mut quiet = 0;
        for n in 0..TERM_CAP {
            if n > 0 {
                base *= (self.ratio)(n) * x;
            }
            if base == 0.0 {
                return Ok(acc.value());
            }
            let term = base * multiplier(n);
            acc.add(term);
            if term.abs() < RELATIVE_CUTOFF * acc.value().abs() {
                quiet += 1;
                if quiet == 2 {
                    return Ok(acc.value());
                }
            } else {
                quiet = 0;
            }
        }
        Err(Error::Convergence { terms: TERM_CAP })
    }

    pub fn sum(&self, x: f64) -> Result<f64> {
        self.weighted_sum(x, |_| 1.0)
    }

    /// `Σ_n c_n (n+offset)_p x^n` where `(m)_p` is the falling factorial.
    ///
    /// This is `x^{p-offset} · d^p/dx^p [x^offset Σ c_n x^n]` with the power
    /// of `x` folded into each term, so it stays finite at `x = 0`.
    pub fn reduced_derivative(&self, offset: usize, order: usize, x: f64) -> Result<f64> {
        self.weighted_sum(x, |n| falling_factorial(n + offset, order))
    }

    /// `d^p/dx^p [x^offset Σ c_n x^n]`, differentiated term by term.
    pub fn derivative(&self, offset: usize, order: usize, x: f64) -> Result<f64> {
        if x == 0.0 {
            if order < offset {
                return Ok(0.0);
            }
            let n = order - offset;
            return Ok(self.coefficient(n) * falling_factorial(order, order));
        }
        let reduced = self.reduced_derivative(offset, order, x)?;
        Ok(reduced * x.powi(offset as i32 - order as i32))
    }
}
