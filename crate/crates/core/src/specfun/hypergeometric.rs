//! `0F_q([], [b_1..b_q], x)` with positive-integer lower parameters.

use super::series::{RatioSeries, RELATIVE_CUTOFF, TERM_CAP};
use super::summation::CompensatedComplexSum;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Lower parameters and argument of a `0F_q` series (the upper list is empty).
#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricSpec<T = f64> {
    pub lower_params: Vec<u32>,
    pub argument: T,
}

impl<T> HypergeometricSpec<T> {
    pub fn new(lower_params: Vec<u32>, argument: T) -> Self {
        Self { lower_params, argument }
    }

    fn validate(&self) -> Result<()> {
        if self.lower_params.is_empty() {
            return Err(Error::Domain("0F_q needs at least one lower parameter".into()));
        }
        if self.lower_params.contains(&0) {
            return Err(Error::Domain("lower parameters must be >= 1".into()));
        }
        Ok(())
    }

    /// Ratio of consecutive coefficients, `1 / (n Π_j (b_j + n - 1))`.
    fn ratio(&self, n: usize) -> f64 {
        let denom = self
            .lower_params
            .iter()
            .fold(n as f64, |acc, &b| acc * (b as f64 + n as f64 - 1.0));
        1.0 / denom
    }
}

impl HypergeometricSpec<f64> {
    pub fn eval(&self) -> Result<f64> {
        self.validate()?;
        RatioSeries::new(1.0, |n| self.ratio(n)).sum(self.argument)
    }

    /// The derivative `d/dx 0F_q(b; x) = 0F_q(b+1; x) / Π b_j`.
    pub fn derivative(&self) -> Result<f64> {
        self.validate()?;
        let shifted = HypergeometricSpec::new(
            self.lower_params.iter().map(|b| b + 1).collect(),
            self.argument,
        );
        let scale: f64 = self.lower_params.iter().map(|&b| b as f64).product();
        Ok(shifted.eval()? / scale)
    }
}

impl HypergeometricSpec<Complex64> {
    pub fn eval(&self) -> Result<Complex64> {
        self.validate()?;
        let x = self.argument;
        if !x.re.is_finite() || !x.im.is_finite() {
            return Err(Error::Domain(format!("series argument {x} is not finite")));
        }
        let mut acc = CompensatedComplexSum::new();
        let mut term = Complex64::new(1.0, 0.0);
        let mut quiet = 0;
        for n in 0..TERM_CAP {
            if n > 0 {
                term *= x * self.ratio(n);
            }
            if term == Complex64::new(0.0, 0.0) {
                return Ok(acc.value());
            }
            acc.add(term);
            if term.norm() < RELATIVE_CUTOFF * acc.value().norm() {
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
}

/// Real `0F_q` evaluation.
pub fn eval_0fq(spec: &HypergeometricSpec<f64>) -> Result<f64> {
    spec.eval()
}

/// Complex-argument `0F_q` evaluation.
pub fn eval_0fq_complex(spec: &HypergeometricSpec<Complex64>) -> Result<Complex64> {
    spec.eval()
}
