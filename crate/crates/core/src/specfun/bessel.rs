//! Modified Bessel function `I_1` by its ascending series.

use super::series::RatioSeries;
use crate::error::{Error, Result};

/// `I_1(y) = Σ_k (y/2)^{2k+1} / (k! (k+1)!)` for `y >= 0`.
pub fn bessel_i1(y: f64) -> Result<f64> {
    if !(y >= 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("bessel_i1 requires finite y >= 0, got {y}")));
    }
    let half = 0.5 * y;
    let series = RatioSeries::new(1.0, |k| 1.0 / (k as f64 * (k as f64 + 1.0)));
    Ok(half * series.sum(half * half)?)
}
