//! Log-gamma on the complex plane and the real digamma function.
//!
//! Both use the shift-then-Stirling scheme: the argument is moved to
//! `Re s >= SHIFT_TARGET` with the recurrence `Γ(s+1) = s Γ(s)` and the
//! asymptotic series is summed there, where its remainder is below 1e-19.

use super::summation::{CompensatedComplexSum, CompensatedSum};
use crate::error::{Error, Result};
use num_complex::Complex64;

const SHIFT_TARGET: f64 = 12.0;

/// `B_{2k} / (2k (2k-1))` for k = 1..8.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// `B_{2k} / (2k)` for k = 1..8.
const DIGAMMA_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

fn is_pole(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re == s.re.floor()
}

/// `ln Γ(s)` continued analytically from the positive real axis.
///
/// The real part is `ln |Γ(s)|`; the imaginary part is continuous in `s` away
/// from the negative real axis, so `exp(log_gamma(s)) == Γ(s)` everywhere.
pub fn log_gamma(s: Complex64) -> Result<Complex64> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain(format!("log_gamma of non-finite argument {s}")));
    }
    if is_pole(s) {
        return Err(Error::Pole(s.re));
    }
    let mut z = s;
    let mut shifted = CompensatedComplexSum::new();
    while z.re < SHIFT_TARGET {
        shifted.add(z.ln());
        z += 1.0;
    }
    Ok(stirling(z) - shifted.value())
}

/// `ln Γ(x)` for real `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x <= 0.0 {
        if x == x.floor() {
            return Err(Error::Pole(x));
        }
        return Err(Error::Domain(format!("ln_gamma of negative argument {x}")));
    }
    Ok(log_gamma(Complex64::new(x, 0.0))?.re)
}

/// `ln n!`, exact to rounding for every `n`.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    // n + 1 >= 3 is never a pole.
    ln_gamma(n as f64 + 1.0).unwrap_or(f64::NAN)
}

fn stirling(z: Complex64) -> Complex64 {
    let ln_z = z.ln();
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut power = inv;
    let mut series = CompensatedComplexSum::new();
    for c in STIRLING_COEFFS {
        series.add(power * c);
        power *= inv2;
    }
    (z - 0.5) * ln_z - z + HALF_LN_TWO_PI + series.value()
}

/// Digamma `ψ(x) = Γ'(x)/Γ(x)` for real `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("digamma requires x > 0, got {x}")));
    }
    let mut z = x;
    let mut shifted = CompensatedSum::new();
    while z < SHIFT_TARGET {
        shifted.add(1.0 / z);
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    let mut power = inv2;
    let mut series = CompensatedSum::new();
    for c in DIGAMMA_COEFFS {
        series.add(c * power);
        power *= inv2;
    }
    Ok(z.ln() - 0.5 / z - series.value() - shifted.value())
}
