//! Truncated Fock-space representation of the states `|z>_r`.
//!
//! `|z>_r = N_r(|z|^2)^{-1/2} Σ_n z^n / sqrt(ρ_r(n)) |n+r>`, so the lowest
//! occupied basis state is `|r>`. Operator actions are applied coefficient
//! by coefficient.

mod stirling;

pub use stirling::{falling_product, stirling_f, stirling_f_unsigned, StirlingTable};

use crate::error::{Error, Result};
use crate::momentproblem::{ln_biguint, rho, rho_ratio_f64};
use crate::specfun::series::{RatioSeries, TERM_CAP};
use crate::specfun::{CompensatedSum, HypergeometricSpec};
use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};

/// Fewest coefficients a built state carries.
pub const MIN_COEFFICIENTS: usize = 16;

/// Largest truncation tolerance accepted by [`build_state`].
pub const MAX_TAIL_TOL: f64 = 1e-6;

/// Largest truncation tolerance accepted by [`eigen_residual`].
pub const MAX_EIGEN_TAIL_TOL: f64 = 1e-10;

/// Finite expansion `Σ_n c_n |n+r>`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockExpansion {
    pub r: u32,
    pub coefficients: Vec<Complex64>,
    /// Upper bound on the squared norm of the dropped coefficients.
    pub truncation_tail: f64,
}

impl FockExpansion {
    pub fn norm_squared(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).collect::<CompensatedSum>().value()
    }

    /// Inner product `<self|other>`; both must share the offset `r`.
    pub fn inner(&self, other: &FockExpansion) -> Complex64 {
        assert_eq!(self.r, other.r, "inner product of expansions with different offsets");
        self.coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// Exact prefactors `b(r) = Π_{k=0}^{r} k!` and `ρ_r(0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationContext {
    pub r: u32,
    pub b_r: BigUint,
    pub rho0: BigUint,
}

impl NormalizationContext {
    pub fn new(r: u32) -> Self {
        let mut fact = BigUint::one();
        let mut b_r = BigUint::one();
        for k in 1..=r as u64 {
            fact *= k;
            b_r *= &fact;
        }
        Self { r, b_r, rho0: rho(r, 0) }
    }
}

fn check_r(r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::Domain("r must be >= 1".into()));
    }
    Ok(())
}

/// Lower parameters `[1, 2, 2, ..., r, r, r+1]` of the `0F_{2r}` in `N_r`.
pub fn normalization_params(r: u32) -> Vec<u32> {
    let mut params = vec![1];
    for k in 2..=r {
        params.push(k);
        params.push(k);
    }
    params.push(r + 1);
    params
}

/// Coefficients `w_n = ρ_r(0) / ρ_r(n)` of `ρ_r(0) N_r(x) = Σ w_n x^n`.
pub(crate) fn weight_series(r: u32) -> RatioSeries<impl Fn(usize) -> f64 + Clone> {
    RatioSeries::new(1.0, move |n| 1.0 / rho_ratio_f64(r, n))
}

fn rho0_f64(r: u32) -> f64 {
    rho(r, 0).to_f64().unwrap_or(f64::INFINITY)
}

/// `N_r(x) = ρ_r(0)^{-1} 0F_{2r}([], [1, 2,2, ..., r,r, r+1], x)` for `x >= 0`.
pub fn normalization_n(r: u32, x: f64) -> Result<f64> {
    check_r(r)?;
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("normalization needs x >= 0, got {x}")));
    }
    let f = HypergeometricSpec::new(normalization_params(r), x).eval()?;
    Ok(f / rho0_f64(r))
}

/// `N_r(x) = Σ_n x^n / ρ_r(n)` summed over the squared moduli of the Fock
/// coefficients, with each `ρ_r(n)` taken from exact integer arithmetic.
pub fn normalization_by_coefficients(r: u32, x: f64) -> Result<f64> {
    check_r(r)?;
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("normalization needs x >= 0, got {x}")));
    }
    let mut acc = CompensatedSum::new();
    let mut quiet = 0;
    let mut rho_n = rho(r, 0);
    for n in 0..TERM_CAP as u64 {
        if n > 0 {
            rho_n *= crate::momentproblem::rho_ratio(r, n);
        }
        let power = x.powi(n as i32);
        let denom = rho_n.to_f64().unwrap_or(f64::INFINITY);
        let term = if power.is_finite() && denom.is_finite() {
            power / denom
        } else {
            // both sides out of range: compare logarithms instead
            (n as f64 * x.ln() - ln_biguint(&rho_n)).exp()
        };
        if term == 0.0 {
            return Ok(acc.value());
        }
        acc.add(term);
        if term < 1e-17 * acc.value() {
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

/// The unnormalized overlap kernel `N_r(y)` at complex `y = z* z'`.
pub fn overlap_kernel(r: u32, y: Complex64) -> Result<Complex64> {
    check_r(r)?;
    let f = HypergeometricSpec::new(normalization_params(r), y).eval()?;
    Ok(f / rho0_f64(r))
}

/// Normalized overlap `<z|z'>_r = N_r(z* z') / sqrt(N_r(|z|^2) N_r(|z'|^2))`.
pub fn overlap(r: u32, z: Complex64, z_prime: Complex64) -> Result<Complex64> {
    let kernel = overlap_kernel(r, z.conj() * z_prime)?;
    let n1 = normalization_n(r, z.norm_sqr())?;
    let n2 = normalization_n(r, z_prime.norm_sqr())?;
    Ok(kernel / (n1 * n2).sqrt())
}

/// Builds `|z>_r`, truncated once the geometric tail bound on the dropped
/// squared moduli falls below `tail_tol`.
pub fn build_state(r: u32, z: Complex64, tail_tol: f64) -> Result<FockExpansion> {
    check_r(r)?;
    if !(tail_tol > 0.0 && tail_tol <= MAX_TAIL_TOL) {
        return Err(Error::Domain(format!(
            "tail tolerance {tail_tol:e} outside (0, {MAX_TAIL_TOL:e}]"
        )));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("state label {z} is not finite")));
    }
    let x = z.norm_sqr();
    // ρ_r(0) N_r(x); the first coefficient is its inverse square root
    let scaled_norm = HypergeometricSpec::new(normalization_params(r), x).eval()?;
    let mut coefficients = vec![Complex64::new(scaled_norm.sqrt().recip(), 0.0)];
    let q = |n: usize| rho_ratio_f64(r, n);
    loop {
        let last = coefficients.len() - 1;
        if coefficients.len() >= MIN_COEFFICIENTS {
            // |c_{N+1}|^2 bounds the first dropped term; later ones shrink by at most x / q(N+2).
            let next = coefficients[last].norm_sqr() * x / q(last + 1);
            let shrink = x / q(last + 2);
            if shrink < 1.0 {
                let bound = next / (1.0 - shrink);
                if bound < tail_tol {
                    return Ok(FockExpansion { r, coefficients, truncation_tail: bound });
                }
            }
        }
        if coefficients.len() >= TERM_CAP {
            return Err(Error::Convergence { terms: TERM_CAP });
        }
        let c = coefficients[last] * z / q(last + 1).sqrt();
        coefficients.push(c);
    }
}

/// `(a†)^r a^{r+1}` applied coefficient-wise:
/// `|n+r> -> (n-1+r)!/(n-1)! sqrt(n+r) |n+r-1>`, with `|r>` annihilated.
pub fn apply_generalized_lowering(state: &FockExpansion) -> FockExpansion {
    let r = state.r as usize;
    let coefficients = state
        .coefficients
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, c)| {
            let ratio = (n..n + r).fold(1.0, |acc, k| acc * k as f64);
            c * (ratio * ((n + r) as f64).sqrt())
        })
        .collect();
    FockExpansion { r: state.r, coefficients, truncation_tail: state.truncation_tail }
}

/// `a f_r(n̂)` applied coefficient-wise, with `f_r` read from a Stirling table.
pub fn apply_nonlinear_lowering(state: &FockExpansion, table: &StirlingTable) -> FockExpansion {
    assert_eq!(table.r(), state.r, "Stirling table order differs from the state offset");
    let r = state.r as usize;
    let coefficients = state
        .coefficients
        .iter()
        .enumerate()
        .skip(1) // f_r(r) = 0 removes |r>
        .map(|(n, c)| {
            let level = (n + r) as i64;
            let f = table.eval(level).to_f64().unwrap_or(f64::NAN);
            c * (f * (level as f64).sqrt())
        })
        .collect();
    FockExpansion { r: state.r, coefficients, truncation_tail: state.truncation_tail }
}

/// `‖(a†)^r a^{r+1}|z>_r - z|z>_r‖` on the truncated space, leaving out the
/// top `max(2, r)` coefficients.
pub fn eigen_residual(r: u32, z: Complex64, tail_tol: f64) -> Result<f64> {
    if !(tail_tol > 0.0 && tail_tol <= MAX_EIGEN_TAIL_TOL) {
        return Err(Error::Domain(format!(
            "eigen residual needs tail tolerance in (0, {MAX_EIGEN_TAIL_TOL:e}], got {tail_tol:e}"
        )));
    }
    let state = build_state(r, z, tail_tol)?;
    let lowered = apply_generalized_lowering(&state);
    let band = (r as usize).max(2);
    let kept = state.coefficients.len().saturating_sub(band);
    let sum: CompensatedSum = (0..kept)
        .map(|m| (lowered.coefficients[m] - z * state.coefficients[m]).norm_sqr())
        .collect();
    Ok(sum.value().sqrt())
}

/// Evolution under `H = a†a + 1/2`: `c_n -> exp(-i (n + r + 1/2) t) c_n`.
pub fn time_evolve(state: &FockExpansion, t: f64) -> FockExpansion {
    let coefficients = state
        .coefficients
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let energy = n as f64 + state.r as f64 + 0.5;
            c * Complex64::from_polar(1.0, -energy * t)
        })
        .collect();
    FockExpansion { coefficients, ..state.clone() }
}

#[cfg(test)]
mod tests;
