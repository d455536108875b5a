//! Regular eigenfunctions `E(r, x)` of `x^r d^{r+1}` with eigenvalue one.
//!
//! `E(r, x) = x^r 0F_r([], [2, 3, ..., r+1], x)`, so the coefficient of
//! `x^{n+r}` is `1! 2! ... r! / (n! (n+1)! ... (n+r)!)`. All derivatives are
//! taken term by term on this series.

use crate::error::{Error, Result};
use crate::specfun::series::RatioSeries;

/// Operator order `r >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EigenFunctionSpec {
    r: u32,
}

impl EigenFunctionSpec {
    pub fn new(r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::Domain("operator order r must be >= 1".into()));
        }
        Ok(Self { r })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Coefficients of `E(r, x) / x^r`; `c_n / c_{n-1} = 1 / (n (n+1) ... (n+r))`.
    fn series(&self) -> RatioSeries<impl Fn(usize) -> f64> {
        let r = self.r as usize;
        RatioSeries::new(1.0, move |n| {
            let denom = (n..=n + r).fold(1.0, |acc, k| acc * k as f64);
            1.0 / denom
        })
    }

    /// `d^p/dx^p E(r, x)` for `x >= 0`.
    pub fn derivative(&self, order: usize, x: f64) -> Result<f64> {
        check_nonnegative(x)?;
        self.series().derivative(self.r as usize, order, x)
    }
}

fn check_nonnegative(x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("eigenfunction evaluated at {x}; need finite x >= 0")));
    }
    Ok(())
}

/// `E(r, x)` for `x >= 0`.
pub fn eval_e(spec: EigenFunctionSpec, x: f64) -> Result<f64> {
    spec.derivative(0, x)
}

/// `[E(r,0), E'(r,0), ..., E^{(r)}(r,0)]`: `r` zeros followed by `r!`.
pub fn derivatives_at_zero(spec: EigenFunctionSpec) -> Vec<f64> {
    let series = spec.series();
    (0..=spec.r as usize)
        .map(|p| series.derivative(spec.r as usize, p, 0.0).unwrap_or(f64::NAN))
        .collect()
}

/// `x^r E^{(r+1)}(r, x) - E(r, x)` for `x > 0`.
pub fn ode_residual(spec: EigenFunctionSpec, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("ode_residual needs x > 0, got {x}")));
    }
    let r = spec.r as usize;
    let lhs = x.powi(spec.r as i32) * spec.derivative(r + 1, x)?;
    let e = spec.derivative(0, x)?;
    Ok(lhs - e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::bessel_i1;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{ToPrimitive, Zero};

    fn spec(r: u32) -> EigenFunctionSpec {
        EigenFunctionSpec::new(r).unwrap()
    }

    /// Exact `Σ_{n<terms} x^{n+r} Π_{k=1}^{r} k! / Π_{k=0}^{r} (n+k)!` at integer x.
    fn rational_e(r: u32, x: i64, terms: u64) -> f64 {
        let fact = |m: u64| (1..=m).fold(BigInt::from(1), |a, k| a * BigInt::from(k));
        let numer = (1..=r as u64).fold(BigInt::from(1), |a, k| a * fact(k));
        let mut sum = BigRational::zero();
        for n in 0..terms {
            let denom = (0..=r as u64).fold(BigInt::from(1), |a, k| a * fact(n + k));
            let xp = BigInt::from(x).pow((n + r as u64) as u32);
            sum += BigRational::new(&numer * xp, denom);
        }
        sum.to_f64().unwrap()
    }

    #[test]
    fn vanishes_at_origin() {
        for r in 1..=5 {
            assert_eq!(eval_e(spec(r), 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn bessel_form_for_r1() {
        let v = eval_e(spec(1), 4.0).unwrap();
        let expected = 2.0 * bessel_i1(4.0).unwrap();
        assert!((v - expected).abs() < 1e-13 * expected);
        let v = eval_e(spec(1), 1.0).unwrap();
        assert!((v - bessel_i1(2.0).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn exact_series_oracle() {
        for (r, x) in [(2u32, 1i64), (2, 9), (3, 4), (5, 20)] {
            let oracle = rational_e(r, x, 40);
            let v = eval_e(spec(r), x as f64).unwrap();
            assert!((v - oracle).abs() < 1e-14 * oracle, "r={r} x={x}: {v} vs {oracle}");
        }
    }

    #[test]
    fn initial_conditions() {
        assert_eq!(derivatives_at_zero(spec(1)), vec![0.0, 1.0]);
        assert_eq!(derivatives_at_zero(spec(2)), vec![0.0, 0.0, 2.0]);
        assert_eq!(derivatives_at_zero(spec(3)), vec![0.0, 0.0, 0.0, 6.0]);
        assert_eq!(derivatives_at_zero(spec(5)).last(), Some(&120.0));
    }

    #[test]
    fn ode_residuals() {
        let rel = |r: u32, x: f64| {
            let e = eval_e(spec(r), x).unwrap();
            ode_residual(spec(r), x).unwrap().abs() / e.abs().max(1.0)
        };
        assert!(rel(1, 1.0) < 1e-12);
        assert!(rel(2, 10.0) < 1e-10);
        assert!(ode_residual(spec(3), 0.01).unwrap().abs() < 1e-14);
        for r in 1..=5 {
            for x in [0.01, 0.3, 1.0, 10.0, 50.0] {
                assert!(rel(r, x) < 1e-10, "r={r} x={x}");
            }
        }
        assert!(ode_residual(spec(1), 0.0).is_err());
    }

    #[test]
    fn leading_order_near_origin() {
        let x = 1e-8;
        for r in 1..=4 {
            let ratio = eval_e(spec(r), x).unwrap() / x.powi(r as i32);
            assert!((ratio - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn derivative_against_finite_difference() {
        let s = spec(2);
        for x in [0.5, 3.0, 12.0] {
            let h = 1e-4 * x;
            let f = |t: f64| eval_e(s, t).unwrap();
            let fd = (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
            let d = s.derivative(1, x).unwrap();
            assert!((d - fd).abs() < 1e-8 * d.abs());
        }
    }

    #[test]
    fn strictly_increasing_on_grid() {
        for r in 1..=4 {
            let values: Vec<f64> = (0..=200).map(|i| eval_e(spec(r), i as f64 * 0.25).unwrap()).collect();
            assert!(values.windows(2).all(|w| w[1] > w[0]), "r = {r}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(EigenFunctionSpec::new(0).is_err());
        assert!(eval_e(spec(1), -1.0).is_err());
        assert!(eval_e(spec(1), f64::NAN).is_err());
    }
}
