//! Exact moments `ρ_r(n) = [Π_{k=0}^{r-1} (n+k)!]^2 (n+r)!`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use std::collections::BTreeMap;

fn factorial(m: u64) -> BigUint {
    (2..=m).fold(BigUint::one(), |acc, k| acc * k)
}

/// `ρ_r(n)` as an exact integer.
pub fn rho(r: u32, n: u64) -> BigUint {
    let r = r as u64;
    let square = (0..r).fold(BigUint::one(), |acc, k| acc * factorial(n + k));
    &square * &square * factorial(n + r)
}

/// `ρ_r(n) / ρ_r(n-1) = [Π_{k=0}^{r-1} (n+k)]^2 (n+r)` for `n >= 1`.
pub fn rho_ratio(r: u32, n: u64) -> BigUint {
    let r = r as u64;
    let p = (0..r).fold(BigUint::one(), |acc, k| acc * (n + k));
    &p * &p * (n + r)
}

/// Same ratio in floating point, used by the series kernels.
pub(crate) fn rho_ratio_f64(r: u32, n: usize) -> f64 {
    let p = (0..r as usize).fold(1.0, |acc, k| acc * (n + k) as f64);
    p * p * (n + r as usize) as f64
}

/// Natural logarithm of an arbitrarily large positive integer.
pub fn ln_biguint(value: &BigUint) -> f64 {
    let bits = value.bits();
    if bits <= 1000 {
        return value.to_f64().map_or(f64::NAN, f64::ln);
    }
    let shift = bits - 64;
    let top = (value >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ρ_r(0..=n_max)`, built by exact ratios.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    r: u32,
    values: BTreeMap<u64, BigUint>,
}

impl MomentSequence {
    pub fn new(r: u32, n_max: u64) -> Self {
        let mut values = BTreeMap::new();
        let mut current = rho(r, 0);
        values.insert(0, current.clone());
        for n in 1..=n_max {
            current *= rho_ratio(r, n);
            values.insert(n, current.clone());
        }
        Self { r, values }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn get(&self, n: u64) -> Option<&BigUint> {
        self.values.get(&n)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigUint)> {
        self.values.iter().map(|(n, v)| (*n, v))
    }

    /// `ρ(n+1) ρ(n-1) >= ρ(n)^2` for every interior `n`, in exact arithmetic.
    pub fn is_log_convex(&self) -> bool {
        let v: Vec<&BigUint> = self.values.values().collect();
        v.windows(3).all(|w| w[0] * w[2] >= w[1] * w[1])
    }
}
