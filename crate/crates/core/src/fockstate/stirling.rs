//! Signed Stirling numbers of the first kind and the function
//! `f_r(m) = Σ_{k=1}^{r} σ(r,k) (m-1)^k = Π_{k=1}^{r} (m-k)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Row `σ(r, k)` for `k = 1..=r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    r: u32,
    sigma: Vec<BigInt>,
}

impl StirlingTable {
    /// Built with `σ(n+1, k) = σ(n, k-1) - n σ(n, k)` from `σ(0, 0) = 1`.
    pub fn new(r: u32) -> Self {
        let mut row = vec![BigInt::one()];
        for n in 0..r as usize {
            let mut next = vec![BigInt::zero(); n + 2];
            for k in 0..=n + 1 {
                let mut v = if k > 0 { row[k - 1].clone() } else { BigInt::zero() };
                if k <= n {
                    v -= &row[k] * BigInt::from(n);
                }
                next[k] = v;
            }
            row = next;
        }
        // σ(r, 0) = 0 for r >= 1
        let sigma = row.into_iter().skip(1).collect();
        Self { r, sigma }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `σ(r, k)`; zero outside `1..=r`.
    pub fn get(&self, k: u32) -> BigInt {
        if k == 0 || k > self.r {
            return BigInt::zero();
        }
        self.sigma[k as usize - 1].clone()
    }

    /// `Σ_k σ(r,k) (m-1)^k`.
    pub fn eval(&self, m: i64) -> BigInt {
        let base = BigInt::from(m - 1);
        let mut power = BigInt::one();
        let mut acc = BigInt::zero();
        for s in &self.sigma {
            power *= &base;
            acc += s * &power;
        }
        acc
    }
}

/// `f_r(m)` from the signed Stirling expansion.
pub fn stirling_f(r: u32, m: i64) -> BigInt {
    StirlingTable::new(r).eval(m)
}

/// `Σ_{k=1}^{r+1} |σ(r+1,k)| (m-r-1)^{k-1}`, the rising-factorial form.
pub fn stirling_f_unsigned(r: u32, m: i64) -> BigInt {
    let table = StirlingTable::new(r + 1);
    let base = BigInt::from(m - r as i64 - 1);
    let mut power = BigInt::one();
    let mut acc = BigInt::zero();
    for k in 1..=r + 1 {
        acc += table.get(k).abs() * &power;
        power *= &base;
    }
    acc
}

/// `Π_{k=1}^{r} (m-k)`.
pub fn falling_product(r: u32, m: i64) -> BigInt {
    (1..=r as i64).fold(BigInt::one(), |acc, k| acc * BigInt::from(m - k))
}
