//! Compensated (Kahan–Babuška–Neumaier) accumulation.

use num_complex::Complex64;
use std::ops::AddAssign;

/// Running sum carrying a separate compensation term.
///
/// The order of additions is the only thing that determines the result, so a
/// fixed summation order gives bit-identical output across runs.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another partial sum into this one, keeping both error terms.
    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl AddAssign<f64> for CompensatedSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Componentwise compensated sum of complex values.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl CompensatedComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: Complex64) {
        self.re.add(value.re);
        self.im.add(value.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

impl AddAssign<Complex64> for CompensatedComplexSum {
    fn add_assign(&mut self, rhs: Complex64) {
        self.add(rhs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_small_terms() {
        let values = [1.0, 1e100, 1.0, -1e100];
        let naive: f64 = values.iter().sum();
        let acc: CompensatedSum = values.iter().copied().collect();
        assert_eq!(naive, 0.0);
        assert_eq!(acc.value(), 2.0);
    }

    #[test]
    fn fixed_order_is_bit_stable() {
        let terms: Vec<f64> = (1..2000).map(|k| (k as f64).sin() / k as f64).collect();
        let a: CompensatedSum = terms.iter().copied().collect();
        let b: CompensatedSum = terms.iter().copied().collect();
        assert_eq!(a.value().to_bits(), b.value().to_bits());
    }

    #[test]
    fn chunked_merge_matches_sequential() {
        let terms: Vec<f64> = (0..5000).map(|k| 1.0 / (1.0 + k as f64).powf(1.3)).collect();
        let whole: CompensatedSum = terms.iter().copied().collect();
        for chunk in [7usize, 64, 999] {
            let mut merged = CompensatedSum::new();
            for part in terms.chunks(chunk) {
                let partial: CompensatedSum = part.iter().copied().collect();
                merged.merge(&partial);
            }
            let rel = (merged.value() - whole.value()).abs() / whole.value();
            assert!(rel <= 2.0 * f64::EPSILON, "chunk {chunk}: {rel:e}");
        }
    }

    #[test]
    fn complex_components_accumulate_independently() {
        let mut acc = CompensatedComplexSum::new();
        acc += Complex64::new(1.0, 1e100);
        acc += Complex64::new(1e-16, 1.0);
        acc += Complex64::new(0.0, -1e100);
        assert_eq!(acc.value(), Complex64::new(1.0 + 1e-16, 1.0));
    }
}
