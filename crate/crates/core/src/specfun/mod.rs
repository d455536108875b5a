//! Special-function kernels shared by the rest of the crate.

mod bessel;
mod gamma;
mod hypergeometric;
pub mod series;
mod summation;

pub use bessel::bessel_i1;
pub use gamma::{digamma, ln_factorial, ln_gamma, log_gamma};
pub use hypergeometric::{eval_0fq, eval_0fq_complex, HypergeometricSpec};
pub use summation::{CompensatedComplexSum, CompensatedSum};
