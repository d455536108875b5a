//! Coherent states generated by the regular eigenfunctions of `x^r d^{r+1}`.
//!
//! The crate is organised bottom-up:
//!
//! - [`specfun`]: log-gamma, digamma, `0F_q` series, `I_1`, compensated sums.
//! - [`eigenfun`]: the regular eigenfunctions `E(r, x)` and their derivatives.
//! - [`fockstate`]: truncated Fock expansions of `|z>_r`, boson-operator
//!   actions, Stirling numbers, normalization and overlaps.
//! - [`statistics`]: photon-number distribution, Mandel parameter, metric
//!   factor and quadrature variances.
//! - [`momentproblem`]: exact moments, the inverse-Mellin weight function and
//!   the non-uniqueness diagnostics.

// `!(x > 0.0)` rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod eigenfun;
pub mod error;
pub mod fockstate;
pub mod momentproblem;
pub mod specfun;
pub mod statistics;

pub use error::{Error, Result};
