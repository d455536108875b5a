//! Stieltjes moment problem behind the resolution of unity.
//!
//! The weight `W̃_r` is the inverse Mellin transform of `ρ_r(s-1)`; this
//! module evaluates it, checks that it reproduces the integer moments and
//! runs the two sufficient conditions for non-uniqueness.

mod moments;
mod nonuniqueness;
mod quadrature;
mod weight;

pub use moments::{ln_biguint, rho, rho_ratio, MomentSequence};
pub(crate) use moments::rho_ratio_f64;
pub use nonuniqueness::{
    carleman_sum, default_convexity_grid, log_convexity_check, log_convexity_check_with, non_uniqueness,
    non_uniqueness_with, CarlemanReport, NonUniquenessReport, Verdict, CONVEXITY_SLACK, DEFAULT_CARLEMAN_TERMS,
    EXPONENT_MARGIN,
};
pub use quadrature::{verify_moment, verify_moments, MomentCheck, QuadConfig};
pub use weight::{weight_w, Contour, MellinBarnesSpec, WeightValue, DEFAULT_STEP, ENVELOPE_CUTOFF, TAIL_TOLERANCE};
