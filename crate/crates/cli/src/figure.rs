//! CSV data for the figures.
//!
//! | id | columns |
//! |----|---------|
//! | 1 | `x, ln_W_r*` on a logarithmic grid |
//! | 2 | `x, P_r*, poisson`: `P_r(r, x)` against `e^{-x}` |
//! | 3 | `x, P_r*, poisson`: `P_r(r+1, x)` against `x e^{-x}` |
//! | 4 | `x, nbar_r*` |
//! | 5 | `x, Q_r*` |
//! | 6 | `x, omega_r*` |
//! | 7 | `x, varX_r*` at real `z = sqrt(x)` |
//! | 8, 9 | `re_z, im_z, varX` (resp. `varP`) for one order on a square grid |

use crate::{FigureArgs, Outcome, UsageError};
use hypercs_core::momentproblem::MellinBarnesSpec;
use hypercs_core::statistics::{
    mandel_q, mean_photon_number, metric_omega, probability_p, quadrature_variances,
    standard_cs_probability,
};
use hypercs_core::Result;
use num_complex::Complex64;
use rayon::prelude::*;

pub const DEFAULT_X_RANGE: (f64, f64) = (0.001, 20.0);
pub const DEFAULT_STEPS: usize = 400;
pub const DEFAULT_PLANE_RANGE: (f64, f64) = (-3.0, 3.0);
pub const DEFAULT_PLANE_STEPS: usize = 61;

#[derive(Debug, Clone, PartialEq)]
pub struct FigureConfig {
    pub id: u8,
    pub r_values: Vec<u32>,
    pub x_min: f64,
    pub x_max: f64,
    pub steps: usize,
}

impl FigureConfig {
    pub fn from_args(a: &FigureArgs) -> std::result::Result<Self, UsageError> {
        let plane = matches!(a.id, 8 | 9);
        let (lo, hi) = if plane { DEFAULT_PLANE_RANGE } else { DEFAULT_X_RANGE };
        let cfg = Self {
            id: a.id,
            r_values: a.r_values.clone(),
            x_min: a.x_min.unwrap_or(lo),
            x_max: a.x_max.unwrap_or(hi),
            steps: a.steps.unwrap_or(if plane { DEFAULT_PLANE_STEPS } else { DEFAULT_STEPS }),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> std::result::Result<(), UsageError> {
        if !(1..=9).contains(&self.id) {
            return Err(UsageError(format!("figure id must be 1..9, got {}", self.id)));
        }
        if self.r_values.is_empty() || self.r_values.contains(&0) {
            return Err(UsageError("orders r must be positive integers".into()));
        }
        if !self.x_min.is_finite() || !self.x_max.is_finite() || self.x_min >= self.x_max {
            return Err(UsageError(format!("need x_min < x_max, got {} and {}", self.x_min, self.x_max)));
        }
        if self.steps < 2 {
            return Err(UsageError(format!("need at least 2 steps, got {}", self.steps)));
        }
        if self.id == 1 && self.x_min <= 0.0 {
            return Err(UsageError("figure 1 needs x_min > 0: the weight is singular at the origin".into()));
        }
        if (2..=7).contains(&self.id) && self.x_min < 0.0 {
            return Err(UsageError("x = |z|^2 cannot be negative".into()));
        }
        Ok(())
    }

    /// Abscissae of figures 1 to 7, or one axis of figures 8 and 9.
    pub fn grid(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        if self.id == 1 {
            let (a, b) = (self.x_min.ln(), self.x_max.ln());
            let mut g: Vec<f64> = (0..self.steps).map(|i| (a + (b - a) * i as f64 / last).exp()).collect();
            // the end points are given exactly, not through exp(ln x)
            g[0] = self.x_min;
            g[self.steps - 1] = self.x_max;
            g
        } else {
            (0..self.steps).map(|i| self.x_min + (self.x_max - self.x_min) * i as f64 / last).collect()
        }
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn render(header: &[String], rows: &[Vec<f64>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.iter().map(|&v| fmt(v)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

fn per_order_columns(prefix: &str, rs: &[u32]) -> Vec<String> {
    rs.iter().map(|r| format!("{prefix}_r{r}")).collect()
}

/// One row per `x`: `x` followed by `f(r, x)` for each order and an optional baseline.
fn curve_rows(
    xs: &[f64],
    rs: &[u32],
    f: impl Fn(u32, f64) -> Result<f64> + Sync,
    baseline: Option<&(dyn Fn(f64) -> f64 + Sync)>,
) -> Result<Vec<Vec<f64>>> {
    xs.par_iter()
        .map(|&x| {
            let mut row = vec![x];
            for &r in rs {
                row.push(f(r, x)?);
            }
            if let Some(b) = baseline {
                row.push(b(x));
            }
            Ok(row)
        })
        .collect()
}

/// Renders the CSV for `cfg`.
pub fn run_figure(cfg: &FigureConfig) -> Result<Outcome> {
    let rs = &cfg.r_values;
    let xs = cfg.grid();
    let mut header = vec!["x".to_string()];
    let rows = match cfg.id {
        1 => {
            header.extend(per_order_columns("ln_W", rs));
            let specs: Vec<MellinBarnesSpec> = rs.iter().map(|&r| MellinBarnesSpec::for_order(r)).collect();
            let index = |r: u32| rs.iter().position(|&q| q == r).unwrap();
            curve_rows(&xs, rs, |r, x| Ok(specs[index(r)].eval(x)?.ln_value), None)?
        }
        2 => {
            header.extend(per_order_columns("P", rs));
            header.push("poisson".into());
            curve_rows(&xs, rs, |r, x| probability_p(r, r as u64, x), Some(&|x| standard_cs_probability(0, x)))?
        }
        3 => {
            header.extend(per_order_columns("P", rs));
            header.push("poisson".into());
            curve_rows(&xs, rs, |r, x| probability_p(r, r as u64 + 1, x), Some(&|x| standard_cs_probability(1, x)))?
        }
        4 => {
            header.extend(per_order_columns("nbar", rs));
            curve_rows(&xs, rs, mean_photon_number, None)?
        }
        5 => {
            header.extend(per_order_columns("Q", rs));
            curve_rows(&xs, rs, mandel_q, None)?
        }
        6 => {
            header.extend(per_order_columns("omega", rs));
            curve_rows(&xs, rs, metric_omega, None)?
        }
        7 => {
            header.extend(per_order_columns("varX", rs));
            curve_rows(&xs, rs, |r, x| Ok(quadrature_variances(r, Complex64::new(x.sqrt(), 0.0))?.0), None)?
        }
        _ => {
            let r = rs[0];
            let take_p = cfg.id == 9;
            header = vec!["re_z".into(), "im_z".into(), if take_p { "varP" } else { "varX" }.into()];
            let points: Vec<(f64, f64)> = xs.iter().flat_map(|&re| xs.iter().map(move |&im| (re, im))).collect();
            points
                .par_iter()
                .map(|&(re, im)| {
                    let (vx, vp) = quadrature_variances(r, Complex64::new(re, im))?;
                    Ok(vec![re, im, if take_p { vp } else { vx }])
                })
                .collect::<Result<_>>()?
        }
    };
    Ok(Outcome { document: render(&header, &rows), passed: true })
}
