//! Achievable-rate lower bounds in the `k = n^(1-beta)` regime.
//!
//! Rates are `log2 C(n,k) / m` (bits per test), so the `1/ln 2` factor is
//! folded into every value returned here.

use std::f64::consts::{E, LN_2};
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::rows::{neg_ln_row_agree, ALPHA_GRID_POINTS, ALPHA_TOL};
use crate::error::{invalid, Result};
use crate::optimize::{bisect_root, maximize_grid_golden};

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta <= 1.0 {
        Ok(())
    } else {
        Err(invalid("beta", format!("need beta in (0, 1], got {beta}")))
    }
}

/// `2 alpha e^-alpha beta / (2 - beta)`, the large-`k` limit of the
/// `M2`-driven rate term.
pub fn first_minimand(alpha: f64, beta: f64) -> f64 {
    2.0 * alpha * (-alpha).exp() * beta / (2.0 - beta)
}

/// `-ln(1 - 2e^-alpha + 2e^-2alpha)`, the `M1`-driven rate term.
pub fn second_minimand(alpha: f64) -> f64 {
    neg_ln_row_agree(alpha)
}

/// Normalized rate bound for one fixed `alpha`.
pub fn rate_at_alpha(beta: f64, alpha: f64) -> f64 {
    first_minimand(alpha, beta).min(second_minimand(alpha)) / LN_2
}

/// Rate of the DD decoder: `(1/(e ln 2)) min(beta/(1-beta), 1)`.
pub fn dd_rate(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let ratio = if beta >= 0.5 { 1.0 } else { beta / (1.0 - beta) };
    Ok(ratio / (E * LN_2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateOptimum {
    pub rate: f64,
    pub alpha: f64,
}

/// `(1/ln 2) max over alpha in [ln 2, 1] of min(first, second minimand)`.
pub fn rate_thm4(beta: f64) -> Result<RateOptimum> {
    check_beta(beta)?;
    let best = maximize_grid_golden(
        |a| rate_at_alpha(beta, a.clamp(LN_2, 1.0)),
        LN_2,
        1.0,
        ALPHA_GRID_POINTS,
        ALPHA_TOL,
    );
    Ok(RateOptimum {
        rate: best.value,
        alpha: best.x,
    })
}

/// The same maximum found as the crossing of the two minimands, which is
/// where it sits once `beta > beta0`. `None` when the minimands do not
/// cross inside `[ln 2, 1]`.
pub fn rate_thm4_by_crossing(beta: f64) -> Result<Option<RateOptimum>> {
    check_beta(beta)?;
    let gap = |a: f64| first_minimand(a, beta) - second_minimand(a);
    Ok(bisect_root(gap, LN_2, 1.0, 1e-14).map(|alpha| RateOptimum {
        rate: rate_at_alpha(beta, alpha),
        alpha,
    }))
}

/// `beta0`: below it `alpha = 1` is optimal and the rate is
/// `(2/(e ln 2)) beta/(2-beta)`.
pub fn beta0() -> f64 {
    let c = second_minimand(1.0);
    2.0 * c / (2.0 / E + c)
}

/// `beta1`: where the dense-regime closed form ([`rate_cor1`]) overtakes the `alpha = 1`
/// plateau.
pub fn beta1() -> f64 {
    2.0 * LN_2 / (1.0 - 2.0 / E + LN_2 + 2.0 / E * LN_2)
}

/// Lower end of the open interval on which [`rate_cor1`] is stated.
pub fn cor1_beta_min() -> f64 {
    2.0 * LN_2 / (1.0 + LN_2)
}

fn cor1_expr(beta: f64) -> f64 {
    let r = 2.0 * (1.0 - beta) * LN_2 / (beta * (1.0 - LN_2));
    1.0 - (r * r).ln_1p() / LN_2
}

/// `1 - (1/ln 2) ln(1 + (2(1-beta) ln 2 / (beta (1 - ln 2)))^2)` for
/// `beta` in `(2 ln 2/(1 + ln 2), 1)`.
pub fn rate_cor1(beta: f64) -> Result<f64> {
    if !(beta > cor1_beta_min() && beta < 1.0) {
        return Err(invalid(
            "beta",
            format!("need beta in ({:.6}, 1), got {beta}", cor1_beta_min()),
        ));
    }
    Ok(cor1_expr(beta))
}

/// Three-piece closed-form bound on `(0, 1)`.
pub fn rate_cor2(beta: f64) -> Result<f64> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(invalid("beta", format!("need beta in (0, 1), got {beta}")));
    }
    Ok(cor2_expr(beta))
}

fn cor2_expr(beta: f64) -> f64 {
    if beta <= beta0() {
        cor2_sparse_branch(beta)
    } else if beta <= beta1() {
        cor2_plateau_branch()
    } else {
        cor1_expr(beta)
    }
}

pub(crate) fn cor2_sparse_branch(beta: f64) -> f64 {
    2.0 / E * beta / (2.0 - beta) / LN_2
}

pub(crate) fn cor2_plateau_branch() -> f64 {
    second_minimand(1.0) / LN_2
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlternateAlpha {
    pub alpha: f64,
    /// `1 - 2e^-alpha` before any clamping.
    pub rhs: f64,
    /// Set when the solution fell outside `[ln 2, 1]` and was clamped.
    pub clamped: bool,
}

/// Closed-form `alpha` choice for `beta > beta0`, solving
/// `1 - 2e^-alpha = (-beta(1-ln2) + sqrt(beta^2(1-ln2)^2 + 4(1-beta)(4-3beta) ln 2)) / (4 - 3 beta)`.
///
/// Gives a rate between the piecewise closed forms and the optimized value
/// of [`rate_thm4`]; it is not the exact maximizer.
pub fn appendix_b_alpha(beta: f64) -> Result<AlternateAlpha> {
    if !(beta > beta0() && beta < 1.0) {
        return Err(invalid("beta", format!("need beta in (beta0, 1), got {beta}")));
    }
    let c = 1.0 - LN_2;
    let d = 4.0 - 3.0 * beta;
    let rhs = (-beta * c + (beta * beta * c * c + 4.0 * (1.0 - beta) * d * LN_2).sqrt()) / d;
    const SLACK: f64 = 1e-9;
    let hi = 1.0 - 2.0 / E;
    if !(-SLACK..=hi + SLACK).contains(&rhs) {
        return Err(invalid(
            "beta",
            format!("alternate alpha equation has rhs {rhs} outside [0, 1 - 2/e]"),
        ));
    }
    let raw = -((1.0 - rhs) / 2.0).ln();
    let alpha = raw.clamp(LN_2, 1.0);
    Ok(AlternateAlpha {
        alpha,
        rhs,
        clamped: alpha != raw,
    })
}

/// One row of the rate-curve table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateCurvePoint {
    pub beta: f64,
    pub alpha_opt: f64,
    pub r_thm4: f64,
    pub r_dd: f64,
    /// `None` where `beta <= 2 ln 2/(1 + ln 2)`. At `beta = 1` the closed
    /// form is evaluated at its endpoint (value 1).
    pub r_cor1: Option<f64>,
    /// At `beta = 1` the last branch is evaluated at its endpoint (value 1).
    pub r_cor2: f64,
}

impl RateCurvePoint {
    pub fn at(beta: f64) -> Result<Self> {
        let opt = rate_thm4(beta)?;
        Ok(Self {
            beta,
            alpha_opt: opt.alpha,
            r_thm4: opt.rate,
            r_dd: dd_rate(beta)?,
            r_cor1: (beta > cor1_beta_min()).then(|| cor1_expr(beta)),
            r_cor2: cor2_expr(beta),
        })
    }
}

pub const RATE_CURVE_HEADER: &str = "beta,alpha_opt,r_thm4,r_dd,r_cor1,r_cor2";

/// Inclusive uniform grid of `steps` points on `[beta_min, beta_max]`,
/// evaluated in parallel. Row order and values do not depend on the thread
/// count.
pub fn rate_curve(beta_min: f64, beta_max: f64, steps: usize) -> Result<Vec<RateCurvePoint>> {
    if !(beta_min > 0.0 && beta_min < beta_max && beta_max <= 1.0) {
        return Err(invalid(
            "beta",
            format!("need 0 < beta_min < beta_max <= 1, got [{beta_min}, {beta_max}]"),
        ));
    }
    if steps < 2 {
        return Err(invalid("steps", format!("need at least 2 grid points, got {steps}")));
    }
    let h = (beta_max - beta_min) / (steps - 1) as f64;
    (0..steps)
        .into_par_iter()
        .map(|i| {
            let beta = if i == steps - 1 {
                beta_max
            } else {
                beta_min + h * i as f64
            };
            RateCurvePoint::at(beta)
        })
        .collect()
}

/// Formats `x` in plain decimal with 12 significant digits.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn write_rate_curve_csv<W: Write>(points: &[RateCurvePoint], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{RATE_CURVE_HEADER}")?;
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            format_sig12(p.beta),
            format_sig12(p.alpha_opt),
            format_sig12(p.r_thm4),
            format_sig12(p.r_dd),
            p.r_cor1.map(format_sig12).unwrap_or_default(),
            format_sig12(p.r_cor2),
        )?;
    }
    Ok(())
}
