//! Sufficient row counts for an almost-separable random design.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::optimize::maximize_grid_golden;

pub const ALPHA_GRID_POINTS: usize = 1001;
pub const ALPHA_TOL: f64 = 1e-10;

fn check(n: u64, k: u64, alpha: f64) -> Result<()> {
    if k == 0 || k >= n {
        return Err(invalid("k", format!("need 1 <= k < n, got k = {k}, n = {n}")));
    }
    if !(LN_2..=1.0).contains(&alpha) {
        return Err(invalid("alpha", format!("need alpha in [ln 2, 1], got {alpha}")));
    }
    Ok(())
}

/// `-ln(1 - 2e^-alpha + 2e^-2alpha)`: the per-row exponent of the `j`-small
/// range, also the second term of the rate bound.
pub fn neg_ln_row_agree(alpha: f64) -> f64 {
    let x = (-alpha).exp();
    -(-2.0 * x * (1.0 - x)).ln_1p()
}

/// `-ln(1 - 2e^-alpha + 2e^-alpha(1+1/k))`.
pub fn neg_ln_row_agree_k(alpha: f64, k: u64) -> f64 {
    let x = 2.0 * (-alpha).exp();
    -(-x * -(-alpha / k as f64).exp_m1()).ln_1p()
}

/// `M1(n,k,alpha) = k ln(n/k) / -ln(1 - 2e^-alpha + 2e^-2alpha)`.
pub fn m1(n: u64, k: u64, alpha: f64) -> Result<f64> {
    check(n, k, alpha)?;
    Ok(k as f64 * (n as f64 / k as f64).ln() / neg_ln_row_agree(alpha))
}

/// `M2(n,k,alpha) = ln(nk) / -ln(1 - 2e^-alpha + 2e^-alpha(1+1/k))`.
///
/// At `alpha = ln 2` this is exactly `k log2(nk)`.
pub fn m2(n: u64, k: u64, alpha: f64) -> Result<f64> {
    check(n, k, alpha)?;
    Ok((n as f64 * k as f64).ln() / neg_ln_row_agree_k(alpha, k))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RowCount {
    /// `M(n,k)`, a real number of rows.
    pub rows: f64,
    /// The minimizing `alpha`; the smaller one on ties.
    pub alpha: f64,
}

/// `M(n,k) = min over alpha in [ln 2, 1] of max(M1, M2)`.
pub fn m_opt(n: u64, k: u64) -> Result<RowCount> {
    check(n, k, LN_2)?;
    let objective = |a: f64| {
        let a = a.clamp(LN_2, 1.0);
        -(m1(n, k, a).unwrap().max(m2(n, k, a).unwrap()))
    };
    let best = maximize_grid_golden(objective, LN_2, 1.0, ALPHA_GRID_POINTS, ALPHA_TOL);
    Ok(RowCount {
        rows: -best.value,
        alpha: best.x,
    })
}
