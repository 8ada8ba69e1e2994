//! Closed-form and optimized bounds: counting bound, the overlap union
//! bound and its decomposition, sufficient row counts, and rate curves.

mod counting;
pub mod inequalities;
#[cfg(test)]
mod invariants;
mod numeric;
mod overlap;
mod rate;
mod rows;

pub use counting::{binom_sandwich, counting_bound};
pub use numeric::{ln_binomial, log_sum_exp};
pub use overlap::{
    ln_overlap_union_bound, overlap_case_bounds, overlap_expanded, overlap_union_bound, OverlapBoundBreakdown,
    Substitution,
};
pub use rate::{
    appendix_b_alpha, beta0, beta1, cor1_beta_min, dd_rate, first_minimand, format_sig12, rate_at_alpha, rate_cor1,
    rate_cor2, rate_curve, rate_thm4, rate_thm4_by_crossing, second_minimand, write_rate_curve_csv, AlternateAlpha,
    RateCurvePoint, RateOptimum, RATE_CURVE_HEADER,
};
pub use rows::{m1, m2, m_opt, neg_ln_row_agree, neg_ln_row_agree_k, RowCount, ALPHA_GRID_POINTS, ALPHA_TOL};

/// Plateau and sparse branches of [`rate_cor2`], exposed for continuity
/// checks at `beta0`.
pub fn cor2_branches(beta: f64) -> (f64, f64) {
    (rate::cor2_sparse_branch(beta), rate::cor2_plateau_branch())
}
