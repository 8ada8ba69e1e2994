//! Monte Carlo estimates of overlap and decoding-error probabilities.
//!
//! Trial `i` draws from its own stream seeded with `derive_seed(seed, i)`,
//! and successes are reduced by integer sum, so estimates are identical for
//! any thread count.

use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::m_opt;
use crate::construct::{bernoulli_design, p_from_alpha};
use crate::design::TestDesign;
use crate::error::{invalid, Result};
use crate::rng::{derive_seed, Xoshiro256StarStar};
use crate::subsets::{for_each_union, random_subset, Guard};
use crate::support::SupportSet;
use crate::verify::{separability_report, Codebook, DecodeResult};

/// Two-sided 95% standard normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let mut lo = (centre - half).max(0.0);
    let mut hi = (centre + half).min(1.0);
    // exact endpoints at the boundaries
    if successes == 0 {
        lo = 0.0;
    }
    if successes == trials {
        hi = 1.0;
    }
    (lo.min(p), hi.max(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub trials: u64,
    pub successes: u64,
    pub point: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
}

impl McEstimate {
    pub fn new(successes: u64, trials: u64) -> Self {
        let (lo, hi) = wilson_interval(successes, trials, Z_95);
        Self {
            trials,
            successes,
            point: successes as f64 / trials as f64,
            wilson_lo: lo,
            wilson_hi: hi,
        }
    }

    pub fn contains(&self, value: f64) -> bool {
        self.wilson_lo <= value && value <= self.wilson_hi
    }

    pub fn to_key_value(&self) -> String {
        format!(
            "trials={}\nsuccesses={}\npoint={:.12}\nwilson_lo={:.12}\nwilson_hi={:.12}\n",
            self.trials, self.successes, self.point, self.wilson_lo, self.wilson_hi
        )
    }
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(invalid("trials", "need at least one trial"));
    }
    Ok(())
}

fn count_successes(trials: u64, trial: impl Fn(u64) -> bool + Sync) -> u64 {
    (0..trials).into_par_iter().filter(|&t| trial(t)).count() as u64
}

/// True iff another `k`-set has the same union as the sorted set `members`.
///
/// Only columns whose supports lie inside `S(K)` can belong to a colliding
/// set, so the search runs over `K` plus those columns.
pub fn has_overlap(design: &TestDesign, members: &[usize]) -> Result<bool> {
    let union = design.union_support(members)?;
    let cols = design.columns();
    let outsiders: Vec<usize> = (0..design.n())
        .filter(|i| members.binary_search(i).is_err() && cols[*i].is_subset_of(&union))
        .collect();
    if outsiders.is_empty() {
        return Ok(false);
    }
    let mut pool: Vec<usize> = members.iter().copied().chain(outsiders).collect();
    pool.sort_unstable();
    let zero = SupportSet::empty(design.m());
    let flow = for_each_union(cols, zero.words(), &pool, members.len(), |items, u| {
        if items != members && u == union.words() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(flow.is_break())
}

/// Probability that the fixed set `K = {0, .., k-1}` of a fresh random
/// design has a colliding partner. Columns are IID, so every `K` has the
/// same probability.
///
/// `m = 0` is accepted: every union is empty and every trial collides.
pub fn estimate_overlap_prob(
    n: usize,
    k: usize,
    m: usize,
    alpha: f64,
    trials: u64,
    seed: u64,
    guard: Guard,
) -> Result<McEstimate> {
    check_trials(trials)?;
    if k == 0 || 2 * k > n {
        return Err(invalid("k", format!("need 1 <= k <= n/2, got k = {k}, n = {n}")));
    }
    guard.check(n, k)?;
    let p = p_from_alpha(k as u64, alpha)?;
    if m == 0 {
        return Ok(McEstimate::new(trials, trials));
    }
    let members: Vec<usize> = (0..k).collect();
    let hits = count_successes(trials, |t| {
        let d = bernoulli_design(n, m, p, derive_seed(seed, t)).expect("parameters validated");
        has_overlap(&d, &members).expect("indices in range")
    });
    Ok(McEstimate::new(hits, trials))
}

/// Unbiased estimate of `epsilon_sep` by sampling `K` uniformly.
pub fn estimate_epsilon(design: &TestDesign, k: usize, trials: u64, seed: u64) -> Result<McEstimate> {
    check_trials(trials)?;
    if k == 0 || k > design.n() {
        return Err(invalid("k", format!("need 1 <= k <= n, got k = {k}")));
    }
    let hits = count_successes(trials, |t| {
        let mut rng = Xoshiro256StarStar::seed_from_u64(derive_seed(seed, t));
        let members = random_subset(&mut rng, design.n(), k);
        has_overlap(design, &members).expect("indices in range")
    });
    Ok(McEstimate::new(hits, trials))
}

/// Group-testing simulation: draw a uniform defective set, observe its
/// union, decode exhaustively. A success here is a decoding error.
pub fn simulate_gt(design: &TestDesign, k: usize, trials: u64, seed: u64, guard: Guard) -> Result<McEstimate> {
    check_trials(trials)?;
    if k == 0 || k > design.n() {
        return Err(invalid("k", format!("need 1 <= k <= n, got k = {k}")));
    }
    let book = Codebook::build(design, k, guard)?;
    let errors = count_successes(trials, |t| {
        let mut rng = Xoshiro256StarStar::seed_from_u64(derive_seed(seed, t));
        let defectives = random_subset(&mut rng, design.n(), k);
        let outcome = design.union_support(&defectives).expect("indices in range");
        book.decode(&outcome) != DecodeResult::Unique(defectives)
    });
    Ok(McEstimate::new(errors, trials))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExistenceReport {
    pub m: usize,
    pub designs: u64,
    /// Designs whose exact `epsilon_sep` is at most the target.
    pub qualifying: u64,
    pub fraction: f64,
}

/// Fraction of random designs with `m = ceil((1 + delta) M(n, k))` rows that
/// are `epsilon`-almost `k`-separable.
///
/// The asymptotic guarantee is a fraction of at least 1/2 for large `n`;
/// at desk scale the value is only reported.
#[allow(clippy::too_many_arguments)]
pub fn markov_existence_check(
    n: usize,
    k: usize,
    alpha: f64,
    delta: f64,
    epsilon: f64,
    designs: u64,
    seed: u64,
    guard: Guard,
) -> Result<ExistenceReport> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(invalid("delta", format!("need delta > 0, got {delta}")));
    }
    if k == 0 || 2 * k > n {
        return Err(invalid("k", format!("need 1 <= k <= n/2, got k = {k}, n = {n}")));
    }
    let m = ((1.0 + delta) * m_opt(n as u64, k as u64)?.rows).ceil() as usize;
    markov_existence_at_m(n, k, m, alpha, epsilon, designs, seed, guard)
}

/// [`markov_existence_check`] with an explicit row count.
#[allow(clippy::too_many_arguments)]
pub fn markov_existence_at_m(
    n: usize,
    k: usize,
    m: usize,
    alpha: f64,
    epsilon: f64,
    designs: u64,
    seed: u64,
    guard: Guard,
) -> Result<ExistenceReport> {
    if designs == 0 {
        return Err(invalid("designs", "need at least one design"));
    }
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(invalid("epsilon", format!("need epsilon in [0, 1], got {epsilon}")));
    }
    guard.check(n, k)?;
    let p = p_from_alpha(k as u64, alpha)?;
    let qualifying = (0..designs)
        .into_par_iter()
        .map(|i| -> Result<bool> {
            let d = bernoulli_design(n, m, p, derive_seed(seed, i))?;
            Ok(separability_report(&d, k, guard)?.epsilon_sep <= epsilon)
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|&ok| ok)
        .count() as u64;
    Ok(ExistenceReport {
        m,
        designs,
        qualifying,
        fraction: qualifying as f64 / designs as f64,
    })
}
