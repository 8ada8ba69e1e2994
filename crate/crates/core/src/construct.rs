//! Seeded IID Bernoulli designs.

use serde::Serialize;

use crate::bounds::m_opt;
use crate::design::TestDesign;
use crate::error::{invalid, Result};
use crate::rng::Xoshiro256StarStar;
use crate::support::SupportSet;

/// Entry probability `p = 1 - e^(-alpha/k)`.
pub fn p_from_alpha(k: u64, alpha: f64) -> Result<f64> {
    if k == 0 {
        return Err(invalid("k", "need k >= 1"));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(invalid("alpha", format!("need alpha > 0, got {alpha}")));
    }
    Ok(-(-alpha / k as f64).exp_m1())
}

/// `m × n` design with IID Bernoulli(`p`) entries.
///
/// Entries are drawn row-major (row 0 item 0 first); entry is 1 iff the
/// next uniform draw is `< p`. The stream is xoshiro256** seeded from
/// `seed` through splitmix64, so the matrix is reproducible everywhere.
pub fn bernoulli_design(n: usize, m: usize, p: f64, seed: u64) -> Result<TestDesign> {
    if !(p > 0.0 && p < 1.0) {
        return Err(invalid("p", format!("need 0 < p < 1, got {p}")));
    }
    if n == 0 || m == 0 {
        return Err(invalid("n/m", "need n >= 1 and m >= 1"));
    }
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let rows = (0..m)
        .map(|_| {
            let mut row = SupportSet::empty(n);
            for i in 0..n {
                if rng.next_f64() < p {
                    row.insert(i);
                }
            }
            row
        })
        .collect();
    TestDesign::from_rows(n, rows)
}

/// Parameters of a random design sized to be almost `k`-separable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DesignParams {
    pub n: u64,
    pub k: u64,
    pub alpha: f64,
    pub delta: f64,
    pub seed: u64,
    /// `M(n, k)`, real-valued.
    pub row_bound: f64,
}

impl DesignParams {
    /// Uses the `alpha` that attains `M(n, k)`.
    pub fn new(n: u64, k: u64, delta: f64, seed: u64) -> Result<Self> {
        if k == 0 || 2 * k > n {
            return Err(invalid("k", format!("need 1 <= k <= n/2, got k = {k}, n = {n}")));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(invalid("delta", format!("need delta > 0, got {delta}")));
        }
        let opt = m_opt(n, k)?;
        Ok(Self {
            n,
            k,
            alpha: opt.alpha,
            delta,
            seed,
            row_bound: opt.rows,
        })
    }

    /// Replaces the Bernoulli parameter; the row count is unchanged.
    pub fn with_alpha(mut self, alpha: f64) -> Result<Self> {
        if !(std::f64::consts::LN_2..=1.0).contains(&alpha) {
            return Err(invalid("alpha", format!("need alpha in [ln 2, 1], got {alpha}")));
        }
        self.alpha = alpha;
        Ok(self)
    }

    pub fn p(&self) -> f64 {
        p_from_alpha(self.k, self.alpha).expect("validated at construction")
    }

    /// `ceil((1 + delta) M(n, k))`.
    pub fn m(&self) -> usize {
        ((1.0 + self.delta) * self.row_bound).ceil().max(1.0) as usize
    }
}

pub fn design_for_params(params: &DesignParams) -> Result<TestDesign> {
    bernoulli_design(params.n as usize, params.m(), params.p(), params.seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn p_values() {
        assert!((p_from_alpha(1, LN_2).unwrap() - 0.5).abs() < 1e-15);
        assert!((p_from_alpha(2, LN_2).unwrap() - (1.0 - 0.5f64.sqrt())).abs() < 1e-15);
        let p = p_from_alpha(1000, 1.0).unwrap();
        assert!((p - 0.000_999_500_166_625_008_5).abs() < 1e-15);
        assert!((p - 1e-3).abs() < 1e-6);
        assert!(p_from_alpha(0, 1.0).is_err());
        assert!(p_from_alpha(3, 0.0).is_err());
        assert!(p_from_alpha(3, -1.0).is_err());
    }

    #[test]
    fn degenerate_probabilities() {
        let zero = bernoulli_design(5, 3, 1e-12, 1).unwrap();
        assert!((0..3).all(|t| zero.row(t).is_empty()));
        let one = bernoulli_design(5, 3, 1.0 - 1e-12, 1).unwrap();
        assert!((0..3).all(|t| one.row(t).count() == 5));
        assert!(bernoulli_design(5, 3, 0.0, 1).is_err());
        assert!(bernoulli_design(5, 3, 1.0, 1).is_err());
    }

    #[test]
    fn density_near_half() {
        let d = bernoulli_design(100, 100, 0.5, 42).unwrap();
        let rho = d.density();
        assert!((0.45..=0.55).contains(&rho), "{rho}");
        assert!(d.transpose_check());
    }

    #[test]
    fn reproducible_and_row_major() {
        let a = bernoulli_design(17, 9, 0.3, 99).unwrap();
        let b = bernoulli_design(17, 9, 0.3, 99).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, bernoulli_design(17, 9, 0.3, 100).unwrap());
        let mut rng = Xoshiro256StarStar::seed_from_u64(99);
        for t in 0..9 {
            for i in 0..17 {
                assert_eq!(a.entry(t, i), rng.next_f64() < 0.3);
            }
        }
    }

    #[test]
    fn density_within_binomial_band() {
        for (seed, p) in [(1u64, 0.05), (2, 0.3), (3, 0.7)] {
            let (n, m) = (200usize, 150usize);
            let d = bernoulli_design(n, m, p, seed).unwrap();
            let cells = (n * m) as f64;
            let sigma = (p * (1.0 - p) / cells).sqrt();
            assert!((d.density() - p).abs() < 4.0 * sigma);
        }
    }

    #[test]
    fn params_drive_row_count() {
        let params = DesignParams::new(12, 2, 0.5, 7).unwrap();
        let opt = m_opt(12, 2).unwrap();
        assert_eq!(params.alpha, opt.alpha);
        let d = design_for_params(&params).unwrap();
        assert_eq!(d.m(), (1.5 * opt.rows).ceil() as usize);
        assert_eq!(d.n(), 12);
        assert_eq!(d, design_for_params(&params).unwrap());

        let small = DesignParams::new(4, 2, 0.1, 0).unwrap();
        assert!(design_for_params(&small).unwrap().m() >= 1);
        assert!(DesignParams::new(4, 3, 0.1, 0).is_err());
        assert!(DesignParams::new(10, 2, 0.0, 0).is_err());
        assert!(DesignParams::new(10, 2, 0.5, 0).unwrap().with_alpha(1.2).is_err());
    }
}
