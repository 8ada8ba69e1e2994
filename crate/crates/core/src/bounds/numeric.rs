use statrs::function::gamma::ln_gamma;

use crate::subsets::binomial_u128;

/// Below this `min(k, n-k)` the log-binomial is a direct sum of logs.
const DIRECT_SUM_LIMIT: u64 = 4096;

/// `ln C(n, k)`; `-inf` when `k > n`.
///
/// Exact integer arithmetic for `n <= 64`; otherwise a sum of logarithms
/// for small `min(k, n-k)` and log-gamma differences beyond that.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    if n <= 64 {
        return (binomial_u128(n, k).expect("C(64, k) fits in u128") as f64).ln();
    }
    let r = k.min(n - k);
    if r <= DIRECT_SUM_LIMIT {
        (0..r).map(|i| ((n - i) as f64 / (r - i) as f64).ln()).sum()
    } else {
        ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
    }
}

/// `ln Σ exp(x_i)`, `-inf` for an empty or all `-inf` input.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    max + xs.iter().map(|&x| (x - max).exp()).sum::<f64>().ln()
}

/// Sum of signed terms `sign_i · exp(ln_i)`, accumulated in log domain per
/// sign.
pub fn signed_sum_exp(terms: &[(f64, f64)]) -> f64 {
    let pos: Vec<f64> = terms.iter().filter(|t| t.0 > 0.0).map(|t| t.1).collect();
    let neg: Vec<f64> = terms.iter().filter(|t| t.0 < 0.0).map(|t| t.1).collect();
    log_sum_exp(&pos).exp() - log_sum_exp(&neg).exp()
}
