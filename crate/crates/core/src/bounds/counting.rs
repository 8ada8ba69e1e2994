use std::f64::consts::{E, LN_2};

use super::numeric::ln_binomial;
use crate::error::{invalid, Result};

/// Information-theoretic lower bound on the number of tests:
/// `log2 C(n, k)` bits.
pub fn counting_bound(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return Err(invalid("k", format!("k = {k} exceeds n = {n}")));
    }
    Ok(ln_binomial(n, k) / LN_2)
}

/// `(log2 (n/k)^k, log2 (e n/k)^k)`, which sandwich `log2 C(n, k)`.
pub fn binom_sandwich(n: u64, k: u64) -> Result<(f64, f64)> {
    if k == 0 || k > n {
        return Err(invalid("k", format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let k_f = k as f64;
    let ratio = n as f64 / k_f;
    Ok((k_f * ratio.log2(), k_f * (E * ratio).log2()))
}
