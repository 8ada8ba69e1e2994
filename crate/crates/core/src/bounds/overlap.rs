//! The union bound on the probability that a fixed `k`-set has a colliding
//! partner, its expansion by powers of `s + t u^b`, and the three-range
//! partial-sum bounds used to show it vanishes.

use std::f64::consts::LN_2;

use serde::Serialize;

use super::numeric::{ln_binomial, log_sum_exp, signed_sum_exp};
use crate::error::{invalid, Result};

fn check(n: u64, k: u64, m: u64, alpha: f64) -> Result<()> {
    if k == 0 || 2 * k > n {
        return Err(invalid("k", format!("need 1 <= k <= n/2, got k = {k}, n = {n}")));
    }
    if m == 0 {
        return Err(invalid("m", "need at least one test"));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(invalid("alpha", format!("need alpha > 0, got {alpha}")));
    }
    Ok(())
}

/// `ln(1 - 2 q^k + 2 q^(2k-b))` with `q = exp(-alpha/k)` and `c = k - b`,
/// written as `ln(1 - 2 e^-alpha (1 - e^(-alpha c / k)))`.
fn ln_row_fails(k: u64, c: u64, alpha: f64) -> f64 {
    let x = 2.0 * (-alpha).exp();
    (-x * -(-alpha * c as f64 / k as f64).exp_m1()).ln_1p()
}

/// Natural log of [`overlap_union_bound`].
pub fn ln_overlap_union_bound(n: u64, k: u64, m: u64, alpha: f64) -> Result<f64> {
    check(n, k, m, alpha)?;
    let terms: Vec<f64> = (0..k)
        .map(|b| ln_binomial(k, b) + ln_binomial(n - k, k - b) + m as f64 * ln_row_fails(k, k - b, alpha))
        .collect();
    Ok(log_sum_exp(&terms))
}

/// `Σ_{b=0}^{k-1} C(k,b) C(n-k,k-b) (1 - 2q^k + 2q^(2k-b))^m`, `q = e^(-alpha/k)`.
///
/// An upper bound on the probability that a fixed `k`-set `K` of an IID
/// Bernoulli(`1 - q`) design shares its union with some other `k`-set.
/// Being a union bound it can exceed 1.
pub fn overlap_union_bound(n: u64, k: u64, m: u64, alpha: f64) -> Result<f64> {
    Ok(ln_overlap_union_bound(n, k, m, alpha)?.exp())
}

/// The same quantity after expanding each power binomially and swapping the
/// sums:
///
/// `Σ_{j=0}^m C(m,j) s^(m-j) t^j u^(jk) Σ_{c=1}^k C(k,c) C(n-k,c) q^(cj)`
///
/// with `s = 1 - 2e^-alpha`, `t = 2e^-2alpha`, `u = 1/q`. Costs `O(m k)`
/// terms. For `alpha < ln 2` the `s` powers alternate in sign and the sum
/// is accumulated per sign.
pub fn overlap_expanded(n: u64, k: u64, m: u64, alpha: f64) -> Result<f64> {
    check(n, k, m, alpha)?;
    let st = Substitution::new(alpha, k);
    let ln_abs_s = st.s.abs().ln();
    let ln_t = LN_2 - 2.0 * alpha;
    let k_f = k as f64;
    let mut terms = Vec::with_capacity(m as usize + 1);
    let mut inner = Vec::with_capacity(k as usize);
    for j in 0..=m {
        let power = m - j;
        let (sign, ln_s_pow) = if power == 0 {
            (1.0, 0.0)
        } else if st.s == 0.0 {
            continue;
        } else {
            let sign = if st.s < 0.0 && power % 2 == 1 { -1.0 } else { 1.0 };
            (sign, power as f64 * ln_abs_s)
        };
        inner.clear();
        inner.extend((1..=k).map(|c| ln_binomial(k, c) + ln_binomial(n - k, c) - (c * j) as f64 * alpha / k_f));
        let ln_term =
            ln_binomial(m, j) + ln_s_pow + j as f64 * ln_t + (j * k) as f64 * alpha / k_f + log_sum_exp(&inner);
        terms.push((sign, ln_term));
    }
    Ok(signed_sum_exp(&terms))
}

/// `s`, `t`, `u` for a given `alpha` and `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Substitution {
    pub s: f64,
    pub t: f64,
    pub u: f64,
}

impl Substitution {
    pub fn new(alpha: f64, k: u64) -> Self {
        Self {
            s: 1.0 - 2.0 * (-alpha).exp(),
            t: 2.0 * (-2.0 * alpha).exp(),
            u: (alpha / k as f64).exp(),
        }
    }
}

/// Partial-sum bounds for the three ranges of `j` in [`overlap_expanded`]
/// and the conditions on `m` that make each one small.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OverlapBoundBreakdown {
    /// Value of [`overlap_union_bound`].
    pub total: f64,
    /// `j <= (k/alpha) ln(n/k)`: `k exp(2k + k ln(n/k) + m ln(s+t))`.
    pub case1: f64,
    /// Middle range: `k exp(2k - 2m (t u^k - k ln(nk)/(alpha m))^2)`, or
    /// `+inf` when `m t u^k <= (k/alpha) ln(nk)`.
    pub case2: f64,
    /// Whether the mean condition behind `case2` holds.
    pub case2_applicable: bool,
    /// `j >= (k/alpha) ln(nk)`: `5 exp(ln(nk) + m ln(s + t u^(k-1)))`.
    pub case3: f64,
    /// `m > M1(n,k,alpha)`.
    pub cond2: bool,
    /// `m > (e^alpha / (2 alpha)) k ln(nk)`, i.e. `m t u^k > (k/alpha) ln(nk)`.
    pub cond3: bool,
    /// `m > ln(nk) / -ln(s + t u^(k-1))`.
    pub cond4a: bool,
    pub m1_threshold: f64,
    pub mean_threshold: f64,
    pub cond4a_threshold: f64,
}

pub fn overlap_case_bounds(n: u64, k: u64, m: u64, alpha: f64) -> Result<OverlapBoundBreakdown> {
    check(n, k, m, alpha)?;
    let (n_f, k_f, m_f) = (n as f64, k as f64, m as f64);
    let ln_nk = (n_f * k_f).ln();

    let ln_s_plus_t = ln_row_fails(k, k, alpha);
    let case1 = k_f * (2.0 * k_f + k_f * (n_f / k_f).ln() + m_f * ln_s_plus_t).exp();

    let tuk = 2.0 * (-alpha).exp();
    let mean_target = k_f * ln_nk / alpha;
    let case2_applicable = m_f * tuk > mean_target;
    let case2 = if case2_applicable {
        let gap = tuk - k_f * ln_nk / (alpha * m_f);
        k_f * (2.0 * k_f - 2.0 * m_f * gap * gap).exp()
    } else {
        f64::INFINITY
    };

    // s + t u^(k-1) = 1 - 2e^-alpha (1 - e^(-alpha/k))
    let ln_case3_base = ln_row_fails(k, 1, alpha);
    let case3 = 5.0 * (ln_nk + m_f * ln_case3_base).exp();
    let cond4a_threshold = ln_nk / -ln_case3_base;

    let m1_threshold = k_f * (n_f / k_f).ln() / -ln_s_plus_t;
    Ok(OverlapBoundBreakdown {
        total: overlap_union_bound(n, k, m, alpha)?,
        case1,
        case2,
        case2_applicable,
        case3,
        cond2: m_f > m1_threshold,
        cond3: case2_applicable,
        cond4a: m_f > cond4a_threshold,
        m1_threshold,
        mean_threshold: mean_target / tuk,
        cond4a_threshold,
    })
}
