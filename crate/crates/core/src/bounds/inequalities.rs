//! Auxiliary quantities and inequalities used to derive the closed-form
//! bounds. Each `*_gap` function is nonnegative wherever its inequality
//! holds.

use std::f64::consts::LN_2;

/// `xy + ln(1 - x(1 - e^-y))`, nonnegative for `x, y` in `(0, 1)`.
pub fn log_helper_gap(x: f64, y: f64) -> f64 {
    x * y + (-x * -(-y).exp_m1()).ln_1p()
}

/// `-1/ln(1 - 2e^-alpha (1 - e^-alpha/k)) - k / (2 e^-alpha alpha)`: the
/// `M2`-style row exponent never beats its large-`k` linearization.
pub fn linearized_exponent_gap(alpha: f64, k: u64) -> f64 {
    let x = 2.0 * (-alpha).exp();
    let k_f = k as f64;
    let exact = -1.0 / (-x * -(-alpha / k_f).exp_m1()).ln_1p();
    exact - k_f / (x * alpha)
}

/// `y = 1 - 2e^-alpha`, mapping `[ln 2, 1]` onto `[0, 1 - 2/e]`.
pub fn y_of_alpha(alpha: f64) -> f64 {
    1.0 - 2.0 * (-alpha).exp()
}

pub fn alpha_of_y(y: f64) -> f64 {
    -((1.0 - y) / 2.0).ln()
}

/// `t = 1 - beta/(2 - beta)`.
pub fn t_of_beta(beta: f64) -> f64 {
    1.0 - beta / (2.0 - beta)
}

/// `y = (ln 2/(1 - ln 2)) t/(1 - t)`, the substitution behind the
/// `beta -> 1` closed form.
pub fn corollary_y(beta: f64) -> f64 {
    let t = t_of_beta(beta);
    LN_2 / (1.0 - LN_2) * t / (1.0 - t)
}

/// The rate bound for one `alpha`, written in the `(y, t)` variables.
pub fn rate_in_y(beta: f64, y: f64) -> f64 {
    let t = t_of_beta(beta);
    let plateau = LN_2 - y.mul_add(y, 1.0).ln();
    let slope = (1.0 - t) * (1.0 - y) * (LN_2 - (1.0 - y).ln());
    plateau.min(slope) / LN_2
}

/// `(1 + y(1 - ln 2)/ln 2) ln(1 + y^2) - (y + (1 - y) ln(1 - y))` on
/// `[0, 1]`, with `(1 - y) ln(1 - y)` taken as its limit 0 at `y = 1`.
pub fn y_bound_gap(y: f64) -> f64 {
    let entropy_like = if y >= 1.0 { 1.0 } else { y + (1.0 - y) * (-y).ln_1p() };
    (1.0 + y * (1.0 - LN_2) / LN_2) * y.mul_add(y, 1.0).ln() - entropy_like
}

/// `ln(1 + y^2) - (ln 2 - (1 - y))`: the chord under a concave function.
pub fn chord_gap(y: f64) -> f64 {
    y.mul_add(y, 1.0).ln() - (LN_2 - (1.0 - y))
}

/// `(k log2(nk), ((2 - beta)/beta) k log2(n/k))` for `k = n^(1 - beta)`;
/// the two agree exactly.
pub fn sparsity_identity(n: f64, beta: f64) -> (f64, f64) {
    let k = n.powf(1.0 - beta);
    (k * (n * k).log2(), (2.0 - beta) / beta * k * (n / k).log2())
}
