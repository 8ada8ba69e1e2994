//! One-dimensional maximization on a closed interval.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    pub x: f64,
    pub value: f64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`,
/// stopping once the bracket is narrower than `tol`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Optimum {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    Optimum { x, value: f(x) }
}

/// Coarse scan of `points` evenly spaced abscissae (endpoints included),
/// then golden-section refinement in the cells around the best one.
///
/// The grid keeps the first (smallest-x) point among equal values, and the
/// refined point replaces it only on a strict improvement.
pub fn maximize_grid_golden(f: impl Fn(f64) -> f64, lo: f64, hi: f64, points: usize, tol: f64) -> Optimum {
    assert!(points >= 2 && lo <= hi);
    let step = (hi - lo) / (points - 1) as f64;
    let at = |i: usize| if i == points - 1 { hi } else { lo + step * i as f64 };
    let mut best = Optimum { x: lo, value: f(lo) };
    let mut best_i = 0;
    for i in 1..points {
        let x = at(i);
        let v = f(x);
        if v > best.value {
            best = Optimum { x, value: v };
            best_i = i;
        }
    }
    let a = at(best_i.saturating_sub(1));
    let b = at((best_i + 1).min(points - 1));
    let refined = golden_section_max(&f, a, b, tol);
    if refined.value > best.value {
        refined
    } else {
        best
    }
}

/// Root of `f` on `[a, b]` by bisection; `None` when the endpoint values do
/// not bracket a sign change.
pub fn bisect_root(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Option<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    while b - a > tol {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Some(0.5 * (a + b))
}
