//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::{E, LN_2};
use std::time::{Duration, Instant};

use asmat_core::bounds::{self, inequalities};
use asmat_core::montecarlo::{estimate_epsilon, estimate_overlap_prob, markov_existence_at_m, markov_existence_check};
use asmat_core::rng::derive_seed;
use asmat_core::verify::{decode, exact_error_probability, separability_report, DecodeResult};
use asmat_core::{bernoulli_design, p_from_alpha, Guard, McEstimate, TestDesign};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within_budget(elapsed: Duration, budget: Duration) -> bool {
    elapsed <= budget
}

fn c1_identity() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in [6u64, 8, 10, 12] {
        for k in [1u64, 2, 3] {
            for m in [4u64, 8, 16] {
                for alpha in [LN_2, 0.8, 1.0] {
                    let a = bounds::overlap_union_bound(n, k, m, alpha).unwrap();
                    let b = bounds::overlap_expanded(n, k, m, alpha).unwrap();
                    worst = worst.max((a - b).abs() / a.abs().max(f64::MIN_POSITIVE));
                }
            }
        }
    }
    let t = start.elapsed();
    outcome(
        worst <= 1e-9 && within_budget(t, Duration::from_secs(1)),
        format!("max rel diff {worst:.3e}, {t:?}"),
    )
}

fn c2_bound_validity() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut lines = Vec::new();
    for n in [6usize, 8, 10] {
        for m in [4usize, 8, 12, 16] {
            let e = estimate_overlap_prob(
                n,
                2,
                m,
                LN_2,
                20_000,
                derive_seed(2, (n * 100 + m) as u64),
                Guard::default(),
            )
            .unwrap();
            let bound = bounds::overlap_union_bound(n as u64, 2, m as u64, LN_2)
                .unwrap()
                .min(1.0);
            ok &= e.wilson_lo <= bound;
            lines.push(format!("({n},{m}) lo={:.4} bound={:.4}", e.wilson_lo, bound));
        }
    }
    let t = start.elapsed();
    outcome(
        ok && within_budget(t, Duration::from_secs(120)),
        format!("{}; {t:?}", lines.join(" ")),
    )
}

fn c3_worked_value() -> Outcome {
    let v = bounds::overlap_union_bound(6, 2, 4, LN_2).unwrap();
    outcome((v - 2.375).abs() <= 1e-12, format!("value {v}"))
}

fn c4_m2_closed_form() -> Outcome {
    let mut worst = 0.0f64;
    for (n, k) in [(1024u64, 16u64), (100, 5), (1_000_000, 10)] {
        let m2 = bounds::m2(n, k, LN_2).unwrap();
        let expect = k as f64 * ((n * k) as f64).log2();
        worst = worst.max((m2 - expect).abs() / expect);
    }
    outcome(worst <= 1e-9, format!("max rel diff {worst:.3e}"))
}

fn c5_rate_endpoint() -> Outcome {
    let r = bounds::rate_thm4(1.0).unwrap();
    outcome(
        (r.rate - 1.0).abs() <= 1e-6 && (r.alpha - LN_2).abs() <= 1e-4,
        format!("rate {:.9} at alpha {:.9}", r.rate, r.alpha),
    )
}

fn c6_constants() -> Outcome {
    let b0 = bounds::beta0();
    let b1 = bounds::beta1();
    let dd1 = bounds::dd_rate(1.0).unwrap();
    let pre = bounds::first_minimand(1.0, 1.0) / LN_2;
    let ok = (b0 - 0.919).abs() <= 1e-3
        && (b1 - 0.945).abs() <= 1e-3
        && (dd1 - 0.531).abs() <= 1e-3
        && (pre - 1.0615).abs() <= 1e-3
        && (pre - 2.0 / (E * LN_2)).abs() <= 1e-15;
    outcome(
        ok,
        format!("beta0 {b0:.6}, beta1 {b1:.6}, dd(1) {dd1:.6}, R(1) prefactor {pre:.6}"),
    )
}

fn c7_crossing() -> Outcome {
    let mut worst = f64::INFINITY;
    for i in 1..=100 {
        let beta = 0.68 + 0.32 * i as f64 / 100.0;
        let gap = bounds::rate_thm4(beta).unwrap().rate - bounds::dd_rate(beta).unwrap();
        worst = worst.min(gap);
    }
    let t_half = bounds::rate_thm4(0.5).unwrap().rate;
    let dd_half = bounds::dd_rate(0.5).unwrap();
    let sparse_note = if t_half <= dd_half {
        "ordering at 0.5 as expected"
    } else {
        "REPORT: thm4 exceeds dd at 0.5"
    };
    outcome(
        worst > 0.0,
        format!("min thm4-dd on (0.68,1] {worst:.6}; at 0.5 thm4 {t_half:.6} dd {dd_half:.6} ({sparse_note})"),
    )
}

fn c8ab_dominance_continuity() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    for i in 1..=200 {
        let beta = i as f64 / 201.0;
        let d = bounds::rate_cor2(beta).unwrap() - bounds::rate_thm4(beta).unwrap().rate;
        worst = worst.max(d);
    }
    let (sparse, plateau) = bounds::cor2_branches(bounds::beta0());
    let jump = (sparse - plateau).abs();
    outcome(
        worst <= 1e-9 && jump <= 1e-9,
        format!("max cor2-thm4 {worst:.3e}; branch gap at beta0 {jump:.3e}"),
    )
}

fn c8c_alternate_alpha() -> Outcome {
    let mut worst = 0.0f64;
    let mut lines = Vec::new();
    for beta in [0.93, 0.95, 0.97, 0.99] {
        let alt = bounds::appendix_b_alpha(beta).unwrap();
        let via_alt = bounds::rate_at_alpha(beta, alt.alpha);
        let opt = bounds::rate_thm4(beta).unwrap().rate;
        let d = (via_alt - opt).abs();
        worst = worst.max(d);
        lines.push(format!("{beta}: {d:.2e}"));
    }
    outcome(worst <= 1e-6, format!("|alt - thm4| {}", lines.join(", ")))
}

fn c9_inequalities() -> Outcome {
    let start = Instant::now();
    let mut helper = f64::INFINITY;
    for i in 1..=100 {
        for j in 1..=100 {
            helper = helper.min(inequalities::log_helper_gap(i as f64 / 101.0, j as f64 / 101.0));
        }
    }
    let mut ybound = f64::INFINITY;
    let mut chord = f64::INFINITY;
    let steps = 10_000;
    for i in 0..=steps {
        let y = (1.0 - 1e-9) * i as f64 / steps as f64;
        ybound = ybound.min(inequalities::y_bound_gap(y));
        chord = chord.min(inequalities::chord_gap(y));
    }
    ybound = ybound.min(inequalities::y_bound_gap(1.0));
    chord = chord.min(inequalities::chord_gap(1.0));
    let t = start.elapsed();
    let tol = -1e-15;
    outcome(
        helper >= tol && ybound >= tol && chord >= tol && within_budget(t, Duration::from_secs(1)),
        format!("min gaps: helper {helper:.3e}, y-bound {ybound:.3e}, chord {chord:.3e}; {t:?}"),
    )
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn c10_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let g = Guard::default();
    let mut failures = Vec::new();
    for i in 0..200u64 {
        let n = 6 + (i % 9) as usize;
        let k = 1 + (i % 3) as usize;
        let m = 3 + (i % 13) as usize;
        let d = bernoulli_design(n, m, p_from_alpha(k as u64, LN_2).unwrap(), derive_seed(10, i)).unwrap();
        let r = separability_report(&d, k, g).unwrap();
        let exact = exact_error_probability(&d, k, g).unwrap();
        let mut ambiguous = 0u64;
        let mut decode_ok = true;
        for set in k_subsets(n, k) {
            match decode(&d, &d.union_support(&set).unwrap(), k, g).unwrap() {
                DecodeResult::Unique(found) => decode_ok &= found == set,
                DecodeResult::Ambiguous(all) => {
                    decode_ok &= all.contains(&set);
                    ambiguous += 1;
                }
                DecodeResult::NoMatch => decode_ok = false,
            }
        }
        let ok = r.epsilon_sep <= r.epsilon_disj
            && exact == r.epsilon_sep_exact()
            && ambiguous == r.overlapping_subsets_sep
            && decode_ok;
        if !ok {
            failures.push(i);
        }
    }
    let t = start.elapsed();
    outcome(
        failures.is_empty() && within_budget(t, Duration::from_secs(120)),
        format!("200 designs, failures {failures:?}; {t:?}"),
    )
}

fn c11_markov_existence() -> Outcome {
    let g = Guard::default();
    let base = markov_existence_check(14, 2, LN_2, 1.0, 0.05, 200, 11, g).unwrap();
    let m0 = base.m;
    let mut ok = true;
    let mut lines = vec![format!("m0={m0} fraction {:.3}", base.fraction)];
    for seed in [1u64, 2, 3] {
        let fr: Vec<f64> = [m0, 2 * m0, 4 * m0]
            .iter()
            .map(|&m| {
                markov_existence_at_m(14, 2, m, LN_2, 0.05, 200, seed, g)
                    .unwrap()
                    .fraction
            })
            .collect();
        ok &= fr.windows(2).all(|w| w[0] <= w[1]);
        lines.push(format!("seed {seed}: {fr:?}"));
    }
    outcome(ok, lines.join("; "))
}

/// Design, overlap estimate, epsilon estimate, report text, CSV bytes.
type Snapshot = (TestDesign, McEstimate, McEstimate, String, Vec<u8>);

fn snapshot() -> Snapshot {
    let d = bernoulli_design(40, 30, p_from_alpha(3, LN_2).unwrap(), 1234).unwrap();
    let overlap = estimate_overlap_prob(12, 2, 10, LN_2, 5_000, 99, Guard::default()).unwrap();
    let eps = estimate_epsilon(&d, 3, 5_000, 7).unwrap();
    let report = separability_report(&d, 2, Guard::default()).unwrap().to_key_value();
    let mut csv = Vec::new();
    bounds::write_rate_curve_csv(&bounds::rate_curve(0.05, 1.0, 60).unwrap(), &mut csv).unwrap();
    (d, overlap, eps, report, csv)
}

fn c12_reproducibility() -> Outcome {
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(snapshot)
    };
    let one = run(1);
    let four = run(4);
    let again = run(4);
    let default = snapshot();
    outcome(
        one == four && four == again && one == default,
        format!("1 vs 4 vs default threads; csv {} bytes", one.4.len()),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 13] = [
        ("1 algebraic identity", c1_identity),
        ("2 bound validity", c2_bound_validity),
        ("3 worked bound value", c3_worked_value),
        ("4 closed-form row count", c4_m2_closed_form),
        ("5 rate endpoint", c5_rate_endpoint),
        ("6 closed-form constants", c6_constants),
        ("7 rate crossing", c7_crossing),
        ("8a/8b corollary dominance and continuity", c8ab_dominance_continuity),
        ("8c alternate alpha matches optimum", c8c_alternate_alpha),
        ("9 inequality suites", c9_inequalities),
        ("10 oracle equivalence", c10_oracle_equivalence),
        ("11 existence fraction monotone in m", c11_markov_existence),
        ("12 reproducibility", c12_reproducibility),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {name}: {} ({})",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("acceptance: {} of {} passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
