//! Command implementations for the `asmat` binary. Each report builder
//! returns the text it would print so it can be tested directly.

use std::f64::consts::LN_2;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use asmat_core::bounds;
use asmat_core::montecarlo::{estimate_overlap_prob, simulate_gt};
use asmat_core::verify::separability_report;
use asmat_core::{bernoulli_design, design_for_params, p_from_alpha, DesignParams, Guard, TestDesign};
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "asmat", version, about = "Almost k-separable random pooling designs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Counting bound, sufficient row counts and overlap-bound conditions.
    Bounds(BoundsArgs),
    /// Rate lower bounds over a grid of sparsity exponents, as CSV.
    RateCurve(RateCurveArgs),
    /// Draw a random Bernoulli design and write it in matrix text format.
    Design(DesignArgs),
    /// Exhaustive separability report for a design file.
    Check(CheckArgs),
    /// Monte Carlo estimate of the probability that a fixed k-set collides.
    Mc(McArgs),
    /// Simulated group testing with exhaustive decoding on a design file.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u64,
}

#[derive(Debug, Args)]
pub struct RateCurveArgs {
    #[arg(long, default_value_t = 0.01)]
    pub beta_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta_max: f64,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    /// Output path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DesignArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u64,
    /// Row count; defaults to ceil((1 + delta) M(n, k)).
    #[arg(long)]
    pub m: Option<usize>,
    /// Bernoulli parameter is 1 - exp(-alpha/k); defaults to the row-count optimum.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Exit nonzero unless epsilon_sep is at most this value.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Emit the report as JSON instead of key=value lines.
    #[arg(long)]
    pub json: bool,
    /// Lift the limit on the number of enumerated subsets.
    #[arg(long)]
    pub force_guard: bool,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = LN_2)]
    pub alpha: f64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub force_guard: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub force_guard: bool,
}

fn guard(force: bool) -> Guard {
    if force {
        Guard::UNLIMITED
    } else {
        Guard::default()
    }
}

fn check_standing(n: u64, k: u64) -> Result<()> {
    if k == 0 || 2 * k > n {
        bail!("need 1 <= k <= n/2, got n = {n}, k = {k}");
    }
    Ok(())
}

pub fn bounds_report(n: u64, k: u64) -> Result<String> {
    check_standing(n, k)?;
    let counting = bounds::counting_bound(n, k)?;
    let (lo, hi) = bounds::binom_sandwich(n, k)?;
    let opt = bounds::m_opt(n, k)?;
    let m = (1.5 * opt.rows).ceil() as u64;
    let cases = bounds::overlap_case_bounds(n, k, m, opt.alpha)?;
    let mut s = String::new();
    s += &format!("n={n}\nk={k}\n");
    s += &format!("counting_bound={counting:.6} (log2 units)\n");
    s += &format!("sandwich_lower={lo:.6} (log2 units)\nsandwich_upper={hi:.6} (log2 units)\n");
    for (label, alpha) in [("ln2", LN_2), ("1", 1.0)] {
        s += &format!("M1({label})={:.6} (log2 units)\n", bounds::m1(n, k, alpha)?);
        s += &format!("M2({label})={:.6} (log2 units)\n", bounds::m2(n, k, alpha)?);
    }
    s += &format!("M_opt={:.6} (log2 units)\nalpha_opt={:.9}\n", opt.rows, opt.alpha);
    s += &format!("m=ceil(1.5*M_opt)={m}\n");
    s += &format!("union_bound={:.6e}\n", cases.total);
    s += &format!(
        "cond2={} (m > {:.6})\ncond3={} (m > {:.6})\ncond4a={} (m > {:.6})\n",
        cases.cond2, cases.m1_threshold, cases.cond3, cases.mean_threshold, cases.cond4a, cases.cond4a_threshold
    );
    Ok(s)
}

/// Writes the rate-curve CSV to `out`, or to `stdout` when `out` is `None`.
pub fn rate_curve(args: &RateCurveArgs, stdout: &mut dyn Write) -> Result<()> {
    let points = bounds::rate_curve(args.beta_min, args.beta_max, args.steps)?;
    match &args.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
            let mut w = BufWriter::new(file);
            bounds::write_rate_curve_csv(&points, &mut w)?;
            w.flush()?;
        }
        None => bounds::write_rate_curve_csv(&points, stdout)?,
    }
    Ok(())
}

pub fn build_design(args: &DesignArgs) -> Result<(TestDesign, String)> {
    check_standing(args.n, args.k)?;
    let mut params = DesignParams::new(args.n, args.k, args.delta, args.seed)?;
    if let Some(alpha) = args.alpha {
        params = params.with_alpha(alpha)?;
    }
    let design = match args.m {
        Some(0) => bail!("need m >= 1"),
        Some(m) => bernoulli_design(args.n as usize, m, params.p(), args.seed)?,
        None => design_for_params(&params)?,
    };
    let summary = format!(
        "n={}\nk={}\nm={}\nalpha={:.9}\np={:.9}\nseed={}\ndensity={:.6}\n",
        design.n(),
        args.k,
        design.m(),
        params.alpha,
        params.p(),
        args.seed,
        design.density()
    );
    Ok((design, summary))
}

pub fn read_design(path: &Path) -> Result<TestDesign> {
    TestDesign::read_from_path(path).with_context(|| format!("cannot read design {}", path.display()))
}

/// The report text and whether the epsilon target (if any) is met.
pub fn check_report(args: &CheckArgs) -> Result<(String, bool)> {
    if let Some(eps) = args.epsilon {
        if !(0.0..=1.0).contains(&eps) {
            bail!("need epsilon in [0, 1], got {eps}");
        }
    }
    let design = read_design(&args.input)?;
    let report = separability_report(&design, args.k, guard(args.force_guard))?;
    let ok = args.epsilon.is_none_or(|eps| report.epsilon_sep <= eps);
    let text = if args.json {
        let mut v = serde_json::to_value(&report)?;
        if let Some(eps) = args.epsilon {
            v["epsilon_target"] = eps.into();
            v["meets_target"] = ok.into();
        }
        serde_json::to_string_pretty(&v)? + "\n"
    } else {
        let mut s = report.to_key_value();
        if let Some(eps) = args.epsilon {
            s += &format!("epsilon_target={eps}\nmeets_target={ok}\n");
        }
        s
    };
    Ok((text, ok))
}

pub fn mc_report(args: &McArgs) -> Result<String> {
    let est = estimate_overlap_prob(
        args.n,
        args.k,
        args.m,
        args.alpha,
        args.trials,
        args.seed,
        guard(args.force_guard),
    )?;
    let bound = bounds::overlap_union_bound(args.n as u64, args.k as u64, args.m as u64, args.alpha)?;
    let p = p_from_alpha(args.k as u64, args.alpha)?;
    Ok(format!(
        "n={}\nk={}\nm={}\nalpha={:.9}\np={:.9}\nseed={}\n{}union_bound={:.12}\n",
        args.n,
        args.k,
        args.m,
        args.alpha,
        p,
        args.seed,
        est.to_key_value(),
        bound
    ))
}

pub fn simulate_report(args: &SimulateArgs) -> Result<String> {
    let design = read_design(&args.input)?;
    let est = simulate_gt(&design, args.k, args.trials, args.seed, guard(args.force_guard))?;
    Ok(format!(
        "n={}\nm={}\nk={}\nseed={}\n{}",
        design.n(),
        design.m(),
        args.k,
        args.seed,
        est.to_key_value()
    ))
}

/// Runs one command, writing its report to `stdout`. Returns the process
/// exit code.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Bounds(a) => write!(stdout, "{}", bounds_report(a.n, a.k)?)?,
        Command::RateCurve(a) => rate_curve(&a, stdout)?,
        Command::Design(a) => {
            let (design, summary) = build_design(&a)?;
            match &a.out {
                Some(path) => {
                    design
                        .write_to_path(path)
                        .with_context(|| format!("cannot write {}", path.display()))?;
                    writeln!(stdout, "{summary}out={}", path.display())?;
                }
                None => write!(stdout, "{}", design.to_text())?,
            }
        }
        Command::Check(a) => {
            let (text, ok) = check_report(&a)?;
            write!(stdout, "{text}")?;
            if !ok {
                return Ok(1);
            }
        }
        Command::Mc(a) => write!(stdout, "{}", mc_report(&a)?)?,
        Command::Simulate(a) => write!(stdout, "{}", simulate_report(&a)?)?,
    }
    Ok(0)
}
