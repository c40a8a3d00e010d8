use std::f64::consts::{FRAC_PI_2, PI};
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;

use realitysim::eraser::{self, AliceConfig, Branch, Stage, Target};
use realitysim::rng::derive_seed;
use realitysim::sweep::{write_sweep_csv, SweepRecord};
use realitysim::tomography::{monte_carlo_irreality, simulate_counts};
use realitysim::{ObservableSpec, ProtocolConfig};

use crate::output::{out_dir, write_json, RunManifest};
use crate::{usage, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetArg {
    B,
    D1,
    D2,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::B => Target::PathB,
            TargetArg::D1 => Target::D1,
            TargetArg::D2 => Target::D2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum ConfigArg {
    Cz,
    Cx,
    Both,
}

impl ConfigArg {
    fn configs(self) -> Vec<AliceConfig> {
        match self {
            ConfigArg::Cz => vec![AliceConfig::Cz],
            ConfigArg::Cx => vec![AliceConfig::Cx],
            ConfigArg::Both => vec![AliceConfig::Cz, AliceConfig::Cx],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchArg {
    Plus,
    Minus,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Plus => Branch::Plus,
            BranchArg::Minus => Branch::Minus,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    /// Protocol stage: 1 before the beam displacers, 2 after.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub stage: u8,
    /// Qubit whose irreality is reported [default: b at stage 1, d1 at stage 2].
    #[arg(long, value_enum, ignore_case = true)]
    pub target: Option<TargetArg>,
    /// Alice's configuration.
    #[arg(long, value_enum, ignore_case = true, default_value = "both")]
    pub config: ConfigArg,
    /// Number of theta points.
    #[arg(long, default_value_t = 41)]
    pub grid: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta_min: f64,
    /// Upper end of the theta range [default: pi/2].
    #[arg(long, allow_negative_numbers = true)]
    pub theta_max: Option<f64>,
    /// Read --theta-min/--theta-max in degrees.
    #[arg(long)]
    pub degrees: bool,
    /// Alice's kept outcome (for Cz: plus = |0>, minus = |1>).
    #[arg(long, value_enum, ignore_case = true, default_value = "plus")]
    pub branch: BranchArg,
    /// Bob's kept outcome.
    #[arg(long, value_enum, ignore_case = true, default_value = "plus")]
    pub bob_branch: BranchArg,
    /// Add simulated-tomography columns with Monte Carlo error bars.
    #[arg(long)]
    pub tomo: bool,
    /// Shots per measurement setting for --tomo.
    #[arg(long, default_value_t = 10_000)]
    pub shots: u64,
    /// Monte Carlo resamples for --tomo.
    #[arg(long, default_value_t = 100)]
    pub resamples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    #[serde(skip)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct CurveSummary {
    config: AliceConfig,
    points: usize,
    irreality_max: f64,
    theta_at_max: f64,
    irreality_first: f64,
    irreality_last: f64,
    coherence_max: f64,
    discord_max: f64,
}

#[derive(Debug, Serialize)]
struct SweepSummary {
    schema: &'static str,
    stage: u8,
    target: &'static str,
    theta_min: f64,
    theta_max: f64,
    grid: usize,
    seed: u64,
    tomography: bool,
    curves: Vec<CurveSummary>,
}

fn summarize(config: AliceConfig, rows: &[&SweepRecord]) -> CurveSummary {
    let best = rows
        .iter()
        .max_by(|a, b| a.irreality_analytic.total_cmp(&b.irreality_analytic))
        .expect("grid is nonempty");
    CurveSummary {
        config,
        points: rows.len(),
        irreality_max: best.irreality_analytic,
        theta_at_max: best.theta,
        irreality_first: rows[0].irreality_analytic,
        irreality_last: rows[rows.len() - 1].irreality_analytic,
        coherence_max: rows.iter().map(|r| r.coherence).fold(0.0, f64::max),
        discord_max: rows.iter().map(|r| r.discord).fold(0.0, f64::max),
    }
}

fn theta_range(args: &SweepArgs) -> CliResult<(f64, f64)> {
    let scale = if args.degrees { PI / 180.0 } else { 1.0 };
    let lo = args.theta_min * scale;
    let hi = args.theta_max.map(|t| t * scale).unwrap_or(FRAC_PI_2);
    if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 || hi > PI + 1e-12 || lo > hi {
        return Err(usage(format!(
            "theta range [{lo}, {hi}] rad must satisfy 0 <= min <= max <= pi"
        )));
    }
    Ok((lo, hi.min(PI)))
}

pub fn run(args: SweepArgs, argv: &[String]) -> CliResult {
    if args.grid == 0 {
        return Err(usage("--grid must be at least 1"));
    }
    if args.tomo && args.shots == 0 {
        return Err(usage("--shots must be at least 1"));
    }
    if args.tomo && args.resamples < 2 {
        return Err(usage("--resamples must be at least 2"));
    }
    let (lo, hi) = theta_range(&args)?;
    let stage = if args.stage == 1 { Stage::Psi1 } else { Stage::Psi2 };
    let target: Target = args
        .target
        .map(Target::from)
        .unwrap_or(if args.stage == 1 { Target::PathB } else { Target::D1 });
    let grid = eraser::uniform_grid(lo, hi, args.grid);
    println!("seed: {}", args.seed);

    let mut records = Vec::new();
    for config in args.config.configs() {
        let mut template = ProtocolConfig::new(lo, config);
        template.alice_branch = args.branch.into();
        template.bob_branch = args.bob_branch.into();
        records.extend(eraser::irreality_curve(&template, stage, target, &grid)?);
    }

    if args.tomo {
        let x = ObservableSpec::sigma_z(target.label());
        for (i, rec) in records.iter_mut().enumerate() {
            let mut cfg = ProtocolConfig::new(rec.theta, rec.config);
            cfg.alice_branch = args.branch.into();
            cfg.bob_branch = args.bob_branch.into();
            let (ket, _) = eraser::omega(&cfg, stage)?;
            let data = simulate_counts(&ket.to_density(), args.shots, derive_seed(args.seed, 2 * i as u64))?;
            let est = monte_carlo_irreality(&data, &x, args.resamples, derive_seed(args.seed, 2 * i as u64 + 1))?;
            rec.irreality_tomo_mean = Some(est.mean);
            rec.irreality_tomo_std = Some(est.std);
        }
    }

    let dir = out_dir(args.out_dir.as_deref())?;
    let mut csv = Vec::new();
    write_sweep_csv(&mut csv, &records)?;
    std::fs::write(dir.join("sweep.csv"), csv)?;

    let curves = args
        .config
        .configs()
        .into_iter()
        .map(|c| {
            let rows: Vec<&SweepRecord> = records.iter().filter(|r| r.config == c).collect();
            summarize(c, &rows)
        })
        .collect();
    let summary = SweepSummary {
        schema: "realitysim.sweep_summary/v1",
        stage: args.stage,
        target: target.label(),
        theta_min: lo,
        theta_max: hi,
        grid: args.grid,
        seed: args.seed,
        tomography: args.tomo,
        curves,
    };
    write_json(&dir.join("sweep_summary.json"), &summary)?;
    RunManifest::new("sweep", argv, &args, Some(args.seed)).write(&dir)?;
    println!("wrote {} rows to {}", records.len(), dir.join("sweep.csv").display());
    Ok(())
}
