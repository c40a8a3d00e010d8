use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;

use realitysim::eraser::{self, AliceConfig, Stage};
use realitysim::tomography::{reconstruct, simulate_counts, TomographyDataset};
use realitysim::{DensityMatrix, ProtocolConfig, ReconstructionResult};

use crate::output::{out_dir, write_json, write_text, RunManifest};
use crate::{usage, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StateArg {
    Omega1z,
    Omega1x,
    Omega2z,
    Omega2x,
}

impl StateArg {
    fn stage_and_config(self) -> (Stage, AliceConfig) {
        match self {
            StateArg::Omega1z => (Stage::Psi1, AliceConfig::Cz),
            StateArg::Omega1x => (Stage::Psi1, AliceConfig::Cx),
            StateArg::Omega2z => (Stage::Psi2, AliceConfig::Cz),
            StateArg::Omega2x => (Stage::Psi2, AliceConfig::Cx),
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TomoArgs {
    /// Count dataset (JSON) to reconstruct.
    #[arg(long, conflicts_with = "simulate")]
    pub input: Option<PathBuf>,
    /// Simulate counts from one of the protocol states instead.
    #[arg(long)]
    pub simulate: bool,
    #[arg(long, value_enum, ignore_case = true, default_value = "omega2x")]
    pub state: StateArg,
    /// Source angle [default: pi/2].
    #[arg(long)]
    pub theta: Option<f64>,
    /// Read --theta in degrees.
    #[arg(long)]
    pub degrees: bool,
    /// Shots per measurement setting.
    #[arg(long, default_value_t = 100_000)]
    pub shots: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Also write the simulated counts to dataset.json.
    #[arg(long)]
    pub save_dataset: bool,
    /// Largest register accepted from --input.
    #[arg(long, default_value_t = realitysim::tomography::DEFAULT_MAX_QUBITS)]
    pub max_qubits: usize,
    #[arg(long)]
    #[serde(skip)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct TomoReport {
    schema: &'static str,
    source: String,
    labels: Vec<String>,
    n_qubits: usize,
    shots_per_setting: u64,
    seed: u64,
    fidelity: Option<f64>,
    purity: f64,
    min_linear_eigenvalue: f64,
    /// Largest |Im| entry and largest off-diagonal |Re| entry of the estimate.
    max_abs_imag: f64,
    max_abs_real_coherence: f64,
}

fn bar_chart_csv(rho: &DensityMatrix) -> String {
    let reg = rho.register();
    let n = reg.len();
    let ket = |i: usize| format!("{:0width$b}", i, width = n);
    let mut out = String::from("# schema: realitysim.rho/v1\nrow,col,row_ket,col_ket,real,imag\n");
    for i in 0..rho.dim() {
        for j in 0..rho.dim() {
            let z = rho.matrix()[(i, j)];
            let _ = writeln!(out, "{i},{j},{},{},{:.12e},{:.12e}", ket(i), ket(j), z.re, z.im);
        }
    }
    out
}

fn report(source: String, data: &TomographyDataset, rec: &ReconstructionResult) -> TomoReport {
    let m = rec.rho_physical.matrix();
    let d = rec.rho_physical.dim();
    let mut max_abs_imag = 0.0f64;
    let mut max_abs_real_coherence = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            max_abs_imag = max_abs_imag.max(m[(i, j)].im.abs());
            if i != j {
                max_abs_real_coherence = max_abs_real_coherence.max(m[(i, j)].re.abs());
            }
        }
    }
    TomoReport {
        schema: "realitysim.tomo_report/v1",
        source,
        labels: rec.rho_physical.register().labels().to_vec(),
        n_qubits: data.n_qubits,
        shots_per_setting: data.shots_per_setting,
        seed: data.seed,
        fidelity: rec.fidelity_to_truth,
        purity: rec.purity,
        min_linear_eigenvalue: rec.min_linear_eigenvalue,
        max_abs_imag,
        max_abs_real_coherence,
    }
}

pub fn run(args: TomoArgs, argv: &[String]) -> CliResult {
    let (data, truth, source) = match (&args.input, args.simulate) {
        (Some(path), _) => {
            let data = TomographyDataset::load(path)?;
            if data.n_qubits > args.max_qubits {
                return Err(realitysim::Error::TooLarge { qubits: data.n_qubits, max: args.max_qubits }.into());
            }
            (data, None, path.display().to_string())
        }
        (None, true) => {
            if args.shots == 0 {
                return Err(usage("--shots must be at least 1"));
            }
            let scale = if args.degrees { PI / 180.0 } else { 1.0 };
            let theta = args.theta.map(|t| t * scale).unwrap_or(FRAC_PI_2);
            if !(0.0..=PI).contains(&theta) {
                return Err(usage(format!("--theta {theta} rad is outside [0, pi]")));
            }
            let (stage, config) = args.state.stage_and_config();
            let (ket, _) = eraser::omega(&ProtocolConfig::new(theta, config), stage)?;
            let truth = ket.to_density();
            println!("seed: {}", args.seed);
            let data = simulate_counts(&truth, args.shots, args.seed)?;
            let name = serde_json::to_value(args.state)?;
            (data, Some(truth), format!("simulated {} theta={theta}", name.as_str().unwrap_or("?")))
        }
        (None, false) => return Err(usage("give --input FILE or --simulate")),
    };

    let mut rec = reconstruct::<f64>(&data)?;
    if let Some(t) = &truth {
        rec.fidelity_to_truth = Some(rec.rho_physical.fidelity(t)?);
    }

    let dir = out_dir(args.out_dir.as_deref())?;
    write_json(&dir.join("rho.json"), &rec.rho_physical.to_serializable())?;
    write_text(&dir.join("rho_real.csv"), &bar_chart_csv(&rec.rho_physical))?;
    let rep = report(source, &data, &rec);
    write_json(&dir.join("report.json"), &rep)?;
    if args.save_dataset {
        write_text(&dir.join("dataset.json"), &data.to_json())?;
    }
    let seed = truth.as_ref().map(|_| args.seed);
    RunManifest::new("tomo", argv, &args, seed).write(&dir)?;

    if let Some(f) = rep.fidelity {
        println!("fidelity: {f:.6}");
    }
    println!("purity: {:.6}", rep.purity);
    println!("wrote {}", dir.join("rho.json").display());
    Ok(())
}
