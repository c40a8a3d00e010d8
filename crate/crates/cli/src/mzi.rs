use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use realitysim::mzi::{self, detector_probabilities, extended_output_analysis, phase_grid, visibility_on_grid};
use realitysim::state::MatrixJson;
use realitysim::MziConfig;

use crate::output::{out_dir, write_json, write_text, RunManifest};
use crate::{usage, CliResult};

#[derive(Debug, Clone, Args, Serialize)]
pub struct MziArgs {
    /// Second beam splitter in place (default).
    #[arg(long, conflicts_with = "open")]
    pub closed: bool,
    /// Second beam splitter removed.
    #[arg(long)]
    pub open: bool,
    /// Add the which-path markers d1, d2 and analyze them after post-selection.
    #[arg(long)]
    pub extended: bool,
    /// Dephase the photon's path after the first beam splitter.
    #[arg(long)]
    pub decohere: bool,
    /// Number of phase points on [0, 2pi).
    #[arg(long, default_value_t = mzi::VISIBILITY_GRID)]
    pub grid: usize,
    /// Photon outcome kept for the marker analysis.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub postselect: u8,
    /// Phase used for the marker analysis.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
    #[arg(long)]
    #[serde(skip)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct ExtendedSummary {
    postselect: u8,
    phi: f64,
    probability: f64,
    purity: f64,
    entanglement_entropy: Option<f64>,
    separable: bool,
    marker_mutual_information: f64,
    irreality_sigma_z_at_s1: f64,
    state: MatrixJson,
}

#[derive(Debug, Serialize)]
struct MziSummary {
    schema: &'static str,
    closed: bool,
    extended: bool,
    decohere: bool,
    grid: usize,
    visibility: f64,
    extended_report: Option<ExtendedSummary>,
}

pub fn run(args: MziArgs, argv: &[String]) -> CliResult {
    if args.grid < mzi::MIN_VISIBILITY_GRID {
        return Err(usage(format!("--grid must be at least {}", mzi::MIN_VISIBILITY_GRID)));
    }
    if !args.phi.is_finite() {
        return Err(usage("--phi must be finite"));
    }
    let closed = !args.open;
    let base = if closed { MziConfig::closed(0.0) } else { MziConfig::open(0.0) };
    let cfg = base.extended(args.extended).decohered(args.decohere);

    let grid = phase_grid::<f64>(args.grid);
    let probs = detector_probabilities(&cfg, &grid)?;
    let visibility = visibility_on_grid(&cfg, &grid)?;

    let extended_report = if args.extended && closed {
        let r = extended_output_analysis(&cfg.with_phi(args.phi), args.postselect)?;
        Some(ExtendedSummary {
            postselect: args.postselect,
            phi: args.phi,
            probability: r.probability,
            purity: r.purity,
            entanglement_entropy: r.entanglement_entropy,
            separable: r.ppt_separable,
            marker_mutual_information: r.marker_mutual_information,
            irreality_sigma_z_at_s1: r.irreality_sigma_z_at_s1,
            state: r.postselected_state.to_serializable(),
        })
    } else {
        None
    };

    let dir = out_dir(args.out_dir.as_deref())?;
    let mut csv = String::from("# schema: realitysim.mzi/v1\nphi,p0,p1\n");
    for (phi, (p0, p1)) in grid.iter().zip(&probs) {
        let _ = writeln!(csv, "{phi:.12e},{p0:.12e},{p1:.12e}");
    }
    write_text(&dir.join("mzi.csv"), &csv)?;
    let summary = MziSummary {
        schema: "realitysim.mzi_summary/v1",
        closed,
        extended: args.extended,
        decohere: args.decohere,
        grid: args.grid,
        visibility,
        extended_report,
    };
    write_json(&dir.join("mzi_summary.json"), &summary)?;
    RunManifest::new("mzi", argv, &args, None).write(&dir)?;

    println!("visibility: {visibility:.6}");
    if let Some(r) = &summary.extended_report {
        match r.entanglement_entropy {
            Some(e) => println!("marker entanglement entropy: {e:.6}"),
            None => println!("marker entanglement entropy: undefined (mixed, not PPT)"),
        }
        println!("separable: {}", r.separable);
    }
    Ok(())
}
