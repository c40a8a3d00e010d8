//! Per-angle sweep rows and their CSV encoding.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::eraser::{AliceConfig, Target};

/// First line of every sweep CSV.
pub const SWEEP_SCHEMA: &str = "# schema: realitysim.sweep/v1";

pub const SWEEP_COLUMNS: [&str; 10] = [
    "stage",
    "theta",
    "config",
    "target",
    "irreality_analytic",
    "coherence",
    "discord",
    "selection_probability",
    "irreality_tomo_mean",
    "irreality_tomo_std",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub stage: u8,
    pub theta: f64,
    pub config: AliceConfig,
    pub target: Target,
    pub irreality_analytic: f64,
    pub coherence: f64,
    pub discord: f64,
    pub selection_probability: f64,
    pub irreality_tomo_mean: Option<f64>,
    pub irreality_tomo_std: Option<f64>,
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.12e}")).unwrap_or_default()
}

impl SweepRecord {
    fn csv_row(&self) -> String {
        format!(
            "{},{:.12e},{:?},{},{:.12e},{:.12e},{:.12e},{:.12e},{},{}",
            self.stage,
            self.theta,
            self.config,
            self.target.label(),
            self.irreality_analytic,
            self.coherence,
            self.discord,
            self.selection_probability,
            opt(self.irreality_tomo_mean),
            opt(self.irreality_tomo_std),
        )
    }
}

/// Writes the schema comment, the header, and one line per record.
pub fn write_sweep_csv<W: Write>(mut w: W, records: &[SweepRecord]) -> io::Result<()> {
    writeln!(w, "{SWEEP_SCHEMA}")?;
    writeln!(w, "{}", SWEEP_COLUMNS.join(","))?;
    for r in records {
        writeln!(w, "{}", r.csv_row())?;
    }
    Ok(())
}
