use std::f64::consts::FRAC_PI_2;

use clap::Args;

use realitysim::eraser::{self, AliceConfig, Stage, Target};
use realitysim::linalg::binary_entropy;
use realitysim::mzi::{extended_output_analysis, visibility};
use realitysim::tomography::tomography_end_to_end;
use realitysim::{MziConfig, ProtocolConfig};

use crate::CliResult;

#[derive(Debug, Clone, Args)]
pub struct SelftestArgs {
    /// Skip the tomography check.
    #[arg(long)]
    pub quick: bool,
}

type Check = (&'static str, Box<dyn Fn() -> anyhow::Result<bool>>);

fn checks(quick: bool) -> Vec<Check> {
    let mut v: Vec<Check> = vec![
        (
            "Cx irreality of b at stage 1 equals H(cos^2(theta/2))",
            Box::new(|| {
                let grid = eraser::default_theta_grid::<f64>();
                let recs = eraser::irreality_curve(&ProtocolConfig::new(0.0, AliceConfig::Cx), Stage::Psi1, Target::PathB, &grid)?;
                Ok(recs.iter().all(|r| {
                    let c2 = (r.theta / 2.0).cos().powi(2);
                    (r.irreality_analytic - binary_entropy(c2)).abs() < 1e-9
                }))
            }),
        ),
        (
            "Cz irreality of d1 at stage 2 vanishes",
            Box::new(|| {
                let grid = eraser::default_theta_grid::<f64>();
                let recs = eraser::irreality_curve(&ProtocolConfig::new(0.0, AliceConfig::Cz), Stage::Psi2, Target::D1, &grid)?;
                Ok(recs.iter().all(|r| r.irreality_analytic.abs() < 1e-9))
            }),
        ),
        (
            "closed interferometer visibility is 1, open is 0",
            Box::new(|| {
                let vc = visibility(&MziConfig::closed(0.0))?;
                let vo = visibility(&MziConfig::open(0.0))?;
                Ok((vc - 1.0).abs() < 1e-9 && vo.abs() < 1e-9)
            }),
        ),
        (
            "decohered markers are separable",
            Box::new(|| {
                let r = extended_output_analysis(&MziConfig::closed(0.0).extended(true).decohered(true), 0)?;
                Ok(r.ppt_separable)
            }),
        ),
    ];
    if !quick {
        v.push((
            "tomography of the stage-2 Cx state at theta = pi/2 reaches fidelity 0.99",
            Box::new(|| {
                let (ket, _) = eraser::omega(&ProtocolConfig::new(FRAC_PI_2, AliceConfig::Cx), Stage::Psi2)?;
                let r = tomography_end_to_end(&ket.to_density(), 100_000, 7)?;
                Ok(r.fidelity_to_truth.unwrap_or(0.0) >= 0.99)
            }),
        ));
    }
    v
}

pub fn run(args: SelftestArgs) -> CliResult {
    let mut failed = 0;
    for (name, check) in checks(args.quick) {
        let ok = match check() {
            Ok(ok) => ok,
            Err(e) => {
                eprintln!("  {name}: {e:#}");
                false
            }
        };
        println!("{} {name}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(anyhow::anyhow!("{failed} self-test check(s) failed").into());
    }
    Ok(())
}
