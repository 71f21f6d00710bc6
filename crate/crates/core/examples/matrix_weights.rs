//! Multi-input subsystems coupled through matrix-valued edge weights.
//! Without fixed modes the topology alone decides; with a fixed mode the
//! engine reports INCONCLUSIVE and attaches randomized evidence.

use diffnet::numerics::{mat_from_rows, RandomSource};
use diffnet::subsystem::{fixed_modes, SubsystemModel};
use diffnet::topology::{DrivenSet, NetworkGraph};
use diffnet::verdict::{analyze, AnalysisOptions};

fn model(c: &[Vec<f64>]) -> diffnet::Result<SubsystemModel> {
    SubsystemModel::new(
        mat_from_rows(&[
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0],
            vec![0.0, 0.0, -1.0],
        ])?,
        mat_from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]])?,
        mat_from_rows(c)?,
    )
}

fn main() -> diffnet::Result<()> {
    let observable = model(&[vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]])?;
    // The third state never reaches the output.
    let blind = model(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]])?;
    let g = NetworkGraph::cycle(4)?;
    let opts = AnalysisOptions::default();

    for (name, m) in [("observable", &observable), ("blind", &blind)] {
        let fm = fixed_modes(m, RandomSource::new(0), &opts.tol)?;
        println!(
            "{name}: fixed modes {:?}",
            fm.fixed_modes
                .iter()
                .map(|c| c.value.re)
                .collect::<Vec<_>>()
        );
        for driven in [vec![0], vec![]] {
            let d = DrivenSet::new(driven.iter().copied(), 4)?;
            let report = analyze(m, &g, &d, &opts)?;
            print!("  driven {:?}: {}", d.one_based(), report.verdict);
            if let Some(cert) = &report.certification {
                print!(
                    " ({}/{} random draws controllable)",
                    cert.controllable_trials, cert.trials
                );
            }
            println!();
        }
    }
    Ok(())
}
