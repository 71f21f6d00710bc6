//! Randomized certification. A structural verdict claims controllability
//! for almost every weight choice, so a handful of random draws should
//! confirm it; custom builders can certify constrained weight families.

use diffnet::assembly::{assemble_lumped, sample_weights, EdgeWeights};
use diffnet::numerics::{mat_from_rows, RandomSource, ToleranceConfig};
use diffnet::subsystem::SubsystemModel;
use diffnet::topology::{DrivenSet, NetworkGraph};
use diffnet::verdict::{analyze_scalar_constrained, certify_lumped, certify_monte_carlo};

fn main() -> diffnet::Result<()> {
    let m = SubsystemModel::new(
        mat_from_rows(&[vec![0.0, 1.0], vec![-2.0, -0.3]])?,
        mat_from_rows(&[vec![0.0], vec![1.0]])?,
        // Two channels that cancel once every channel shares one weight.
        mat_from_rows(&[vec![1.0, 0.5], vec![-1.0, -0.5]])?,
    )?;
    let g = NetworkGraph::path(4)?;
    let d = DrivenSet::new([0], 4)?;
    let tol = ToleranceConfig::default();

    let free = certify_monte_carlo(&m, &g, &d, 5, RandomSource::new(1), &tol)?;
    println!(
        "independent channel weights: verdict {}, {}/{} draws controllable",
        free.verdict, free.controllable_trials, free.trials
    );
    for t in &free.per_trial {
        println!(
            "  trial {} (stream {}): deficient eigenvalues {}",
            t.index, t.stream, t.deficient_count
        );
    }

    let scalar = analyze_scalar_constrained(&m, &g, &d, &tol)?;
    let shared = certify_lumped(5, RandomSource::new(1), &tol, scalar.verdict, |s| {
        let w = sample_weights(&g, (1, 1), s, 1.0)?;
        let w = EdgeWeights::uniform_channels(&g, &w.channel(0, 0), 1, 2)?;
        assemble_lumped(&m, &g, &w, &d)
    })?;
    println!(
        "one shared weight per edge: verdict {}, {}/{} draws controllable, agrees={}",
        shared.verdict, shared.controllable_trials, shared.trials, shared.agree_with_verdict
    );
    Ok(())
}
