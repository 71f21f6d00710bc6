//! Mass-spring-damper chain: which masses must be actuated?
//!
//! Run with `cargo run --example mass_spring`.

use diffnet::assembly::mass_spring_chain;
use diffnet::numerics::{pbh_controllable, RandomSource, ToleranceConfig};
use diffnet::topology::DrivenSet;
use diffnet::verdict::{analyze, certify_monte_carlo, AnalysisOptions};

fn main() -> diffnet::Result<()> {
    let n = 5;
    let chain = mass_spring_chain(n, 1.0, &[1.0; 5], &[0.5; 5])?;
    let opts = AnalysisOptions::default();

    for driven in [vec![0], vec![2], vec![]] {
        let d = DrivenSet::new(driven.iter().copied(), n)?;
        let report = analyze(&chain.model, &chain.graph, &d, &opts)?;
        let failed: Vec<_> = report
            .failed_conditions()
            .map(|c| c.name.as_str())
            .collect();
        println!(
            "driven {:?}: {} via {} (failed: {:?})",
            d.one_based(),
            report.verdict,
            report.theorem_used,
            failed
        );
    }

    // The nominal spring and damper constants are one point in weight
    // space; check it directly, with and without the wall at mass 1.
    let d = DrivenSet::new([0], n)?;
    let tol = ToleranceConfig::default();
    for grounded in [false, true] {
        let sys = chain.lumped(&d, grounded)?;
        let ctrl = pbh_controllable(&sys.a_sys, &sys.b_sys, &tol)?.holds;
        println!("nominal weights, grounded={grounded}: controllable={ctrl}");
    }

    let cert = certify_monte_carlo(
        &chain.model,
        &chain.graph,
        &d,
        5,
        RandomSource::new(42),
        &tol,
    )?;
    println!(
        "random weights: {}/{} trials controllable",
        cert.controllable_trials, cert.trials
    );
    Ok(())
}
