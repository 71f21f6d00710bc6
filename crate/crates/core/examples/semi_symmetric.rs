//! Networks with one-way edges. A directed edge `u -> v` lets `u` act on
//! `v` but not the reverse, so the driven set must sit upstream.

use diffnet::numerics::{mat_from_rows, ToleranceConfig};
use diffnet::subsystem::SubsystemModel;
use diffnet::topology::{spanning_forest, DrivenSet, Edge, ForestOutcome, NetworkGraph};
use diffnet::verdict::analyze_simo;

fn main() -> diffnet::Result<()> {
    // Double integrator sensing position and velocity.
    let m = SubsystemModel::new(
        mat_from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]])?,
        mat_from_rows(&[vec![0.0], vec![1.0]])?,
        mat_from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]])?,
    )?;
    // 1 -> 2 -> 3 with an undirected link between 3 and 4.
    let g = NetworkGraph::new(
        4,
        vec![
            Edge::directed(0, 1),
            Edge::directed(1, 2),
            Edge::undirected(2, 3),
        ],
    )?;
    let tol = ToleranceConfig::default();

    for leader in 0..4 {
        let d = DrivenSet::new([leader], 4)?;
        let report = analyze_simo(&m, &g, &d, &tol)?;
        let tree = match spanning_forest(&g, &d) {
            ForestOutcome::Spanning(f) => format!(
                "forest order {:?}",
                f.order.iter().map(|v| v + 1).collect::<Vec<_>>()
            ),
            ForestOutcome::Unreachable(missing) => {
                format!("cannot reach {:?}", missing.one_based())
            }
        };
        println!(
            "drive vertex {}: {} ({}; {tree})",
            leader + 1,
            report.verdict,
            report.theorem_used
        );
    }
    Ok(())
}
