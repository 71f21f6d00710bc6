//! Structural conditions through auxiliary digraphs: a zero/nonzero
//! pattern is controllable in the structural sense when no cycle of state
//! vertices escapes the inputs. The network check builds such patterns
//! from the topology and compares them with plain reachability.

use diffnet::numerics::{mat_from_rows, ToleranceConfig};
use diffnet::subsystem::SubsystemModel;
use diffnet::topology::{
    all_cycles_input_reachable, aux_digraph, DrivenSet, NetworkGraph, Pattern,
};
use diffnet::verdict::aux_condition_check;

fn main() -> diffnet::Result<()> {
    // x1 <-> x2 is a cycle; x3 -> x3 is a self-loop; only x1 is actuated.
    let h = Pattern::from_fn(3, 3, |i, j| matches!((i, j), (0, 1) | (1, 0) | (2, 2)));
    let p = Pattern::from_fn(3, 1, |i, _| i == 0);
    let check = all_cycles_input_reachable(&aux_digraph(&h, &p)?);
    println!(
        "pattern check holds={} witness={:?}",
        check.holds, check.witness
    );

    let m = SubsystemModel::new(
        mat_from_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]])?,
        mat_from_rows(&[vec![0.0], vec![1.0]])?,
        mat_from_rows(&[vec![1.0, 0.0]])?,
    )?;
    let tol = ToleranceConfig::default();
    let g = NetworkGraph::undirected(5, &[(0, 1), (1, 2), (3, 4)])?;
    for driven in [vec![0], vec![0, 3]] {
        let d = DrivenSet::new(driven.iter().copied(), 5)?;
        let rep = aux_condition_check(&m, &g, &d, &tol)?;
        println!(
            "driven {:?}: edge pattern {}, vertex pattern {}, reachable {}",
            d.one_based(),
            rep.edge_pattern.holds,
            rep.vertex_pattern.holds,
            rep.globally_input_reachable
        );
    }
    Ok(())
}
