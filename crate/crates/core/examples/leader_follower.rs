//! Consensus networks with a single leader. With unit weights a symmetric
//! graph can hide modes from the leader; generic scalar weights break
//! the symmetry, so every leader of a connected graph works.

use diffnet::numerics::{RandomSource, ToleranceConfig};
use diffnet::topology::NetworkGraph;
use diffnet::verdict::laplacian_leader_controllability;

fn main() -> diffnet::Result<()> {
    let tol = ToleranceConfig::default();
    let graphs = [
        ("path(5)", NetworkGraph::path(5)?),
        ("star(5)", NetworkGraph::star(5)?),
        ("cycle(6)", NetworkGraph::cycle(6)?),
    ];
    for (name, g) in &graphs {
        let leaders: Vec<String> = (0..g.num_vertices())
            .map(|v| {
                let ok = laplacian_leader_controllability(g, v, 5, RandomSource::new(7), &tol)?;
                Ok(format!("{}:{}", v + 1, if ok { "yes" } else { "no" }))
            })
            .collect::<diffnet::Result<_>>()?;
        println!("{name:9} leader controllable: {}", leaders.join(" "));
    }
    Ok(())
}
