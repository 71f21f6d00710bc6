//! Random instance generators and brute-force oracles shared by the
//! integration test targets.
#![allow(dead_code)]

use diffnet::numerics::Mat;
use diffnet::subsystem::SubsystemModel;
use diffnet::topology::{DrivenSet, Edge, NetworkGraph};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    diffnet::numerics::RandomSource::new(seed).rng()
}

pub fn random_mat(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Mat {
    Mat::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0))
}

pub fn random_model(rng: &mut ChaCha8Rng, n: usize, p: usize, r: usize) -> SubsystemModel {
    loop {
        let m = SubsystemModel::unchecked(
            random_mat(rng, n, n),
            random_mat(rng, n, p),
            random_mat(rng, r, n),
        );
        if m.validate().is_ok() {
            return m;
        }
    }
}

/// Each pair joined with probability `density`; a joined pair becomes a
/// directed edge (random direction) with probability `directed`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64, directed: f64) -> NetworkGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_bool(density) {
                if rng.random_bool(directed) {
                    edges.push(if rng.random_bool(0.5) {
                        Edge::directed(i, j)
                    } else {
                        Edge::directed(j, i)
                    });
                } else {
                    edges.push(Edge::undirected(i, j));
                }
            }
        }
    }
    NetworkGraph::new(n, edges).unwrap()
}

/// Random spanning tree plus extra undirected edges.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, extra: f64) -> NetworkGraph {
    let mut pairs = Vec::new();
    for v in 1..n {
        pairs.push((rng.random_range(0..v), v));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !pairs.contains(&(i, j)) && rng.random_bool(extra) {
                pairs.push((i, j));
            }
        }
    }
    NetworkGraph::undirected(n, &pairs).unwrap()
}

pub fn random_driven(rng: &mut ChaCha8Rng, n: usize, prob: f64) -> DrivenSet {
    DrivenSet::new((0..n).filter(|_| rng.random_bool(prob)), n).unwrap()
}

/// Every simple cycle of a digraph given as successor lists, each listed
/// once starting from its smallest vertex.
pub fn simple_cycles(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    fn extend(
        adj: &[Vec<usize>],
        start: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().unwrap();
        for &w in &adj[last] {
            if w == start {
                out.push(path.clone());
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                extend(adj, start, path, on_path, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..adj.len() {
        let mut on_path = vec![false; adj.len()];
        on_path[s] = true;
        extend(adj, s, &mut vec![s], &mut on_path, &mut out);
    }
    out
}

/// Brute-force oracle: every simple cycle contains an input-reachable vertex.
pub fn cycles_reachable_brute(dg: &diffnet::topology::AuxDigraph) -> bool {
    let reach = dg.input_reachable();
    simple_cycles(&dg.successors())
        .iter()
        .all(|c| c.iter().any(|&v| reach[v]))
}

/// Entrywise Kronecker product by its index definition.
pub fn kron_by_loops(a: &Mat, b: &Mat) -> Mat {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = Mat::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

pub fn max_abs(m: &Mat) -> f64 {
    m.iter().fold(0.0_f64, |s, x| s.max(x.abs()))
}
