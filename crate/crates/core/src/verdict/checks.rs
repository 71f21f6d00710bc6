use super::engine::check_driven;
use crate::assembly::{assemble_lumped, block_laplacian, sample_weights, EdgeWeights};
use crate::error::{Error, Result};
use crate::numerics::{
    cluster_eigenvalues, eigenvalues, generic_rank, hcat, kron, ones, pbh_controllable, to_complex,
    unit_vector, CMat, RandomSource, ToleranceConfig,
};
use crate::subsystem::{check_controllable, SubsystemModel};
use crate::topology::{
    all_cycles_input_reachable, aux_digraph, incidence_matrices, is_globally_input_reachable,
    CycleCheck, DrivenSet, NetworkGraph, OrientationPolicy, Pattern,
};
use num_complex::Complex64;
use serde::Serialize;

/// Cycle checks on the two auxiliary digraphs of a single-input network.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuxConditionReport {
    /// Edge-space pattern `[1 (x) K_I K, 1 (x) K_I Delta]`.
    pub edge_pattern: CycleCheck,
    /// Vertex-space pattern `[-(1 (x) L), 1 (x) Delta]`.
    pub vertex_pattern: CycleCheck,
    pub globally_input_reachable: bool,
    /// Shared result of both patterns.
    pub holds: bool,
}

impl AuxConditionReport {
    pub fn agrees_with_reachability(&self) -> bool {
        self.holds == self.globally_input_reachable
    }
}

fn tiled(block: &crate::numerics::Mat, reps_r: usize, reps_c: usize) -> Pattern {
    Pattern::of(&kron(&ones(reps_r, reps_c), block))
}

/// Whether some edge feeds into `v`, i.e. row `v` of the Laplacian is
/// nonzero.
pub fn receives_coupling(g: &NetworkGraph, v: usize) -> bool {
    g.edges()
        .iter()
        .any(|e| e.v == v || (!e.is_directed() && e.u == v))
}

/// Input reachability of every cycle in the auxiliary digraphs built from
/// the edge-space and the vertex-space patterns.
///
/// Premises: a single input column, `(A, b)` controllable, and every vertex
/// either driven or acted on by some edge. An undriven vertex with a zero
/// Laplacian row (isolated, or only the tail of directed edges) carries no
/// self-loop in either pattern, so the cycle test would pass while
/// reachability fails.
pub fn aux_condition_check(
    m: &SubsystemModel,
    g: &NetworkGraph,
    d: &DrivenSet,
    tol: &ToleranceConfig,
) -> Result<AuxConditionReport> {
    m.validate()?;
    check_driven(g, d)?;
    if !m.is_simo() {
        return Err(Error::Premise(
            "pattern check needs a single input column".into(),
        ));
    }
    if !check_controllable(m, tol)?.holds {
        return Err(Error::Premise("(A, b) must be controllable".into()));
    }
    if let Some(v) = (0..g.num_vertices()).find(|&v| !receives_coupling(g, v) && !d.contains(v)) {
        return Err(Error::Premise(format!(
            "vertex {} is undriven and no edge acts on it",
            v + 1
        )));
    }
    let r = m.output_dim();
    let n = g.num_vertices();
    let delta = d.delta(n);

    let inc = incidence_matrices(g, OrientationPolicy::default());
    let ki_k = &inc.k_i * &inc.k;
    let ki_delta = &inc.k_i * &delta;
    let edge_dg = aux_digraph(&tiled(&ki_k, r, r), &tiled(&ki_delta, r, 1))?;
    let edge_pattern = all_cycles_input_reachable(&edge_dg);

    let unit = EdgeWeights::uniform_channels(g, &vec![1.0; g.num_edges()], 1, 1)?;
    let l = block_laplacian(g, &unit)?;
    let vertex_dg = aux_digraph(&tiled(&(-l), r, r), &tiled(&delta, r, 1))?;
    let vertex_pattern = all_cycles_input_reachable(&vertex_dg);

    if edge_pattern.holds != vertex_pattern.holds {
        return Err(Error::Consistency(format!(
            "edge pattern says {}, vertex pattern says {}",
            edge_pattern.holds, vertex_pattern.holds
        )));
    }
    Ok(AuxConditionReport {
        holds: edge_pattern.holds,
        edge_pattern,
        vertex_pattern,
        globally_input_reachable: is_globally_input_reachable(g, d),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenRank {
    pub lambda: Complex64,
    pub generic_rank: usize,
    pub required: usize,
}

impl EigenRank {
    pub fn holds(&self) -> bool {
        self.generic_rank == self.required
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankCheck {
    pub holds: bool,
    pub per_eigenvalue: Vec<EigenRank>,
}

/// Generic rank of `[lambda I - A_sys(w), B_sys]` over the edge weights at
/// each distinct eigenvalue of `A`, compared with `N n`.
pub fn rank_condition_check(
    m: &SubsystemModel,
    g: &NetworkGraph,
    d: &DrivenSet,
    trials: usize,
    source: RandomSource,
    tol: &ToleranceConfig,
) -> Result<RankCheck> {
    m.validate()?;
    check_driven(g, d)?;
    let (p, r) = (m.input_dim(), m.output_dim());
    let required = g.num_vertices() * m.state_dim();
    let num_params = EdgeWeights::num_params(g, p, r);
    let clusters = cluster_eigenvalues(&eigenvalues(&m.a)?, tol.eig_match_tol);

    let mut per_eigenvalue = Vec::with_capacity(clusters.len());
    for (k, cl) in clusters.iter().enumerate() {
        let lambda = cl.value;
        let matfn = |s: &[f64]| -> Result<CMat> {
            let w = EdgeWeights::from_params(g, p, r, s)?;
            let sys = assemble_lumped(m, g, &w, d)?;
            let shifted =
                CMat::from_diagonal_element(required, required, lambda) - to_complex(&sys.a_sys);
            hcat(&shifted, &to_complex(&sys.b_sys))
        };
        let rank = generic_rank(matfn, num_params, trials, source.substream(k as u64), tol)?;
        per_eigenvalue.push(EigenRank {
            lambda,
            generic_rank: rank,
            required,
        });
    }
    Ok(RankCheck {
        holds: per_eigenvalue.iter().all(EigenRank::holds),
        per_eigenvalue,
    })
}

/// Leader-follower controllability of `x' = -L x + e_i u` under random
/// scalar weights; true when some draw is controllable.
///
/// The graph must be undirected and connected.
pub fn laplacian_leader_controllability(
    g: &NetworkGraph,
    leader: usize,
    trials: usize,
    source: RandomSource,
    tol: &ToleranceConfig,
) -> Result<bool> {
    let n = g.num_vertices();
    if leader >= n {
        return Err(Error::Graph(format!(
            "leader {} outside 1..={n}",
            leader + 1
        )));
    }
    if trials == 0 {
        return Err(Error::Config("at least one trial is required".into()));
    }
    if g.has_directed_edges() {
        return Err(Error::Premise(
            "leader-follower check needs an undirected graph".into(),
        ));
    }
    if !is_globally_input_reachable(g, &DrivenSet::new([leader], n)?) {
        return Err(Error::Premise("graph is not connected".into()));
    }
    let e = unit_vector(n, leader);
    for t in 0..trials {
        let w = sample_weights(g, (1, 1), source.substream(t as u64), 1.0)?;
        let l = block_laplacian(g, &w)?;
        if pbh_controllable(&(-l), &e, tol)?.holds {
            return Ok(true);
        }
    }
    Ok(false)
}
