use super::{EdgeKind, NetworkGraph};
use crate::error::{Error, Result};
use crate::numerics::Mat;
use serde::{Deserialize, Serialize};

/// How undirected edges are oriented when building `K_I`. Directed edges
/// always keep their own direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrientationPolicy {
    #[default]
    LowToHigh,
    HighToLow,
    /// Use the `(u, v)` order the edge was declared with.
    AsDeclared,
}

/// Which rule produced an edge's column of `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KColumnRule {
    /// `+1` at the end vertex, `-1` at the start vertex.
    Symmetric,
    /// `+1` at the end vertex only.
    OneSided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientedEdge {
    /// Index into [`NetworkGraph::edges`].
    pub edge: usize,
    pub start: usize,
    pub end: usize,
    pub kind: EdgeKind,
    pub rule: KColumnRule,
}

/// Incidence factors of a (semi-symmetric) topology.
///
/// `K_I` is `|E| x N` with `+1` at each edge's start vertex and `-1` at its
/// end vertex. `K` is `N x |E|` with `+1` at the end vertex and, for
/// undirected edges only, `-1` at the start vertex. For every diagonal
/// `Lambda` of edge weights, `-K Lambda K_I` is the Laplacian of those
/// weights; on undirected graphs `K = -K_I^T`.
#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceRealization {
    pub policy: OrientationPolicy,
    pub edge_order: Vec<OrientedEdge>,
    pub k_i: Mat,
    pub k: Mat,
}

impl IncidenceRealization {
    pub fn num_edges(&self) -> usize {
        self.edge_order.len()
    }

    /// `-K diag(weights) K_I`.
    pub fn laplacian(&self, weights: &[f64]) -> Result<Mat> {
        if weights.len() != self.num_edges() {
            return Err(Error::Weights(format!(
                "expected {} edge weights, got {}",
                self.num_edges(),
                weights.len()
            )));
        }
        let mut scaled = self.k.clone();
        for (j, w) in weights.iter().enumerate() {
            scaled.column_mut(j).scale_mut(-*w);
        }
        Ok(scaled * &self.k_i)
    }
}

pub fn incidence_matrices(g: &NetworkGraph, policy: OrientationPolicy) -> IncidenceRealization {
    let n = g.num_vertices();
    let m = g.num_edges();
    let mut k_i = Mat::zeros(m, n);
    let mut k = Mat::zeros(n, m);
    let mut edge_order = Vec::with_capacity(m);
    for (idx, e) in g.edges().iter().enumerate() {
        let (start, end) = match (e.kind, policy) {
            (EdgeKind::Directed, _) | (EdgeKind::Undirected, OrientationPolicy::AsDeclared) => {
                (e.u, e.v)
            }
            (EdgeKind::Undirected, OrientationPolicy::LowToHigh) => (e.u.min(e.v), e.u.max(e.v)),
            (EdgeKind::Undirected, OrientationPolicy::HighToLow) => (e.u.max(e.v), e.u.min(e.v)),
        };
        k_i[(idx, start)] = 1.0;
        k_i[(idx, end)] = -1.0;
        k[(end, idx)] = 1.0;
        let rule = match e.kind {
            EdgeKind::Undirected => {
                k[(start, idx)] = -1.0;
                KColumnRule::Symmetric
            }
            EdgeKind::Directed => KColumnRule::OneSided,
        };
        edge_order.push(OrientedEdge {
            edge: idx,
            start,
            end,
            kind: e.kind,
            rule,
        });
    }
    IncidenceRealization {
        policy,
        edge_order,
        k_i,
        k,
    }
}
