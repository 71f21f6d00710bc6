use crate::error::{Error, Result};
use crate::numerics::Mat;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Undirected,
    /// Influence flows from `u` to `v` only.
    Directed,
}

/// An interaction link. Vertex ids are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn undirected(u: usize, v: usize) -> Self {
        Self {
            u,
            v,
            kind: EdgeKind::Undirected,
        }
    }

    pub fn directed(from: usize, to: usize) -> Self {
        Self {
            u: from,
            v: to,
            kind: EdgeKind::Directed,
        }
    }

    pub fn is_directed(&self) -> bool {
        self.kind == EdgeKind::Directed
    }

    /// Whether `(a, b)` names this edge: either order for undirected edges,
    /// `a -> b` exactly for directed ones.
    pub fn connects(&self, a: usize, b: usize) -> bool {
        match self.kind {
            EdgeKind::Undirected => (self.u == a && self.v == b) || (self.u == b && self.v == a),
            EdgeKind::Directed => self.u == a && self.v == b,
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EdgeKind::Undirected => write!(f, "{}--{}", self.u + 1, self.v + 1),
            EdgeKind::Directed => write!(f, "{}->{}", self.u + 1, self.v + 1),
        }
    }
}

/// Network topology: `N` vertices, no self-loops, at most one link per
/// vertex pair (two opposite directed links are allowed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl NetworkGraph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Graph("a network needs at least one vertex".into()));
        }
        for (idx, e) in edges.iter().enumerate() {
            if e.u >= n || e.v >= n {
                return Err(Error::Graph(format!(
                    "edge {} references a vertex outside 1..={n}",
                    e
                )));
            }
            if e.u == e.v {
                return Err(Error::Graph(format!("self-loop at vertex {}", e.u + 1)));
            }
            for prior in &edges[..idx] {
                let same_pair =
                    (prior.u == e.u && prior.v == e.v) || (prior.u == e.v && prior.v == e.u);
                if !same_pair {
                    continue;
                }
                let opposite_directed = prior.is_directed() && e.is_directed() && prior.u == e.v;
                if !opposite_directed {
                    return Err(Error::Graph(format!(
                        "parallel edges {prior} and {e} between the same vertex pair"
                    )));
                }
            }
        }
        Ok(Self { n, edges })
    }

    pub fn undirected(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            n,
            pairs.iter().map(|&(u, v)| Edge::undirected(u, v)).collect(),
        )
    }

    /// `0 -- 1 -- ... -- n-1`.
    pub fn path(n: usize) -> Result<Self> {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::undirected(n, &pairs)
    }

    /// Star with center `0`.
    pub fn star(n: usize) -> Result<Self> {
        let pairs: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Self::undirected(n, &pairs)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Graph("a cycle needs at least three vertices".into()));
        }
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::undirected(n, &pairs)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_directed_edges(&self) -> bool {
        self.edges.iter().any(Edge::is_directed)
    }

    /// Position of the edge named by `(a, b)` in [`Self::edges`].
    pub fn find_edge(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.iter().position(|e| e.connects(a, b))
    }

    /// Vertices receiving influence from `x`.
    pub fn out_neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |e| match e.kind {
            EdgeKind::Undirected if e.u == x => Some(e.v),
            EdgeKind::Undirected if e.v == x => Some(e.u),
            EdgeKind::Directed if e.u == x => Some(e.v),
            _ => None,
        })
    }

    pub fn degree(&self, x: usize) -> usize {
        self.edges.iter().filter(|e| e.u == x || e.v == x).count()
    }

    /// Copy of the graph without the edge named by `(a, b)`.
    pub fn without_edge(&self, a: usize, b: usize) -> Result<Self> {
        let idx = self
            .find_edge(a, b)
            .ok_or_else(|| Error::Graph(format!("no edge between {} and {}", a + 1, b + 1)))?;
        let mut edges = self.edges.clone();
        edges.remove(idx);
        Self::new(self.n, edges)
    }
}

/// Sorted set of 0-based vertex ids that serializes as 1-based ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexSet(pub Vec<usize>);

impl VertexSet {
    pub fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let set: BTreeSet<usize> = it.into_iter().collect();
        Self(set.into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let ids = Vec::<usize>::deserialize(d)?;
        if ids.contains(&0) {
            return Err(serde::de::Error::custom("vertex ids are 1-based"));
        }
        Ok(Self::from_iter(ids.into_iter().map(|v| v - 1)))
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.one_based().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", ids.join(", "))
    }
}

/// Subsystems that receive an external input.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DrivenSet {
    driven: BTreeSet<usize>,
}

impl DrivenSet {
    pub fn new<I: IntoIterator<Item = usize>>(vertices: I, n: usize) -> Result<Self> {
        let driven: BTreeSet<usize> = vertices.into_iter().collect();
        if let Some(&bad) = driven.iter().find(|&&v| v >= n) {
            return Err(Error::Graph(format!(
                "driven vertex {} outside 1..={n}",
                bad + 1
            )));
        }
        Ok(Self { driven })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn all(n: usize) -> Self {
        Self {
            driven: (0..n).collect(),
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.driven.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.driven.len()
    }

    pub fn is_empty(&self) -> bool {
        self.driven.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.driven.iter().copied()
    }

    pub fn is_subset(&self, other: &DrivenSet) -> bool {
        self.driven.is_subset(&other.driven)
    }

    /// The binary selection matrix `Delta = diag(delta_i)`.
    pub fn delta(&self, n: usize) -> Mat {
        Mat::from_fn(
            n,
            n,
            |i, j| if i == j && self.contains(i) { 1.0 } else { 0.0 },
        )
    }

    pub fn to_vertex_set(&self) -> VertexSet {
        VertexSet::from_iter(self.iter())
    }

    /// Sorted vertex ids, counted from 1.
    pub fn one_based(&self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loops_and_parallel_edges() {
        assert!(NetworkGraph::undirected(3, &[(1, 1)]).is_err());
        assert!(NetworkGraph::undirected(3, &[(0, 1), (1, 0)]).is_err());
        assert!(NetworkGraph::new(3, vec![Edge::undirected(0, 1), Edge::directed(0, 1)]).is_err());
        assert!(NetworkGraph::new(3, vec![Edge::directed(0, 1), Edge::directed(0, 1)]).is_err());
        assert!(NetworkGraph::new(3, vec![Edge::directed(0, 1), Edge::directed(1, 0)]).is_ok());
        assert!(NetworkGraph::undirected(2, &[(0, 2)]).is_err());
        assert!(NetworkGraph::new(0, vec![]).is_err());
    }

    #[test]
    fn driven_set_bounds_and_delta() {
        assert!(DrivenSet::new([3], 3).is_err());
        let d = DrivenSet::new([0, 2], 3).unwrap();
        let delta = d.delta(3);
        assert_eq!(delta[(0, 0)], 1.0);
        assert_eq!(delta[(1, 1)], 0.0);
        assert_eq!(delta[(2, 2)], 1.0);
    }

    #[test]
    fn vertex_set_serializes_one_based() {
        let s = VertexSet::from_iter([2, 0]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,3]");
        let back: VertexSet = serde_json::from_str("[3,1]").unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<VertexSet>("[0]").is_err());
    }
}
