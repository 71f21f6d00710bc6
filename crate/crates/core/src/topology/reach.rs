use super::{DrivenSet, NetworkGraph, VertexSet};
use serde::Serialize;
use std::collections::VecDeque;

/// Vertices reachable from some driven vertex, following directed edges
/// forward and undirected edges either way.
pub fn input_reachable_set(g: &NetworkGraph, d: &DrivenSet) -> VertexSet {
    let reached = bfs(g, d).0;
    VertexSet::from_iter((0..g.num_vertices()).filter(|&v| reached[v]))
}

pub fn is_globally_input_reachable(g: &NetworkGraph, d: &DrivenSet) -> bool {
    bfs(g, d).0.iter().all(|&r| r)
}

/// Vertices no driven vertex can reach.
pub fn unreachable_set(g: &NetworkGraph, d: &DrivenSet) -> VertexSet {
    let reached = bfs(g, d).0;
    VertexSet::from_iter((0..g.num_vertices()).filter(|&v| !reached[v]))
}

/// A spanning forest rooted at the driven vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanningForest {
    /// `parent[v]` is `None` exactly for roots.
    pub parent: Vec<Option<usize>>,
    /// Visit order; every vertex appears after its parent.
    pub order: Vec<usize>,
}

impl SpanningForest {
    pub fn roots(&self) -> impl Iterator<Item = usize> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_none())
            .map(|(v, _)| v)
    }

    /// Root reached by following parents from `v`.
    pub fn root_of(&self, mut v: usize) -> usize {
        while let Some(p) = self.parent[v] {
            v = p;
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ForestOutcome {
    Spanning(SpanningForest),
    /// Vertices no driven vertex reaches.
    Unreachable(VertexSet),
}

/// Breadth-first forest from all driven vertices at once; a vertex's parent
/// is whichever tree discovers it first.
pub fn spanning_forest(g: &NetworkGraph, d: &DrivenSet) -> ForestOutcome {
    let (reached, parent, order) = bfs(g, d);
    if reached.iter().all(|&r| r) {
        ForestOutcome::Spanning(SpanningForest { parent, order })
    } else {
        ForestOutcome::Unreachable(VertexSet::from_iter(
            (0..g.num_vertices()).filter(|&v| !reached[v]),
        ))
    }
}

fn bfs(g: &NetworkGraph, d: &DrivenSet) -> (Vec<bool>, Vec<Option<usize>>, Vec<usize>) {
    let n = g.num_vertices();
    let mut reached = vec![false; n];
    let mut parent = vec![None; n];
    let mut order = Vec::with_capacity(n);
    let mut queue: VecDeque<usize> = VecDeque::new();
    for root in d.iter() {
        reached[root] = true;
        queue.push_back(root);
    }
    while let Some(x) = queue.pop_front() {
        order.push(x);
        let mut next: Vec<usize> = g.out_neighbors(x).filter(|&y| !reached[y]).collect();
        next.sort_unstable();
        next.dedup();
        for y in next {
            reached[y] = true;
            parent[y] = Some(x);
            queue.push_back(y);
        }
    }
    (reached, parent, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::Edge;

    #[test]
    fn chain_is_reachable_from_one_end() {
        let g = NetworkGraph::path(3).unwrap();
        let d = DrivenSet::new([0], 3).unwrap();
        assert_eq!(input_reachable_set(&g, &d), VertexSet(vec![0, 1, 2]));
        assert!(is_globally_input_reachable(&g, &d));
        assert!(input_reachable_set(&g, &DrivenSet::empty()).is_empty());
    }

    #[test]
    fn mixed_edges_follow_direction() {
        let g = NetworkGraph::new(3, vec![Edge::directed(0, 1), Edge::undirected(2, 1)]).unwrap();
        let d = DrivenSet::new([0], 3).unwrap();
        assert_eq!(input_reachable_set(&g, &d), VertexSet(vec![0, 1, 2]));
        // Against the arrow nothing flows back to vertex 0.
        let d2 = DrivenSet::new([2], 3).unwrap();
        assert_eq!(input_reachable_set(&g, &d2), VertexSet(vec![1, 2]));
    }

    #[test]
    fn disconnected_and_single_vertex() {
        let g = NetworkGraph::undirected(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!is_globally_input_reachable(
            &g,
            &DrivenSet::new([0], 4).unwrap()
        ));
        let single = NetworkGraph::new(1, vec![]).unwrap();
        assert!(is_globally_input_reachable(
            &single,
            &DrivenSet::new([0], 1).unwrap()
        ));
    }

    #[test]
    fn forest_on_chain_and_star() {
        let chain = NetworkGraph::path(4).unwrap();
        match spanning_forest(&chain, &DrivenSet::new([0], 4).unwrap()) {
            ForestOutcome::Spanning(f) => {
                assert_eq!(f.parent, vec![None, Some(0), Some(1), Some(2)]);
                assert_eq!(f.order, vec![0, 1, 2, 3]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let star = NetworkGraph::star(5).unwrap();
        match spanning_forest(&star, &DrivenSet::new([0], 5).unwrap()) {
            ForestOutcome::Spanning(f) => {
                assert!((1..5).all(|v| f.parent[v] == Some(0)));
                assert_eq!(f.roots().collect::<Vec<_>>(), vec![0]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn forest_failure_lists_isolated_component() {
        let g = NetworkGraph::undirected(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        let out = spanning_forest(&g, &DrivenSet::new([1], 5).unwrap());
        assert_eq!(out, ForestOutcome::Unreachable(VertexSet(vec![2, 3, 4])));
    }

    #[test]
    fn parents_precede_children_in_order() {
        let g = NetworkGraph::undirected(6, &[(0, 3), (3, 5), (5, 1), (1, 4), (2, 4)]).unwrap();
        let d = DrivenSet::new([2, 0], 6).unwrap();
        let ForestOutcome::Spanning(f) = spanning_forest(&g, &d) else {
            panic!("expected a forest");
        };
        let pos: Vec<usize> = (0..6)
            .map(|v| f.order.iter().position(|&x| x == v).unwrap())
            .collect();
        for v in 0..6 {
            if let Some(p) = f.parent[v] {
                assert!(pos[p] < pos[v]);
            }
            assert!(d.contains(f.root_of(v)));
        }
    }
}
