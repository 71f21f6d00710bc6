use crate::error::{Error, Result};
use crate::numerics::Mat;
use serde::Serialize;
use std::collections::VecDeque;

/// Zero/nonzero pattern of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    rows: usize,
    cols: usize,
    nz: Vec<bool>,
}

impl Pattern {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut nz = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                nz.push(f(i, j));
            }
        }
        Self { rows, cols, nz }
    }

    /// Entries with `|x| > 0` are nonzero.
    pub fn of(m: &Mat) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] != 0.0)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.nz[i * self.cols + j]
    }
}

/// Auxiliary digraph of a pattern pair `(H, P)`: state vertex `v_i -> v_j`
/// whenever `H[j, i] != 0`, input vertex `u_i -> v_j` whenever `P[j, i] != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuxDigraph {
    pub num_states: usize,
    pub num_inputs: usize,
    /// `(from, to)` pairs over state vertices.
    pub state_edges: Vec<(usize, usize)>,
    /// `(input, state)` pairs.
    pub input_edges: Vec<(usize, usize)>,
}

pub fn aux_digraph(h: &Pattern, p: &Pattern) -> Result<AuxDigraph> {
    let (hr, hc) = h.shape();
    let (pr, pc) = p.shape();
    if hr != hc {
        return Err(Error::Dimension(format!(
            "H pattern must be square, got {hr}x{hc}"
        )));
    }
    if pr != hr {
        return Err(Error::Dimension(format!(
            "P pattern has {pr} rows, H has {hr}"
        )));
    }
    let mut state_edges = Vec::new();
    for i in 0..hr {
        for j in 0..hr {
            if h.get(j, i) {
                state_edges.push((i, j));
            }
        }
    }
    let mut input_edges = Vec::new();
    for i in 0..pc {
        for j in 0..pr {
            if p.get(j, i) {
                input_edges.push((i, j));
            }
        }
    }
    Ok(AuxDigraph {
        num_states: hr,
        num_inputs: pc,
        state_edges,
        input_edges,
    })
}

impl AuxDigraph {
    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_states];
        for &(a, b) in &self.state_edges {
            adj[a].push(b);
        }
        adj
    }

    /// State vertices reachable from some input vertex.
    pub fn input_reachable(&self) -> Vec<bool> {
        let adj = self.successors();
        let mut seen = vec![false; self.num_states];
        let mut queue = VecDeque::new();
        for &(_, v) in &self.input_edges {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleCheck {
    pub holds: bool,
    /// A cycle with no input-reachable vertex, listed in traversal order.
    pub witness: Option<Vec<usize>>,
}

/// Every cycle has an input-reachable vertex iff the subgraph induced on
/// unreachable state vertices is acyclic.
pub fn all_cycles_input_reachable(dg: &AuxDigraph) -> CycleCheck {
    let reachable = dg.input_reachable();
    let adj = dg.successors();
    let witness = find_cycle(&adj, |v| !reachable[v]);
    CycleCheck {
        holds: witness.is_none(),
        witness,
    }
}

/// Iterative DFS over vertices accepted by `keep`; the first back edge
/// closes the returned cycle.
fn find_cycle(adj: &[Vec<usize>], keep: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Grey,
        Black,
    }
    let n = adj.len();
    let mut color = vec![Color::White; n];
    for root in (0..n).filter(|&v| keep(v)) {
        if color[root] != Color::White {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        color[root] = Color::Grey;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&w) = adj[v].get(*next) {
                *next += 1;
                if !keep(w) {
                    continue;
                }
                match color[w] {
                    Color::Grey => {
                        let start = stack.iter().position(|&(x, _)| x == w).unwrap();
                        return Some(stack[start..].iter().map(|&(x, _)| x).collect());
                    }
                    Color::White => {
                        color[w] = Color::Grey;
                        stack.push((w, 0));
                    }
                    Color::Black => {}
                }
            } else {
                color[v] = Color::Black;
                stack.pop();
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(rows: &[&[u8]]) -> Pattern {
        Pattern::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j] != 0)
    }

    #[test]
    fn identity_pattern_gives_self_loops() {
        let dg = aux_digraph(&pat(&[&[1, 0], &[0, 1]]), &pat(&[&[1], &[0]])).unwrap();
        assert_eq!(dg.state_edges, vec![(0, 0), (1, 1)]);
        assert_eq!(dg.input_edges, vec![(0, 0)]);
        let check = all_cycles_input_reachable(&dg);
        assert!(!check.holds);
        assert_eq!(check.witness, Some(vec![1]));
    }

    #[test]
    fn zero_h_full_p() {
        let dg = aux_digraph(&pat(&[&[0, 0], &[0, 0]]), &pat(&[&[1, 1], &[1, 1]])).unwrap();
        assert!(dg.state_edges.is_empty());
        assert_eq!(dg.input_edges.len(), 4);
        assert!(all_cycles_input_reachable(&dg).holds);
    }

    #[test]
    fn permutation_pattern_is_a_three_cycle() {
        // H[j, i] != 0 for (i, j) in {(0,1), (1,2), (2,0)}.
        let h = pat(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let dg = aux_digraph(&h, &pat(&[&[0], &[0], &[0]])).unwrap();
        assert_eq!(dg.state_edges, vec![(0, 1), (1, 2), (2, 0)]);
        let check = all_cycles_input_reachable(&dg);
        assert!(!check.holds);
        assert_eq!(check.witness.unwrap().len(), 3);
    }

    #[test]
    fn isolated_two_cycle_is_the_witness() {
        // 0 <- input, 1 <-> 2 isolated.
        let h = pat(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        let check =
            all_cycles_input_reachable(&aux_digraph(&h, &pat(&[&[1], &[0], &[0]])).unwrap());
        assert!(!check.holds);
        let mut w = check.witness.unwrap();
        w.sort_unstable();
        assert_eq!(w, vec![1, 2]);
    }

    #[test]
    fn reachable_cycles_pass() {
        let h = pat(&[&[1, 1], &[1, 1]]);
        assert!(all_cycles_input_reachable(&aux_digraph(&h, &pat(&[&[1], &[0]])).unwrap()).holds);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(aux_digraph(&pat(&[&[1, 0]]), &pat(&[&[1]])).is_err());
        assert!(aux_digraph(&pat(&[&[1]]), &pat(&[&[1], &[1]])).is_err());
    }
}
