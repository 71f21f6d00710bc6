use super::EdgeWeights;
use crate::error::{Error, Result};
use crate::numerics::Mat;
use crate::topology::{EdgeKind, NetworkGraph};

fn check_conforms(g: &NetworkGraph, w: &EdgeWeights) -> Result<()> {
    if w.num_edges() != g.num_edges() {
        return Err(Error::Weights(format!(
            "{} weights for a graph with {} edges",
            w.num_edges(),
            g.num_edges()
        )));
    }
    Ok(())
}

/// Scalar Laplacian of one weight entry: `[L]_ij = -w_ij` off the diagonal,
/// row sums of the incoming weights on it. A directed edge `u -> v` only
/// touches row `v`.
pub fn channel_laplacian(g: &NetworkGraph, w: &EdgeWeights, row: usize, col: usize) -> Result<Mat> {
    check_conforms(g, w)?;
    let n = g.num_vertices();
    let mut l = Mat::zeros(n, n);
    for (e, wt) in g.edges().iter().zip(w.iter()) {
        let x = wt[(row, col)];
        l[(e.v, e.u)] -= x;
        l[(e.v, e.v)] += x;
        if e.kind == EdgeKind::Undirected {
            l[(e.u, e.v)] -= x;
            l[(e.u, e.u)] += x;
        }
    }
    Ok(l)
}

/// `L_1, ..., L_r` of a vector-weighted graph.
pub fn scalar_laplacians(g: &NetworkGraph, w: &EdgeWeights) -> Result<Vec<Mat>> {
    let (p, r) = w.shape();
    if p != 1 {
        return Err(Error::Weights(format!(
            "scalar Laplacians need vector weights, got {p}x{r}"
        )));
    }
    (0..r).map(|k| channel_laplacian(g, w, 0, k)).collect()
}

/// Block Laplacian (`Np x Nr`): block `(i, j)` is `-W_ij`, block `(i, i)`
/// is the sum of the weights entering `i`. With `p = 1` this is the
/// vector-weighted Laplacian `L_g`, otherwise the matrix-weighted `L_m`.
pub fn block_laplacian(g: &NetworkGraph, w: &EdgeWeights) -> Result<Mat> {
    check_conforms(g, w)?;
    let (p, r) = w.shape();
    let n = g.num_vertices();
    let mut l = Mat::zeros(n * p, n * r);
    let mut add = |bi: usize, bj: usize, m: &Mat, sign: f64| {
        let mut view = l.view_mut((bi * p, bj * r), (p, r));
        view += m * sign;
    };
    for (e, wt) in g.edges().iter().zip(w.iter()) {
        add(e.v, e.u, wt, -1.0);
        add(e.v, e.v, wt, 1.0);
        if e.kind == EdgeKind::Undirected {
            add(e.u, e.v, wt, -1.0);
            add(e.u, e.u, wt, 1.0);
        }
    }
    Ok(l)
}

pub fn vector_laplacian(g: &NetworkGraph, w: &EdgeWeights) -> Result<Mat> {
    if w.shape().0 != 1 {
        return Err(Error::Weights(
            "vector Laplacian needs 1 x r weights".into(),
        ));
    }
    block_laplacian(g, w)
}

/// All Laplacians of a weight assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianSet {
    /// `channels[a * r + b]` is the scalar Laplacian of weight entry `(a, b)`;
    /// for vector weights these are `L_1..L_r`.
    pub channels: Vec<Mat>,
    pub block: Mat,
    pub shape: (usize, usize),
}

impl LaplacianSet {
    pub fn new(g: &NetworkGraph, w: &EdgeWeights) -> Result<Self> {
        let (p, r) = w.shape();
        let mut channels = Vec::with_capacity(p * r);
        for a in 0..p {
            for b in 0..r {
                channels.push(channel_laplacian(g, w, a, b)?);
            }
        }
        Ok(Self {
            channels,
            block: block_laplacian(g, w)?,
            shape: (p, r),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{kron, Mat};
    use nalgebra::dmatrix;

    #[test]
    fn single_edge_two_channels() {
        let g = NetworkGraph::path(2).unwrap();
        let (a, b) = (0.3, -0.8);
        let w = EdgeWeights::vector(&g, vec![vec![a, b]]).unwrap();
        let ls = scalar_laplacians(&g, &w).unwrap();
        assert_eq!(ls[0], dmatrix![a, -a; -a, a]);
        assert_eq!(ls[1], dmatrix![b, -b; -b, b]);
        let lg = vector_laplacian(&g, &w).unwrap();
        assert_eq!(lg, dmatrix![a, b, -a, -b; -a, -b, a, b]);
    }

    #[test]
    fn empty_and_zero_weights() {
        let g = NetworkGraph::new(3, vec![]).unwrap();
        let w = EdgeWeights::zeros(&g, 1, 2);
        for l in scalar_laplacians(&g, &w).unwrap() {
            assert_eq!(l, Mat::zeros(3, 3));
        }
        let g = NetworkGraph::path(3).unwrap();
        assert_eq!(
            vector_laplacian(&g, &EdgeWeights::zeros(&g, 1, 2)).unwrap(),
            Mat::zeros(3, 6)
        );
    }

    #[test]
    fn chain_first_channel_by_hand() {
        let g = NetworkGraph::path(3).unwrap();
        let w = EdgeWeights::vector(&g, vec![vec![1.0, 0.0], vec![2.0, 0.0]]).unwrap();
        let l1 = &scalar_laplacians(&g, &w).unwrap()[0];
        assert_eq!(
            *l1,
            dmatrix![1.0, -1.0, 0.0; -1.0, 3.0, -2.0; 0.0, -2.0, 2.0]
        );
    }

    #[test]
    fn channel_selectors_rebuild_vector_laplacian() {
        let g = NetworkGraph::undirected(4, &[(0, 1), (1, 2), (0, 3), (2, 3)]).unwrap();
        let w = EdgeWeights::vector(
            &g,
            vec![
                vec![0.5, -0.2, 0.9],
                vec![0.1, 0.4, -0.7],
                vec![-0.3, 0.8, 0.2],
                vec![0.6, -0.5, 0.3],
            ],
        )
        .unwrap();
        let r = 3;
        let ls = scalar_laplacians(&g, &w).unwrap();
        let mut rebuilt = Mat::zeros(4, 4 * r);
        for (k, l) in ls.iter().enumerate() {
            let mut selector = Mat::zeros(1, r);
            selector[(0, k)] = 1.0;
            rebuilt += kron(l, &selector);
        }
        assert_eq!(rebuilt, vector_laplacian(&g, &w).unwrap());
    }

    #[test]
    fn directed_edge_touches_only_its_head() {
        let g = NetworkGraph::new(2, vec![crate::topology::Edge::directed(0, 1)]).unwrap();
        let w = EdgeWeights::vector(&g, vec![vec![2.0]]).unwrap();
        assert_eq!(
            scalar_laplacians(&g, &w).unwrap()[0],
            dmatrix![0.0, 0.0; -2.0, 2.0]
        );
    }
}
