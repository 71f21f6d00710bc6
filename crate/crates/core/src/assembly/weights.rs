use crate::error::{Error, Result};
use crate::numerics::{all_finite, nonzero_uniform, Mat, RandomSource};
use crate::topology::NetworkGraph;
use serde::Serialize;

/// One `p x r` weight per edge of a graph, stored in the graph's edge order.
///
/// Undirected edges are stored once, so `W_ij = W_ji` holds by
/// construction. With `p = 1` these are the vector weights of SIMO
/// networks; larger `p` gives matrix weights.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWeights {
    p: usize,
    r: usize,
    per_edge: Vec<Mat>,
}

/// Vector weights (`p = 1`).
pub type VectorWeights = EdgeWeights;
/// Matrix weights.
pub type MatrixWeights = EdgeWeights;

impl EdgeWeights {
    pub fn zeros(g: &NetworkGraph, p: usize, r: usize) -> Self {
        Self {
            p,
            r,
            per_edge: vec![Mat::zeros(p, r); g.num_edges()],
        }
    }

    /// Weights aligned with `g.edges()`.
    pub fn from_edge_list(
        g: &NetworkGraph,
        p: usize,
        r: usize,
        per_edge: Vec<Mat>,
    ) -> Result<Self> {
        if p == 0 || r == 0 {
            return Err(Error::Weights("weight shape must be at least 1x1".into()));
        }
        if per_edge.len() != g.num_edges() {
            return Err(Error::Weights(format!(
                "{} weights for {} edges",
                per_edge.len(),
                g.num_edges()
            )));
        }
        for (w, e) in per_edge.iter().zip(g.edges()) {
            if w.shape() != (p, r) {
                return Err(Error::Weights(format!(
                    "weight of edge {e} is {}x{}, expected {p}x{r}",
                    w.nrows(),
                    w.ncols()
                )));
            }
            if !all_finite(w) {
                return Err(Error::Weights(format!("weight of edge {e} is not finite")));
            }
        }
        Ok(Self { p, r, per_edge })
    }

    /// Weights keyed by vertex pair (0-based). Unlisted edges get zero
    /// weight; a pair that is not an edge of `g` is rejected.
    pub fn from_pairs(
        g: &NetworkGraph,
        p: usize,
        r: usize,
        pairs: Vec<((usize, usize), Mat)>,
    ) -> Result<Self> {
        let mut per_edge = vec![Mat::zeros(p, r); g.num_edges()];
        let mut set = vec![false; g.num_edges()];
        for ((a, b), w) in pairs {
            let idx = g.find_edge(a, b).ok_or_else(|| {
                Error::Weights(format!("weight given for non-edge ({}, {})", a + 1, b + 1))
            })?;
            if set[idx] {
                return Err(Error::Weights(format!(
                    "edge {} weighted twice",
                    g.edges()[idx]
                )));
            }
            set[idx] = true;
            per_edge[idx] = w;
        }
        Self::from_edge_list(g, p, r, per_edge)
    }

    /// Vector weights from `1 x r` rows.
    pub fn vector(g: &NetworkGraph, rows: Vec<Vec<f64>>) -> Result<Self> {
        let r = rows.first().map_or(1, Vec::len);
        let per_edge = rows
            .into_iter()
            .map(|row| Mat::from_row_slice(1, row.len(), &row))
            .collect();
        Self::from_edge_list(g, 1, r, per_edge)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.p, self.r)
    }

    pub fn num_edges(&self) -> usize {
        self.per_edge.len()
    }

    pub fn edge(&self, idx: usize) -> &Mat {
        &self.per_edge[idx]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Mat> {
        self.per_edge.iter()
    }

    /// Entry `(row, col)` of every edge weight, in edge order.
    pub fn channel(&self, row: usize, col: usize) -> Vec<f64> {
        self.per_edge.iter().map(|w| w[(row, col)]).collect()
    }

    /// Builds weights from a flat parameter vector laid out edge by edge,
    /// each weight in row-major order.
    pub fn from_params(g: &NetworkGraph, p: usize, r: usize, params: &[f64]) -> Result<Self> {
        let per = p * r;
        if params.len() != per * g.num_edges() {
            return Err(Error::Weights(format!(
                "{} parameters for {} edges of shape {p}x{r}",
                params.len(),
                g.num_edges()
            )));
        }
        let per_edge = params
            .chunks(per)
            .map(|c| Mat::from_row_slice(p, r, c))
            .collect();
        Self::from_edge_list(g, p, r, per_edge)
    }

    pub fn num_params(g: &NetworkGraph, p: usize, r: usize) -> usize {
        g.num_edges() * p * r
    }

    /// Scalar weights repeated on every channel, i.e. `L_1 = ... = L_r`.
    pub fn uniform_channels(g: &NetworkGraph, scalars: &[f64], p: usize, r: usize) -> Result<Self> {
        if scalars.len() != g.num_edges() {
            return Err(Error::Weights("one scalar per edge expected".into()));
        }
        let per_edge = scalars
            .iter()
            .map(|&s| Mat::from_element(p, r, s))
            .collect();
        Self::from_edge_list(g, p, r, per_edge)
    }
}

/// JSON form of one edge weight (1-based vertex ids).
#[derive(Debug, Clone, Serialize)]
pub struct WeightRecord {
    pub u: usize,
    pub v: usize,
    #[serde(rename = "W")]
    pub w: Vec<Vec<f64>>,
}

impl EdgeWeights {
    pub fn records(&self, g: &NetworkGraph) -> Vec<WeightRecord> {
        g.edges()
            .iter()
            .zip(&self.per_edge)
            .map(|(e, w)| WeightRecord {
                u: e.u + 1,
                v: e.v + 1,
                w: crate::numerics::mat_to_rows(w),
            })
            .collect()
    }
}

/// One independent draw per stored edge, entries uniform on
/// `[-range, -0.1 range] U [0.1 range, range]`.
pub fn sample_weights(
    g: &NetworkGraph,
    shape: (usize, usize),
    source: RandomSource,
    range: f64,
) -> Result<EdgeWeights> {
    let (p, r) = shape;
    if !(range.is_finite() && range > 0.0) {
        return Err(Error::Config(format!(
            "weight range must be positive, got {range}"
        )));
    }
    let mut rng = source.rng();
    let per_edge = (0..g.num_edges())
        .map(|_| Mat::from_fn(p, r, |_, _| nonzero_uniform(&mut rng, range)))
        .collect();
    EdgeWeights::from_edge_list(g, p, r, per_edge)
}
