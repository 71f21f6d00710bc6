use super::{block_laplacian, scalar_laplacians, EdgeWeights};
use crate::error::{Error, Result};
use crate::numerics::{identity, kron, ones, Mat};
use crate::subsystem::SubsystemModel;
use crate::topology::{incidence_matrices, DrivenSet, NetworkGraph, OrientationPolicy};

/// Relative tolerance for agreement between independent assembly routes.
pub const ASSEMBLY_AGREEMENT_TOL: f64 = 1e-10;

/// The lumped pair `(A_sys, B_sys)` of a network, states stacked node by
/// node.
#[derive(Debug, Clone, PartialEq)]
pub struct LumpedSystem {
    pub a_sys: Mat,
    pub b_sys: Mat,
    pub num_nodes: usize,
    pub state_dim: usize,
    /// Weights the system was assembled from, in graph edge order.
    pub weights: EdgeWeights,
}

impl LumpedSystem {
    /// Adds `delta` to the diagonal block of node `node`.
    pub fn add_local_term(&mut self, node: usize, delta: &Mat) -> Result<()> {
        let n = self.state_dim;
        if delta.shape() != (n, n) || node >= self.num_nodes {
            return Err(Error::Dimension(format!(
                "local term must be {n}x{n} on a node in 1..={}",
                self.num_nodes
            )));
        }
        let mut block = self.a_sys.view_mut((node * n, node * n), (n, n));
        block += delta;
        Ok(())
    }

    /// Scales every input column, e.g. to fold a physical input gain in.
    pub fn scale_inputs(&mut self, gain: f64) {
        self.b_sys *= gain;
    }
}

/// `max |x - y| / max(1, max |x|)`.
pub fn relative_deviation(x: &Mat, y: &Mat) -> f64 {
    let scale = x.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    (x - y).iter().fold(0.0_f64, |m, v| m.max(v.abs())) / scale
}

fn check_weights(m: &SubsystemModel, g: &NetworkGraph, w: &EdgeWeights) -> Result<()> {
    let (p, r) = w.shape();
    if p != m.input_dim() || r != m.output_dim() {
        return Err(Error::Weights(format!(
            "weights are {p}x{r} but the subsystem has {} inputs and {} outputs",
            m.input_dim(),
            m.output_dim()
        )));
    }
    if w.num_edges() != g.num_edges() {
        return Err(Error::Weights(format!(
            "{} weights for {} edges",
            w.num_edges(),
            g.num_edges()
        )));
    }
    Ok(())
}

/// Lumped system of a SIMO network with vector weights.
///
/// `A_sys` is computed both as `I (x) A - sum_k L_k (x) (b c_k)` and as
/// `I (x) A - (I (x) b) L_g (I (x) C)`; the two must agree to
/// [`ASSEMBLY_AGREEMENT_TOL`]. `B_sys = Delta (x) b`.
pub fn assemble_lumped_simo(
    m: &SubsystemModel,
    g: &NetworkGraph,
    w: &EdgeWeights,
    d: &DrivenSet,
) -> Result<LumpedSystem> {
    m.validate()?;
    if !m.is_simo() {
        return Err(Error::Dimension(format!(
            "SIMO assembly needs a single input column, got {}",
            m.input_dim()
        )));
    }
    check_weights(m, g, w)?;
    let nn = g.num_vertices();
    let base = kron(&identity(nn), &m.a);

    let mut by_channel = base.clone();
    for (k, lk) in scalar_laplacians(g, w)?.iter().enumerate() {
        by_channel -= kron(lk, &(&m.b * m.output_row(k)));
    }
    let lg = block_laplacian(g, w)?;
    let by_block = &base - kron(&identity(nn), &m.b) * lg * kron(&identity(nn), &m.c);

    let dev = relative_deviation(&by_channel, &by_block);
    if dev > ASSEMBLY_AGREEMENT_TOL {
        return Err(Error::Consistency(format!(
            "channel-sum and block-Laplacian forms of A_sys differ by {dev:e}"
        )));
    }
    Ok(LumpedSystem {
        a_sys: by_channel,
        b_sys: kron(&d.delta(nn), &m.b),
        num_nodes: nn,
        state_dim: m.state_dim(),
        weights: w.clone(),
    })
}

/// Lumped system of a MIMO network with matrix weights:
/// `A_sys = I (x) A - (I (x) B) L_m (I (x) C)`, cross-checked against the
/// edgewise form `I (x) A + (K (x) B) diag(W_e) (K_I (x) C)`.
pub fn assemble_lumped_mimo(
    m: &SubsystemModel,
    g: &NetworkGraph,
    w: &EdgeWeights,
    d: &DrivenSet,
) -> Result<LumpedSystem> {
    m.validate()?;
    check_weights(m, g, w)?;
    let nn = g.num_vertices();
    let base = kron(&identity(nn), &m.a);
    let lm = block_laplacian(g, w)?;
    let a_sys = &base - kron(&identity(nn), &m.b) * lm * kron(&identity(nn), &m.c);

    if g.num_edges() > 0 {
        let inc = incidence_matrices(g, OrientationPolicy::default());
        let diag_w = block_diag(w.iter());
        let edgewise = &base + kron(&inc.k, &m.b) * diag_w * kron(&inc.k_i, &m.c);
        let dev = relative_deviation(&a_sys, &edgewise);
        if dev > ASSEMBLY_AGREEMENT_TOL {
            return Err(Error::Consistency(format!(
                "block-Laplacian and edgewise forms of A_sys differ by {dev:e}"
            )));
        }
    }
    Ok(LumpedSystem {
        a_sys,
        b_sys: kron(&d.delta(nn), &m.b),
        num_nodes: nn,
        state_dim: m.state_dim(),
        weights: w.clone(),
    })
}

/// Dispatches on the subsystem's input count.
pub fn assemble_lumped(
    m: &SubsystemModel,
    g: &NetworkGraph,
    w: &EdgeWeights,
    d: &DrivenSet,
) -> Result<LumpedSystem> {
    if m.is_simo() {
        assemble_lumped_simo(m, g, w, d)
    } else {
        assemble_lumped_mimo(m, g, w, d)
    }
}

pub fn block_diag<'a>(blocks: impl Iterator<Item = &'a Mat>) -> Mat {
    let blocks: Vec<&Mat> = blocks.collect();
    let rows = blocks.iter().map(|b| b.nrows()).sum();
    let cols = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = Mat::zeros(rows, cols);
    let (mut i, mut j) = (0, 0);
    for b in blocks {
        out.view_mut((i, j), b.shape()).copy_from(b);
        i += b.nrows();
        j += b.ncols();
    }
    out
}

/// `W = T Lambda Q` with `T = I_p (x) 1_{1xr}`, `Q = 1_{px1} (x) I_r` and
/// `Lambda` the row-major diagonal of `W`'s entries.
#[derive(Debug, Clone, PartialEq)]
pub struct TqFactors {
    pub t: Mat,
    pub lambda: Mat,
    pub q: Mat,
}

pub fn tq_decompose(w: &Mat) -> TqFactors {
    let (p, r) = w.shape();
    let entries: Vec<f64> = (0..p)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .map(|(i, j)| w[(i, j)])
        .collect();
    TqFactors {
        t: kron(&identity(p), &ones(1, r)),
        lambda: Mat::from_diagonal(&nalgebra::DVector::from_vec(entries)),
        q: kron(&ones(p, 1), &identity(r)),
    }
}

/// Deviation of the incidence-factorized assembly from direct assembly.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct FactorizationResidual {
    /// Vector-weight parameterization `[K (x) b, ...] diag(Lambda_k) [K_I (x) c_k; ...]`
    /// (SIMO only).
    pub channel_form: Option<f64>,
    /// Per-edge `T Lambda_e Q` parameterization.
    pub tq_form: f64,
    pub input_matrix: f64,
}

impl FactorizationResidual {
    pub fn max(&self) -> f64 {
        self.channel_form
            .unwrap_or(0.0)
            .max(self.tq_form)
            .max(self.input_matrix)
    }
}

/// Rebuilds `[A_sys, B_sys]` from the incidence factors `K`, `K_I` and
/// diagonal parameter matrices, then reports the relative deviation from
/// [`assemble_lumped`].
pub fn factorized_assembly_check(
    m: &SubsystemModel,
    g: &NetworkGraph,
    w: &EdgeWeights,
    d: &DrivenSet,
) -> Result<FactorizationResidual> {
    let direct = assemble_lumped(m, g, w, d)?;
    let nn = g.num_vertices();
    let (p, r) = w.shape();
    let base = kron(&identity(nn), &m.a);
    let b_fact = kron(&d.delta(nn), &m.b);
    let input_matrix = relative_deviation(&direct.b_sys, &b_fact);

    if g.num_edges() == 0 {
        return Ok(FactorizationResidual {
            channel_form: if p == 1 {
                Some(relative_deviation(&direct.a_sys, &base))
            } else {
                None
            },
            tq_form: relative_deviation(&direct.a_sys, &base),
            input_matrix,
        });
    }

    let inc = incidence_matrices(g, OrientationPolicy::default());
    let ne = g.num_edges();

    let channel_form = if p == 1 {
        // [K (x) b, ..., K (x) b] diag(Lambda_1..Lambda_r) [K_I (x) c_1; ...; K_I (x) c_r]
        let kb = kron(&inc.k, &m.b);
        let mut left = Mat::zeros(nn * m.state_dim(), r * ne);
        let mut right = Mat::zeros(r * ne, nn * m.state_dim());
        let mut lambdas = Vec::with_capacity(r);
        for k in 0..r {
            left.view_mut((0, k * ne), kb.shape()).copy_from(&kb);
            let kc = kron(&inc.k_i, &m.output_row(k));
            right.view_mut((k * ne, 0), kc.shape()).copy_from(&kc);
            lambdas.push(Mat::from_diagonal(&nalgebra::DVector::from_vec(
                w.channel(0, k),
            )));
        }
        let a_fact = &base + left * block_diag(lambdas.iter()) * right;
        Some(relative_deviation(&direct.a_sys, &a_fact))
    } else {
        None
    };

    let tq = tq_decompose(&Mat::zeros(p, r));
    let lambdas: Vec<Mat> = w.iter().map(|we| tq_decompose(we).lambda).collect();
    let a_tq = &base
        + kron(&identity(nn), &m.b)
            * kron(&inc.k, &tq.t)
            * block_diag(lambdas.iter())
            * kron(&inc.k_i, &tq.q)
            * kron(&identity(nn), &m.c);
    Ok(FactorizationResidual {
        channel_form,
        tq_form: relative_deviation(&direct.a_sys, &a_tq),
        input_matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::sample_weights;
    use crate::numerics::RandomSource;
    use crate::topology::Edge;
    use nalgebra::dmatrix;
    use rand::Rng;

    fn random_model(n: usize, p: usize, r: usize, seed: u64) -> SubsystemModel {
        let mut rng = RandomSource::new(seed).rng();
        let mut gen = |rows, cols| Mat::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0));
        SubsystemModel::new(gen(n, n), gen(n, p), gen(r, n)).unwrap()
    }

    #[test]
    fn single_node_is_the_subsystem() {
        let m = random_model(3, 1, 2, 1);
        let g = NetworkGraph::new(1, vec![]).unwrap();
        let w = EdgeWeights::zeros(&g, 1, 2);
        let lumped = assemble_lumped_simo(&m, &g, &w, &DrivenSet::all(1)).unwrap();
        assert_eq!(lumped.a_sys, m.a);
        assert_eq!(lumped.b_sys, m.b);
    }

    #[test]
    fn zero_weights_undriven() {
        let m = random_model(2, 1, 2, 2);
        let g = NetworkGraph::path(3).unwrap();
        let lumped =
            assemble_lumped_simo(&m, &g, &EdgeWeights::zeros(&g, 1, 2), &DrivenSet::empty())
                .unwrap();
        assert_eq!(lumped.a_sys, kron(&identity(3), &m.a));
        assert_eq!(lumped.b_sys, Mat::zeros(6, 3));
    }

    #[test]
    fn two_mass_chain_matches_hand_expansion() {
        // x1'' = k2 (x2 - x1) + mu2 (x2' - x1'), and symmetrically for x2.
        let (k2, mu2) = (1.0, 1.0);
        let m = SubsystemModel::new(
            dmatrix![0.0, 1.0; 0.0, 0.0],
            dmatrix![0.0; 1.0],
            identity(2),
        )
        .unwrap();
        let g = NetworkGraph::path(2).unwrap();
        let w = EdgeWeights::vector(&g, vec![vec![k2, mu2]]).unwrap();
        let lumped = assemble_lumped_simo(&m, &g, &w, &DrivenSet::new([0], 2).unwrap()).unwrap();
        let expected = dmatrix![
            0.0, 1.0, 0.0, 0.0;
            -k2, -mu2, k2, mu2;
            0.0, 0.0, 0.0, 1.0;
            k2, mu2, -k2, -mu2
        ];
        assert_eq!(lumped.a_sys, expected);
        assert_eq!(
            lumped.b_sys,
            dmatrix![0.0, 0.0; 1.0, 0.0; 0.0, 0.0; 0.0, 0.0]
        );
    }

    #[test]
    fn unit_matrix_weights_reduce_to_simo() {
        let m = random_model(3, 1, 1, 3);
        let g = NetworkGraph::undirected(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let w = sample_weights(&g, (1, 1), RandomSource::new(4), 1.0).unwrap();
        let d = DrivenSet::new([1], 3).unwrap();
        let s = assemble_lumped_simo(&m, &g, &w, &d).unwrap();
        let mm = assemble_lumped_mimo(&m, &g, &w, &d).unwrap();
        assert!(relative_deviation(&s.a_sys, &mm.a_sys) < 1e-14);
        assert_eq!(s.b_sys, mm.b_sys);
    }

    #[test]
    fn mimo_zero_weights_and_random_agreement() {
        let m = random_model(3, 2, 2, 5);
        let g = NetworkGraph::path(3).unwrap();
        let z = assemble_lumped_mimo(&m, &g, &EdgeWeights::zeros(&g, 2, 2), &DrivenSet::empty())
            .unwrap();
        assert_eq!(z.a_sys, kron(&identity(3), &m.a));
        // Random instance: construction itself cross-checks the two routes.
        let w = sample_weights(&g, (2, 2), RandomSource::new(6), 1.0).unwrap();
        assert!(assemble_lumped_mimo(&m, &g, &w, &DrivenSet::new([0], 3).unwrap()).is_ok());
    }

    #[test]
    fn channel_count_mismatch_is_rejected() {
        let m = random_model(2, 1, 2, 7);
        let g = NetworkGraph::path(2).unwrap();
        assert!(
            assemble_lumped_simo(&m, &g, &EdgeWeights::zeros(&g, 1, 3), &DrivenSet::empty())
                .is_err()
        );
    }

    #[test]
    fn tq_examples() {
        let f = tq_decompose(&dmatrix![2.5]);
        assert_eq!(
            (f.t.clone(), f.lambda.clone(), f.q.clone()),
            (dmatrix![1.0], dmatrix![2.5], dmatrix![1.0])
        );
        let (a, b) = (0.3, -0.9);
        let f = tq_decompose(&dmatrix![a, b]);
        assert_eq!(f.t, dmatrix![1.0, 1.0]);
        assert_eq!(f.lambda, dmatrix![a, 0.0; 0.0, b]);
        assert_eq!(f.q, identity(2));
        assert_eq!(&f.t * &f.lambda * &f.q, dmatrix![a, b]);
        let w = dmatrix![0.1, -0.2, 0.7; 0.4, 0.5, -0.6];
        let f = tq_decompose(&w);
        assert_eq!(f.lambda[(1, 1)], -0.2);
        assert_eq!(f.lambda[(3, 3)], 0.4);
        assert_eq!(&f.t * &f.lambda * &f.q, w);
    }

    #[test]
    fn factorized_forms_match_direct_assembly() {
        let m = random_model(3, 1, 2, 8);
        let g = NetworkGraph::path(3).unwrap();
        let w = sample_weights(&g, (1, 2), RandomSource::new(9), 1.0).unwrap();
        let res = factorized_assembly_check(&m, &g, &w, &DrivenSet::new([0], 3).unwrap()).unwrap();
        assert!(res.max() < 1e-10, "{res:?}");

        let empty = NetworkGraph::new(2, vec![]).unwrap();
        let res = factorized_assembly_check(
            &m,
            &empty,
            &EdgeWeights::zeros(&empty, 1, 2),
            &DrivenSet::empty(),
        )
        .unwrap();
        assert_eq!(res.max(), 0.0);

        let semi =
            NetworkGraph::new(3, vec![Edge::directed(0, 1), Edge::undirected(1, 2)]).unwrap();
        let w = sample_weights(&semi, (1, 2), RandomSource::new(10), 1.0).unwrap();
        let res =
            factorized_assembly_check(&m, &semi, &w, &DrivenSet::new([0], 3).unwrap()).unwrap();
        assert!(res.max() < 1e-10, "{res:?}");

        let mm = random_model(3, 2, 2, 11);
        let w = sample_weights(&semi, (2, 2), RandomSource::new(12), 1.0).unwrap();
        let res =
            factorized_assembly_check(&mm, &semi, &w, &DrivenSet::new([2], 3).unwrap()).unwrap();
        assert!(res.channel_form.is_none());
        assert!(res.max() < 1e-10, "{res:?}");
    }

    #[test]
    fn local_terms_and_input_gain() {
        let m = random_model(2, 1, 1, 13);
        let g = NetworkGraph::path(2).unwrap();
        let mut l = assemble_lumped_simo(&m, &g, &EdgeWeights::zeros(&g, 1, 1), &DrivenSet::all(2))
            .unwrap();
        let before = l.a_sys.clone();
        l.add_local_term(1, &dmatrix![0.0, 0.0; -1.0, -2.0])
            .unwrap();
        assert_eq!(l.a_sys[(3, 2)], before[(3, 2)] - 1.0);
        assert_eq!(l.a_sys[(3, 3)], before[(3, 3)] - 2.0);
        assert!(l.add_local_term(2, &Mat::zeros(2, 2)).is_err());
        l.scale_inputs(0.5);
        assert_eq!(l.b_sys, kron(&identity(2), &m.b) * 0.5);
    }
}
