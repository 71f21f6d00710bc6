use super::{assemble_lumped_simo, EdgeWeights, LumpedSystem};
use crate::error::{Error, Result};
use crate::numerics::{identity, Mat};
use crate::subsystem::SubsystemModel;
use crate::topology::{DrivenSet, NetworkGraph};
use nalgebra::dmatrix;

/// A chain of `N` equal masses joined by springs and dampers.
///
/// Each mass is a double integrator with state `(position, velocity)` and
/// full-state output. Spring `k_{i+1}` and damper `mu_{i+1}` sit between
/// masses `i` and `i+1`; `k_1`, `mu_1` tie mass 1 to the wall.
#[derive(Debug, Clone, PartialEq)]
pub struct MassSpringChain {
    pub model: SubsystemModel,
    pub graph: NetworkGraph,
    pub weights: EdgeWeights,
    /// Mass 1 driven; replace as needed.
    pub driven: DrivenSet,
    /// `1/m`, applied to every external input column.
    pub input_gain: f64,
    /// Wall coupling of mass 1, added to its diagonal block when grounded.
    pub grounding: Mat,
}

pub fn mass_spring_chain(n: usize, mass: f64, k: &[f64], mu: &[f64]) -> Result<MassSpringChain> {
    if n == 0 {
        return Err(Error::Config("a chain needs at least one mass".into()));
    }
    if !(mass.is_finite() && mass > 0.0) {
        return Err(Error::Config(format!("mass must be positive, got {mass}")));
    }
    if k.len() != n || mu.len() != n {
        return Err(Error::Config(format!(
            "expected {n} spring and {n} damper constants, got {} and {}",
            k.len(),
            mu.len()
        )));
    }
    if k.iter().chain(mu).any(|x| !x.is_finite()) {
        return Err(Error::Config(
            "spring and damper constants must be finite".into(),
        ));
    }
    let model = SubsystemModel::new(
        dmatrix![0.0, 1.0; 0.0, 0.0],
        dmatrix![0.0; 1.0],
        identity(2),
    )?;
    let graph = NetworkGraph::path(n)?;
    let rows = (1..n).map(|i| vec![k[i] / mass, mu[i] / mass]).collect();
    let weights = if n == 1 {
        EdgeWeights::zeros(&graph, 1, 2)
    } else {
        EdgeWeights::vector(&graph, rows)?
    };
    Ok(MassSpringChain {
        model,
        driven: DrivenSet::new([0], n)?,
        graph,
        weights,
        input_gain: 1.0 / mass,
        grounding: dmatrix![0.0, 0.0; -k[0] / mass, -mu[0] / mass],
    })
}

impl MassSpringChain {
    /// Lumped system for the given driven set, with the input gain folded in
    /// and optionally the wall coupling of mass 1.
    pub fn lumped(&self, driven: &DrivenSet, ground_first_mass: bool) -> Result<LumpedSystem> {
        let mut sys = assemble_lumped_simo(&self.model, &self.graph, &self.weights, driven)?;
        sys.scale_inputs(self.input_gain);
        if ground_first_mass {
            sys.add_local_term(0, &self.grounding)?;
        }
        Ok(sys)
    }
}
