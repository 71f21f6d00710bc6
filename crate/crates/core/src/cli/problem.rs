use crate::assembly::{mass_spring_chain, EdgeWeights};
use crate::error::{Error, Result};
use crate::numerics::{mat_from_rows, mat_to_rows, Mat};
use crate::subsystem::SubsystemModel;
use crate::topology::{DrivenSet, Edge, EdgeKind, NetworkGraph};
use serde::{Deserialize, Serialize};

pub const PROBLEM_SCHEMA: &str = "diffnet/problem/v1";

/// A network analysis problem as stored on disk. Vertex ids are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(rename = "$schema", default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub subsystem: SubsystemSpec,
    pub graph: GraphSpec,
    pub driven: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<OptionsSpec>,
    /// Scale applied to every external input column.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_gain: Option<f64>,
    /// Extra local dynamics of one subsystem, used when grounding is asked
    /// for on the command line.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grounding: Option<GroundingSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubsystemSpec {
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<f64>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub u: usize,
    pub v: usize,
    #[serde(default = "undirected")]
    pub kind: EdgeKind,
}

fn undirected() -> EdgeKind {
    EdgeKind::Undirected
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsSpec {
    pub edges: Vec<WeightSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightSpec {
    pub u: usize,
    pub v: usize,
    #[serde(rename = "W")]
    pub w: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_rel_tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroundingSpec {
    pub vertex: usize,
    pub term: Vec<Vec<f64>>,
}

/// Validated in-memory form of a [`ProblemFile`] (0-based ids).
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub model: SubsystemModel,
    pub graph: NetworkGraph,
    pub driven: DrivenSet,
    pub weights: Option<EdgeWeights>,
    pub options: OptionsSpec,
    pub input_gain: f64,
    pub grounding: Option<(usize, Mat)>,
}

fn vertex(id: usize, n: usize, what: &str) -> Result<usize> {
    if id == 0 || id > n {
        return Err(Error::Graph(format!("{what} {id} outside 1..={n}")));
    }
    Ok(id - 1)
}

impl ProblemFile {
    pub fn to_problem(&self) -> Result<Problem> {
        let model = SubsystemModel::new(
            mat_from_rows(&self.subsystem.a)?,
            mat_from_rows(&self.subsystem.b)?,
            mat_from_rows(&self.subsystem.c)?,
        )?;
        let n = self.graph.n;
        let edges = self
            .graph
            .edges
            .iter()
            .map(|e| {
                Ok(Edge {
                    u: vertex(e.u, n, "edge endpoint")?,
                    v: vertex(e.v, n, "edge endpoint")?,
                    kind: e.kind,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let graph = NetworkGraph::new(n, edges)?;
        let driven = DrivenSet::new(
            self.driven
                .iter()
                .map(|&d| vertex(d, n, "driven vertex"))
                .collect::<Result<Vec<_>>>()?,
            n,
        )?;
        let weights = match &self.weights {
            None => None,
            Some(spec) => {
                let pairs = spec
                    .edges
                    .iter()
                    .map(|w| {
                        Ok((
                            (
                                vertex(w.u, n, "weight endpoint")?,
                                vertex(w.v, n, "weight endpoint")?,
                            ),
                            mat_from_rows(&w.w)?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(EdgeWeights::from_pairs(
                    &graph,
                    model.input_dim(),
                    model.output_dim(),
                    pairs,
                )?)
            }
        };
        let input_gain = self.input_gain.unwrap_or(1.0);
        if !input_gain.is_finite() || input_gain == 0.0 {
            return Err(Error::Config(format!(
                "input_gain must be finite and nonzero, got {input_gain}"
            )));
        }
        let grounding = match &self.grounding {
            None => None,
            Some(gs) => {
                let term = mat_from_rows(&gs.term)?;
                let k = model.state_dim();
                if term.shape() != (k, k) {
                    return Err(Error::Dimension(format!("grounding term must be {k}x{k}")));
                }
                Some((vertex(gs.vertex, n, "grounded vertex")?, term))
            }
        };
        let options = self.options.clone().unwrap_or_default();
        if let Some(tol) = options.rank_rel_tol {
            crate::numerics::ToleranceConfig::with_rank_tol(tol)?;
        }
        Ok(Problem {
            model,
            graph,
            driven,
            weights,
            options,
            input_gain,
            grounding,
        })
    }

    /// Problem file for a mass-spring-damper chain driven at mass 1.
    pub fn mass_spring(n: usize, mass: f64, springs: &[f64], dampers: &[f64]) -> Result<Self> {
        let chain = mass_spring_chain(n, mass, springs, dampers)?;
        Ok(Self {
            schema: Some(PROBLEM_SCHEMA.into()),
            subsystem: SubsystemSpec {
                a: mat_to_rows(&chain.model.a),
                b: mat_to_rows(&chain.model.b),
                c: mat_to_rows(&chain.model.c),
            },
            graph: GraphSpec {
                n,
                edges: chain
                    .graph
                    .edges()
                    .iter()
                    .map(|e| EdgeSpec {
                        u: e.u + 1,
                        v: e.v + 1,
                        kind: e.kind,
                    })
                    .collect(),
            },
            driven: vec![1],
            weights: Some(WeightsSpec {
                edges: chain
                    .weights
                    .records(&chain.graph)
                    .into_iter()
                    .map(|r| WeightSpec {
                        u: r.u,
                        v: r.v,
                        w: r.w,
                    })
                    .collect(),
            }),
            options: None,
            input_gain: Some(chain.input_gain),
            grounding: Some(GroundingSpec {
                vertex: 1,
                term: mat_to_rows(&chain.grounding),
            }),
        })
    }
}
