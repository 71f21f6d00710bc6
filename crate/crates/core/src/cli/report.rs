use crate::verdict::{AnalysisReport, CertificationReport};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const ANALYSIS_SCHEMA: &str = "diffnet/analysis-report/v1";
pub const CERTIFICATION_SCHEMA: &str = "diffnet/certification-report/v1";
pub const LUMPED_SCHEMA: &str = "diffnet/lumped-system/v1";
pub const GRAPH_SCHEMA: &str = "diffnet/graph-report/v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl ToolInfo {
    pub fn current() -> Self {
        Self {
            name: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }
}

/// `sha256:<hex>` of the raw input bytes.
pub fn input_digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// Fields shared by every report file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope {
    #[serde(rename = "$schema")]
    pub schema: String,
    pub tool: ToolInfo,
    pub input_digest: String,
    pub seed: u64,
}

impl Envelope {
    pub fn new(schema: &str, input: &[u8], seed: u64) -> Self {
        Self {
            schema: schema.into(),
            tool: ToolInfo::current(),
            input_digest: input_digest(input),
            seed,
        }
    }
}

/// Monte Carlo evidence for the network with the grounding term applied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundedEvidence {
    pub vertex: usize,
    pub certification: CertificationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReportFile {
    #[serde(flatten)]
    pub envelope: Envelope,
    pub report: AnalysisReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grounded: Option<GroundedEvidence>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificationReportFile {
    #[serde(flatten)]
    pub envelope: Envelope,
    pub grounded: bool,
    pub report: CertificationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub u: usize,
    pub v: usize,
    #[serde(rename = "W")]
    pub w: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LumpedFile {
    #[serde(flatten)]
    pub envelope: Envelope,
    pub weights_sampled: bool,
    pub grounded: bool,
    pub input_gain: f64,
    pub weights: Vec<WeightEntry>,
    #[serde(rename = "A_sys")]
    pub a_sys: Vec<Vec<f64>>,
    #[serde(rename = "B_sys")]
    pub b_sys: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestLink {
    pub vertex: usize,
    pub parent: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrientationRecord {
    pub u: usize,
    pub v: usize,
    pub kind: crate::topology::EdgeKind,
    pub start: usize,
    pub end: usize,
    pub k_rule: crate::topology::KColumnRule,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphReportFile {
    #[serde(flatten)]
    pub envelope: Envelope,
    pub globally_input_reachable: bool,
    pub driven: crate::topology::VertexSet,
    pub reachable: crate::topology::VertexSet,
    pub unreachable: crate::topology::VertexSet,
    /// Parent links (1-based) when a spanning forest exists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forest: Option<Vec<ForestLink>>,
    pub orientation: crate::topology::OrientationPolicy,
    pub edges: Vec<OrientationRecord>,
}
