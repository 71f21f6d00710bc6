use crate::numerics::{EigenCluster, ToleranceConfig};
use crate::topology::VertexSet;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    StructurallyControllable,
    Not,
    Inconclusive,
}

impl Verdict {
    /// Process exit code used by the command line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::StructurallyControllable => 0,
            Verdict::Not => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::StructurallyControllable => "STRUCTURALLY_CONTROLLABLE",
            Verdict::Not => "NOT",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Which criterion decided the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TheoremUsed {
    /// Undirected SIMO network.
    #[serde(rename = "theorem-1")]
    UndirectedSimo,
    /// SIMO network with directed edges.
    #[serde(rename = "theorem-2")]
    SemiSymmetricSimo,
    /// Matrix-weighted network.
    #[serde(rename = "theorem-3")]
    MatrixWeighted,
    /// Every subsystem is driven, so coupling can be cancelled by feedback.
    #[serde(rename = "trivial-case")]
    AllDriven,
}

impl fmt::Display for TheoremUsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremUsed::UndirectedSimo => "theorem-1",
            TheoremUsed::SemiSymmetricSimo => "theorem-2",
            TheoremUsed::MatrixWeighted => "theorem-3",
            TheoremUsed::AllDriven => "trivial-case",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    DeficientEigenvalues {
        eigenvalues: Vec<EigenCluster>,
    },
    UnreachableVertices {
        vertices: VertexSet,
    },
    FixedModes {
        modes: Vec<EigenCluster>,
    },
    /// The summed output row vanished, so no coupling survives.
    ZeroCoupling {
        reduced_output: Vec<f64>,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eigs = |cl: &[EigenCluster]| {
            cl.iter()
                .map(|c| format!("{:.6}{:+.6}i (x{})", c.value.re, c.value.im, c.multiplicity))
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self {
            Witness::DeficientEigenvalues { eigenvalues } => {
                write!(f, "deficient eigenvalues {}", eigs(eigenvalues))
            }
            Witness::UnreachableVertices { vertices } => {
                write!(f, "unreachable vertices {vertices}")
            }
            Witness::FixedModes { modes } => write!(f, "fixed modes {}", eigs(modes)),
            Witness::ZeroCoupling { reduced_output } => {
                write!(f, "summed output row {reduced_output:?} is zero")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Condition {
    pub fn new(name: &str, holds: bool, witness: Option<Witness>) -> Self {
        Self {
            name: name.to_owned(),
            holds,
            witness: if holds { None } else { witness },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: usize,
    /// Stream id of the weight draw.
    pub stream: u64,
    pub controllable: bool,
    /// Failing eigenvalues of `A_sys`, counted with multiplicity.
    pub deficient_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub seed: u64,
    pub trials: usize,
    pub per_trial: Vec<TrialRecord>,
    pub controllable_trials: usize,
    /// At least one draw gave a controllable lumped pair.
    pub certified_controllable: bool,
    /// Verdict the trials are compared against.
    pub verdict: Verdict,
    /// Inconclusive verdicts always agree; the trials are evidence only.
    pub agree_with_verdict: bool,
}

impl CertificationReport {
    pub fn exit_code(&self) -> i32 {
        if self.agree_with_verdict {
            0
        } else {
            3
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub verdict: Verdict,
    pub theorem_used: TheoremUsed,
    pub conditions: Vec<Condition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certification: Option<CertificationReport>,
    pub tolerances: ToleranceConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl AnalysisReport {
    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn failed_conditions(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.holds)
    }
}
