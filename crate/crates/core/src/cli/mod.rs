//! File formats and command implementations behind the `diffnet` binary.
//!
//! Problem files are JSON with 1-based vertex ids and dense row-major
//! matrices. Every report carries a versioned `$schema`, the tool version,
//! the seed and a SHA-256 digest of the input file.

mod commands;
mod problem;
mod report;

pub use commands::{
    cmd_analyze, cmd_certify, cmd_example, cmd_graph, cmd_lump, render_analysis,
    render_certification, run, run_from_args, Cli, Command, CommonFlags, ExampleName, Failure,
    Format, DEFAULT_TRIALS, EXIT_DISAGREE, EXIT_INPUT, EXIT_SOFTWARE, SEED_ENV,
};
pub use problem::{
    EdgeSpec, GraphSpec, GroundingSpec, OptionsSpec, Problem, ProblemFile, SubsystemSpec,
    WeightSpec, WeightsSpec, PROBLEM_SCHEMA,
};
pub use report::{
    input_digest, AnalysisReportFile, CertificationReportFile, Envelope, ForestLink,
    GraphReportFile, GroundedEvidence, LumpedFile, OrientationRecord, ToolInfo, WeightEntry,
    ANALYSIS_SCHEMA, CERTIFICATION_SCHEMA, GRAPH_SCHEMA, LUMPED_SCHEMA,
};
