//! Structural controllability verdicts, the condition checks behind them
//! and a Monte Carlo oracle that certifies them on sampled weights.

mod certify;
mod checks;
mod engine;
mod report;

pub use certify::{certify_lumped, certify_monte_carlo, CERTIFY_WEIGHT_RANGE};
pub use checks::{
    aux_condition_check, laplacian_leader_controllability, rank_condition_check, receives_coupling,
    AuxConditionReport, EigenRank, RankCheck,
};
pub use engine::{
    analyze, analyze_mimo, analyze_scalar_constrained, analyze_simo, reduce_scalar_weight,
    AnalysisOptions, COND_CONTROLLABLE, COND_COUPLING, COND_NO_FIXED_MODES, COND_OBSERVABLE,
    COND_REACHABLE,
};
pub use report::{
    AnalysisReport, CertificationReport, Condition, TheoremUsed, TrialRecord, Verdict, Witness,
};
