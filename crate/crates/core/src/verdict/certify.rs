use super::engine::{analyze_mimo, check_driven};
use super::report::{CertificationReport, TrialRecord, Verdict};
use crate::assembly::{assemble_lumped, sample_weights, LumpedSystem};
use crate::error::{Error, Result};
use crate::numerics::{pbh_controllable, RandomSource, ToleranceConfig};
use crate::subsystem::SubsystemModel;
use crate::topology::{DrivenSet, NetworkGraph};

/// Half-width of the interval weight entries are drawn from.
pub const CERTIFY_WEIGHT_RANGE: f64 = 1.0;

/// Runs `trials` PBH tests on lumped systems produced by `build`, one
/// sub-stream of `source` per trial, and compares the outcome with
/// `verdict`.
///
/// A trial whose construction or test fails numerically is recorded as
/// uncontrollable with its error message.
pub fn certify_lumped(
    trials: usize,
    source: RandomSource,
    tol: &ToleranceConfig,
    verdict: Verdict,
    mut build: impl FnMut(RandomSource) -> Result<LumpedSystem>,
) -> Result<CertificationReport> {
    if trials == 0 {
        return Err(Error::Config(
            "certification needs at least one trial".into(),
        ));
    }
    tol.validate()?;
    let per_trial: Vec<TrialRecord> = (0..trials)
        .map(|index| {
            let stream = source.substream(index as u64);
            let outcome =
                build(stream).and_then(|sys| pbh_controllable(&sys.a_sys, &sys.b_sys, tol));
            match outcome {
                Ok(pbh) => TrialRecord {
                    index,
                    stream: stream.stream_id,
                    controllable: pbh.holds,
                    deficient_count: pbh.deficient_count(),
                    error: None,
                },
                Err(e) => TrialRecord {
                    index,
                    stream: stream.stream_id,
                    controllable: false,
                    deficient_count: 0,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let controllable_trials = per_trial.iter().filter(|t| t.controllable).count();
    let certified = controllable_trials > 0;
    let agree_with_verdict = match verdict {
        Verdict::StructurallyControllable => certified,
        Verdict::Not => !certified,
        Verdict::Inconclusive => true,
    };
    Ok(CertificationReport {
        seed: source.seed,
        trials,
        per_trial,
        controllable_trials,
        certified_controllable: certified,
        verdict,
        agree_with_verdict,
    })
}

/// Draws random edge weights, assembles the lumped pair and tests it with
/// PBH, `trials` times. One controllable draw certifies the network.
pub fn certify_monte_carlo(
    m: &SubsystemModel,
    g: &NetworkGraph,
    d: &DrivenSet,
    trials: usize,
    source: RandomSource,
    tol: &ToleranceConfig,
) -> Result<CertificationReport> {
    check_driven(g, d)?;
    let verdict = analyze_mimo(m, g, d, tol, source)?.verdict;
    let shape = (m.input_dim(), m.output_dim());
    certify_lumped(trials, source, tol, verdict, |s| {
        let w = sample_weights(g, shape, s, CERTIFY_WEIGHT_RANGE)?;
        assemble_lumped(m, g, &w, d)
    })
}
