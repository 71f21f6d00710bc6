use super::certify::certify_monte_carlo;
use super::report::{AnalysisReport, Condition, TheoremUsed, Verdict, Witness};
use crate::error::{Error, Result};
use crate::numerics::{RandomSource, ToleranceConfig};
use crate::subsystem::{check_controllable, check_observable, fixed_modes, SubsystemModel};
use crate::topology::{unreachable_set, DrivenSet, NetworkGraph};

pub const COND_CONTROLLABLE: &str = "subsystem_controllable";
pub const COND_OBSERVABLE: &str = "subsystem_observable";
pub const COND_REACHABLE: &str = "globally_input_reachable";
pub const COND_NO_FIXED_MODES: &str = "no_fixed_modes";
pub const COND_COUPLING: &str = "coupling_nonzero";

/// Stream offset reserved for the fixed-mode cross-check so it never
/// overlaps certification draws.
const FIXED_MODE_STREAM: u64 = 1 << 40;

/// Knobs shared by the analysis entry points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    pub tol: ToleranceConfig,
    pub source: RandomSource,
    /// Monte Carlo trials attached to inconclusive verdicts.
    pub trials: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            tol: ToleranceConfig::default(),
            source: RandomSource::new(0),
            trials: 5,
        }
    }
}

pub(crate) fn check_driven(g: &NetworkGraph, d: &DrivenSet) -> Result<()> {
    match d.iter().find(|&v| v >= g.num_vertices()) {
        Some(v) => Err(Error::Graph(format!(
            "driven vertex {} outside 1..={}",
            v + 1,
            g.num_vertices()
        ))),
        None => Ok(()),
    }
}

fn reachability(g: &NetworkGraph, d: &DrivenSet) -> Condition {
    let missing = unreachable_set(g, d);
    Condition::new(
        COND_REACHABLE,
        missing.is_empty(),
        Some(Witness::UnreachableVertices { vertices: missing }),
    )
}

fn report(
    verdict: Verdict,
    theorem_used: TheoremUsed,
    conditions: Vec<Condition>,
    tol: &ToleranceConfig,
) -> AnalysisReport {
    AnalysisReport {
        verdict,
        theorem_used,
        conditions,
        certification: None,
        tolerances: *tol,
        notes: Vec::new(),
    }
}

/// Structural controllability of a vector-weighted (single-input) network.
///
/// With every subsystem driven the answer is controllability of `(A, b)`.
/// Otherwise the network is structurally controllable iff `(A, b)` is
/// controllable, `(A, C)` is observable and every vertex is input
/// reachable. Directed edges switch to the semi-symmetric criterion, which
/// has the same three conditions.
pub fn analyze_simo(
    m: &SubsystemModel,
    g: &NetworkGraph,
    d: &DrivenSet,
    tol: &ToleranceConfig,
) -> Result<AnalysisReport> {
    m.validate()?;
    tol.validate()?;
    check_driven(g, d)?;
    if !m.is_simo() {
        return Err(Error::Dimension(format!(
            "single-input analysis needs one input column, got {}",
            m.input_dim()
        )));
    }
    let ctrl = check_controllable(m, tol)?;
    let ctrl_cond = Condition::new(
        COND_CONTROLLABLE,
        ctrl.holds,
        Some(Witness::DeficientEigenvalues {
            eigenvalues: ctrl.deficient.clone(),
        }),
    );
    if d.len() == g.num_vertices() {
        let verdict = if ctrl.holds {
            Verdict::StructurallyControllable
        } else {
            Verdict::Not
        };
        return Ok(report(
            verdict,
            TheoremUsed::AllDriven,
            vec![ctrl_cond],
            tol,
        ));
    }

    let obs = check_observable(m, tol)?;
    let conditions = vec![
        ctrl_cond,
        Condition::new(
            COND_OBSERVABLE,
            obs.holds,
            Some(Witness::DeficientEigenvalues {
                eigenvalues: obs.deficient,
            }),
        ),
        reachability(g, d),
    ];
    let verdict = if conditions.iter().all(|c| c.holds) {
        Verdict::StructurallyControllable
    } else {
        Verdict::Not
    };
    let theorem = if g.has_directed_edges() {
        TheoremUsed::SemiSymmetricSimo
    } else {
        TheoremUsed::UndirectedSimo
    };
    Ok(report(verdict, theorem, conditions, tol))
}

/// Structural controllability of a matrix-weighted network.
///
/// Decided cases:
/// - a single input column goes to [`analyze_simo`];
/// - every subsystem driven: `(A, B)` controllable;
/// - `(A, B)` uncontrollable or some vertex unreachable: NOT (both are
///   necessary for any weights);
/// - no fixed modes: controllable iff input reachable.
///
/// What remains (fixed modes with a reachable topology) is INCONCLUSIVE.
/// Directed edges are rejected when `B` has several columns.
pub fn analyze_mimo(
    m: &SubsystemModel,
    g: &NetworkGraph,
    d: &DrivenSet,
    tol: &ToleranceConfig,
    source: RandomSource,
) -> Result<AnalysisReport> {
    if m.is_simo() {
        return analyze_simo(m, g, d, tol);
    }
    m.validate()?;
    tol.validate()?;
    check_driven(g, d)?;
    if g.has_directed_edges() {
        return Err(Error::Premise(
            "matrix-weighted analysis covers undirected graphs only; use a single-input subsystem for directed edges"
                .into(),
        ));
    }
    let ctrl = check_controllable(m, tol)?;
    let ctrl_cond = Condition::new(
        COND_CONTROLLABLE,
        ctrl.holds,
        Some(Witness::DeficientEigenvalues {
            eigenvalues: ctrl.deficient,
        }),
    );
    if d.len() == g.num_vertices() {
        let verdict = if ctrl_cond.holds {
            Verdict::StructurallyControllable
        } else {
            Verdict::Not
        };
        return Ok(report(
            verdict,
            TheoremUsed::AllDriven,
            vec![ctrl_cond],
            tol,
        ));
    }

    let fm = fixed_modes(m, source.substream(FIXED_MODE_STREAM), tol)?;
    let reach = reachability(g, d);
    let verdict = match (ctrl_cond.holds, reach.holds, fm.has_fixed_modes()) {
        (false, _, _) | (_, false, _) => Verdict::Not,
        (true, true, false) => Verdict::StructurallyControllable,
        (true, true, true) => Verdict::Inconclusive,
    };
    let mut notes = Vec::new();
    if !fm.method_agreement {
        notes
            .push("randomized fixed-mode cross-check disagrees with the rank-based set".to_owned());
    }
    let conditions = vec![
        ctrl_cond,
        Condition::new(
            COND_NO_FIXED_MODES,
            !fm.has_fixed_modes(),
            Some(Witness::FixedModes {
                modes: fm.fixed_modes,
            }),
        ),
        reach,
    ];
    let mut out = report(verdict, TheoremUsed::MatrixWeighted, conditions, tol);
    out.notes = notes;
    Ok(out)
}

/// Dispatches on the input count and attaches Monte Carlo evidence to
/// inconclusive verdicts.
pub fn analyze(
    m: &SubsystemModel,
    g: &NetworkGraph,
    d: &DrivenSet,
    opts: &AnalysisOptions,
) -> Result<AnalysisReport> {
    let mut out = analyze_mimo(m, g, d, &opts.tol, opts.source)?;
    if out.verdict == Verdict::Inconclusive {
        out.certification = Some(certify_monte_carlo(
            m,
            g,
            d,
            opts.trials,
            opts.source,
            &opts.tol,
        )?);
    }
    Ok(out)
}

/// Scalar-weight reduction: with `L_1 = ... = L_r` the network behaves
/// like a single-output one with `C' = c_1 + ... + c_r`.
///
/// The result may have a zero output row, so it is returned unvalidated.
pub fn reduce_scalar_weight(m: &SubsystemModel) -> Result<SubsystemModel> {
    m.validate()?;
    if !m.is_simo() {
        return Err(Error::Dimension(
            "scalar-weight reduction needs a single input column".into(),
        ));
    }
    let summed = crate::numerics::Mat::from_fn(1, m.state_dim(), |_, j| m.c.column(j).sum());
    Ok(SubsystemModel::unchecked(m.a.clone(), m.b.clone(), summed))
}

/// Verdict for the same network when every channel shares one scalar weight
/// per edge.
pub fn analyze_scalar_constrained(
    m: &SubsystemModel,
    g: &NetworkGraph,
    d: &DrivenSet,
    tol: &ToleranceConfig,
) -> Result<AnalysisReport> {
    let reduced = reduce_scalar_weight(m)?;
    let scale = m.c.iter().fold(0.0_f64, |s, x| s.max(x.abs()));
    let degenerate = reduced
        .c
        .iter()
        .all(|x| x.abs() <= tol.rank_rel_tol * scale);
    if !degenerate {
        let mut out = analyze_simo(&reduced, g, d, tol)?;
        out.notes
            .push("scalar weights on every channel; analyzed with the summed output row".into());
        return Ok(out);
    }
    // Without coupling the lumped system is block diagonal, so only the
    // driven blocks can be steered.
    check_driven(g, d)?;
    let ctrl = check_controllable(m, tol)?;
    let mut conditions = vec![Condition::new(
        COND_CONTROLLABLE,
        ctrl.holds,
        Some(Witness::DeficientEigenvalues {
            eigenvalues: ctrl.deficient,
        }),
    )];
    let all_driven = d.len() == g.num_vertices();
    if !all_driven {
        conditions.push(Condition::new(
            COND_COUPLING,
            false,
            Some(Witness::ZeroCoupling {
                reduced_output: reduced.c.iter().copied().collect(),
            }),
        ));
    }
    let verdict = if conditions.iter().all(|c| c.holds) {
        Verdict::StructurallyControllable
    } else {
        Verdict::Not
    };
    let theorem = if all_driven {
        TheoremUsed::AllDriven
    } else if g.has_directed_edges() {
        TheoremUsed::SemiSymmetricSimo
    } else {
        TheoremUsed::UndirectedSimo
    };
    let mut out = report(verdict, theorem, conditions, tol);
    out.notes
        .push("scalar weights on every channel cancel to no coupling".into());
    Ok(out)
}
