use super::problem::{Problem, ProblemFile};
use super::report::*;
use crate::assembly::{assemble_lumped, sample_weights, LumpedSystem};
use crate::error::Error;
use crate::numerics::{mat_to_rows, RandomSource, ToleranceConfig};
use crate::topology::{
    incidence_matrices, input_reachable_set, spanning_forest, unreachable_set, ForestOutcome,
    OrientationPolicy,
};
use crate::verdict::{
    analyze, analyze_mimo, certify_lumped, AnalysisOptions, AnalysisReport, CertificationReport,
    Verdict, CERTIFY_WEIGHT_RANGE,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Exit code for unreadable or invalid input.
pub const EXIT_INPUT: i32 = 64;
/// Exit code for an internal numerical failure.
pub const EXIT_SOFTWARE: i32 = 70;
/// Exit code when certification contradicts the verdict.
pub const EXIT_DISAGREE: i32 = 3;

pub const SEED_ENV: &str = "DIFFNET_SEED";
pub const DEFAULT_TRIALS: usize = 5;

#[derive(Debug, Parser)]
#[command(
    name = "diffnet",
    version,
    about = "Structural controllability of diffusively coupled networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct CommonFlags {
    /// Write the output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Random seed; falls back to the file's options, then DIFFNET_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Monte Carlo trials.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Relative singular-value cutoff for rank decisions.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Apply the file's grounding term (the wall coupling of mass 1).
    #[arg(long)]
    pub ground_first_mass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    MassSpring,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide structural controllability of a problem file.
    Analyze {
        path: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Check the verdict against PBH tests on sampled weights.
    Certify {
        path: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Emit the lumped pair (A_sys, B_sys).
    Lump {
        path: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Write a ready-made problem file.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        /// Number of subsystems.
        #[arg(long = "N", default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        /// Spring constants k_1..k_N, comma separated (default all 1).
        #[arg(long, value_delimiter = ',')]
        springs: Option<Vec<f64>>,
        /// Damper constants mu_1..mu_N, comma separated (default all 1).
        #[arg(long, value_delimiter = ',')]
        dampers: Option<Vec<f64>>,
        /// Driven masses, 1-based.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        driven: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reachability, spanning forest and incidence orientation of a problem.
    Graph {
        path: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
}

/// A failed command: message for stderr plus exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Numeric { .. } | Error::Consistency(_) => EXIT_SOFTWARE,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => EXIT_INPUT,
            }
        }
    }
}

pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Analyze { path, flags } => cmd_analyze(&path, &flags),
        Command::Certify { path, flags } => cmd_certify(&path, &flags),
        Command::Lump { path, flags } => cmd_lump(&path, &flags),
        Command::Example {
            name,
            n,
            mass,
            springs,
            dampers,
            driven,
            out,
        } => cmd_example(name, n, mass, springs, dampers, driven, out.as_deref()),
        Command::Graph { path, flags } => cmd_graph(&path, &flags),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            eprintln!("diffnet: {}", f.message);
            f.code
        }
    }
}

struct Loaded {
    bytes: Vec<u8>,
    problem: Problem,
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    let bytes =
        std::fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let file: ProblemFile = serde_json::from_slice(&bytes).map_err(|e| {
        Failure::input(format!(
            "{}:{}:{}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })?;
    let problem = file
        .to_problem()
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(Loaded { bytes, problem })
}

struct Settings {
    seed: u64,
    trials: usize,
    tol: ToleranceConfig,
}

fn settings(flags: &CommonFlags, p: &Problem) -> Result<Settings, Failure> {
    let seed = match flags.seed.or(p.options.seed) {
        Some(s) => s,
        None => match std::env::var(SEED_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| {
                Failure::input(format!("{SEED_ENV} must be an unsigned integer, got {v:?}"))
            })?,
            Err(_) => 0,
        },
    };
    let trials = flags.trials.or(p.options.trials).unwrap_or(DEFAULT_TRIALS);
    if trials == 0 {
        return Err(Failure::input("trials must be at least 1"));
    }
    let tol = match flags.tol.or(p.options.rank_rel_tol) {
        Some(t) => ToleranceConfig::with_rank_tol(t)?,
        None => ToleranceConfig::default(),
    };
    Ok(Settings { seed, trials, tol })
}

fn grounding(
    flags: &CommonFlags,
    p: &Problem,
) -> Result<Option<(usize, crate::numerics::Mat)>, Failure> {
    if !flags.ground_first_mass {
        return Ok(None);
    }
    p.grounding.clone().map(Some).ok_or_else(|| {
        Failure::input("--ground-first-mass needs a \"grounding\" member in the problem file")
    })
}

/// Writes to `out` via a temporary sibling and a rename, or to stdout.
fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            let mut tmp = path.as_os_str().to_owned();
            tmp.push(format!(".tmp{}", std::process::id()));
            let tmp = PathBuf::from(tmp);
            std::fs::write(&tmp, text)
                .and_then(|_| std::fs::rename(&tmp, path))
                .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn build_trial(
    p: &Problem,
    ground: &Option<(usize, crate::numerics::Mat)>,
    s: RandomSource,
) -> crate::Result<LumpedSystem> {
    let shape = (p.model.input_dim(), p.model.output_dim());
    let w = sample_weights(&p.graph, shape, s, CERTIFY_WEIGHT_RANGE)?;
    let mut sys = assemble_lumped(&p.model, &p.graph, &w, &p.driven)?;
    sys.scale_inputs(p.input_gain);
    if let Some((v, term)) = ground {
        sys.add_local_term(*v, term)?;
    }
    Ok(sys)
}

fn certify_problem(
    p: &Problem,
    st: &Settings,
    ground: &Option<(usize, crate::numerics::Mat)>,
    verdict: Verdict,
) -> Result<CertificationReport, Failure> {
    Ok(certify_lumped(
        st.trials,
        RandomSource::new(st.seed),
        &st.tol,
        verdict,
        |s| build_trial(p, ground, s),
    )?)
}

pub fn render_analysis(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "verdict: {}", r.verdict);
    let _ = writeln!(s, "criterion: {}", r.theorem_used);
    for c in &r.conditions {
        match (&c.witness, c.holds) {
            (_, true) => {
                let _ = writeln!(s, "  {}: holds", c.name);
            }
            (Some(w), false) => {
                let _ = writeln!(s, "  {}: fails ({w})", c.name);
            }
            (None, false) => {
                let _ = writeln!(s, "  {}: fails", c.name);
            }
        }
    }
    if let Some(cert) = &r.certification {
        s.push_str(&render_certification(cert));
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

pub fn render_certification(c: &CertificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "certification: {}/{} trials controllable (seed {}), {} verdict {}",
        c.controllable_trials,
        c.trials,
        c.seed,
        if c.agree_with_verdict {
            "agrees with"
        } else {
            "DISAGREES with"
        },
        c.verdict
    );
    for t in &c.per_trial {
        let _ = write!(
            s,
            "  trial {} (stream {}): {}, {} deficient eigenvalues",
            t.index + 1,
            t.stream,
            if t.controllable {
                "controllable"
            } else {
                "uncontrollable"
            },
            t.deficient_count
        );
        if let Some(e) = &t.error {
            let _ = write!(s, ", error: {e}");
        }
        s.push('\n');
    }
    s
}

pub fn cmd_analyze(path: &Path, flags: &CommonFlags) -> CmdResult {
    let Loaded { bytes, problem: p } = load(path)?;
    let st = settings(flags, &p)?;
    let ground = grounding(flags, &p)?;
    let opts = AnalysisOptions {
        tol: st.tol,
        source: RandomSource::new(st.seed),
        trials: st.trials,
    };
    let report = analyze(&p.model, &p.graph, &p.driven, &opts)?;
    let grounded = match &ground {
        Some((v, _)) => Some(GroundedEvidence {
            vertex: v + 1,
            certification: certify_problem(&p, &st, &ground, report.verdict)?,
        }),
        None => None,
    };
    let code = report.verdict.exit_code();
    let text = match flags.format {
        Format::Json => to_json(&AnalysisReportFile {
            envelope: Envelope::new(ANALYSIS_SCHEMA, &bytes, st.seed),
            report,
            grounded,
        }),
        Format::Text => {
            let mut s = render_analysis(&report);
            if let Some(g) = grounded {
                let _ = writeln!(s, "grounded at vertex {}:", g.vertex);
                s.push_str(&render_certification(&g.certification));
            }
            s
        }
    };
    emit(&text, flags.out.as_deref())?;
    Ok(code)
}

pub fn cmd_certify(path: &Path, flags: &CommonFlags) -> CmdResult {
    let Loaded { bytes, problem: p } = load(path)?;
    let st = settings(flags, &p)?;
    let ground = grounding(flags, &p)?;
    let verdict = analyze_mimo(
        &p.model,
        &p.graph,
        &p.driven,
        &st.tol,
        RandomSource::new(st.seed),
    )?
    .verdict;
    let report = certify_problem(&p, &st, &ground, verdict)?;
    let code = report.exit_code();
    let text = match flags.format {
        Format::Json => to_json(&CertificationReportFile {
            envelope: Envelope::new(CERTIFICATION_SCHEMA, &bytes, st.seed),
            grounded: ground.is_some(),
            report,
        }),
        Format::Text => render_certification(&report),
    };
    emit(&text, flags.out.as_deref())?;
    Ok(code)
}

pub fn cmd_lump(path: &Path, flags: &CommonFlags) -> CmdResult {
    let Loaded { bytes, problem: p } = load(path)?;
    let st = settings(flags, &p)?;
    let ground = grounding(flags, &p)?;
    let (weights, sampled) = match &p.weights {
        Some(w) => (w.clone(), false),
        None => (
            sample_weights(
                &p.graph,
                (p.model.input_dim(), p.model.output_dim()),
                RandomSource::new(st.seed),
                CERTIFY_WEIGHT_RANGE,
            )?,
            true,
        ),
    };
    let mut sys = assemble_lumped(&p.model, &p.graph, &weights, &p.driven)?;
    sys.scale_inputs(p.input_gain);
    if let Some((v, term)) = &ground {
        sys.add_local_term(*v, term)?;
    }
    let file = LumpedFile {
        envelope: Envelope::new(LUMPED_SCHEMA, &bytes, st.seed),
        weights_sampled: sampled,
        grounded: ground.is_some(),
        input_gain: p.input_gain,
        weights: weights
            .records(&p.graph)
            .into_iter()
            .map(|r| WeightEntry {
                u: r.u,
                v: r.v,
                w: r.w,
            })
            .collect(),
        a_sys: mat_to_rows(&sys.a_sys),
        b_sys: mat_to_rows(&sys.b_sys),
    };
    let text = match flags.format {
        Format::Json => to_json(&file),
        Format::Text => format!("A_sys ={}B_sys ={}", sys.a_sys, sys.b_sys),
    };
    emit(&text, flags.out.as_deref())?;
    Ok(0)
}

pub fn cmd_example(
    _name: ExampleName,
    n: usize,
    mass: f64,
    springs: Option<Vec<f64>>,
    dampers: Option<Vec<f64>>,
    driven: Vec<usize>,
    out: Option<&Path>,
) -> CmdResult {
    if n == 0 {
        return Err(Failure::input("--N must be at least 1"));
    }
    let springs = springs.unwrap_or_else(|| vec![1.0; n]);
    let dampers = dampers.unwrap_or_else(|| vec![1.0; n]);
    let mut file = ProblemFile::mass_spring(n, mass, &springs, &dampers)?;
    file.driven = driven;
    file.to_problem()?;
    emit(&to_json(&file), out)?;
    Ok(0)
}

pub fn cmd_graph(path: &Path, flags: &CommonFlags) -> CmdResult {
    let Loaded { bytes, problem: p } = load(path)?;
    let st = settings(flags, &p)?;
    let (g, d) = (&p.graph, &p.driven);
    let forest = match spanning_forest(g, d) {
        ForestOutcome::Spanning(f) => Some(
            f.order
                .iter()
                .filter_map(|&v| {
                    f.parent[v].map(|par| ForestLink {
                        vertex: v + 1,
                        parent: par + 1,
                    })
                })
                .collect::<Vec<_>>(),
        ),
        ForestOutcome::Unreachable(_) => None,
    };
    let policy = OrientationPolicy::default();
    let inc = incidence_matrices(g, policy);
    let edges: Vec<OrientationRecord> = inc
        .edge_order
        .iter()
        .map(|o| {
            let e = g.edges()[o.edge];
            OrientationRecord {
                u: e.u + 1,
                v: e.v + 1,
                kind: o.kind,
                start: o.start + 1,
                end: o.end + 1,
                k_rule: o.rule,
            }
        })
        .collect();
    let unreachable = unreachable_set(g, d);
    let file = GraphReportFile {
        envelope: Envelope::new(GRAPH_SCHEMA, &bytes, st.seed),
        globally_input_reachable: unreachable.is_empty(),
        driven: d.to_vertex_set(),
        reachable: input_reachable_set(g, d),
        unreachable,
        forest,
        orientation: policy,
        edges,
    };
    let text = match flags.format {
        Format::Json => to_json(&file),
        Format::Text => {
            let mut s = String::new();
            let yes = if file.globally_input_reachable {
                "yes"
            } else {
                "no"
            };
            let _ = writeln!(s, "globally input-reachable: {yes}");
            let _ = writeln!(s, "driven: {}", file.driven);
            let _ = writeln!(s, "reachable: {}", file.reachable);
            match &file.forest {
                Some(links) => {
                    let parts: Vec<String> = links
                        .iter()
                        .map(|l| format!("{} <- {}", l.vertex, l.parent))
                        .collect();
                    let _ = writeln!(s, "forest: {}", parts.join(", "));
                }
                None => {
                    let _ = writeln!(s, "unreachable: {}", file.unreachable);
                }
            }
            for e in &file.edges {
                let _ = writeln!(
                    s,
                    "edge {} {} {}: oriented {} -> {}, K column {:?}",
                    e.u,
                    if e.kind == crate::topology::EdgeKind::Directed {
                        "->"
                    } else {
                        "--"
                    },
                    e.v,
                    e.start,
                    e.end,
                    e.k_rule
                );
            }
            s
        }
    };
    emit(&text, flags.out.as_deref())?;
    Ok(0)
}
