//! Node-level dynamics `x' = A x + B v`, `y = C x`, shared by every
//! subsystem of the network.

use crate::error::{Error, Result};
use crate::numerics::{
    all_finite, cluster_eigenvalues, cluster_members, eigenvalues, pbh_controllable,
    pbh_observable, pbh_rank, EigenCluster, Mat, PbhOutcome, RandomSource, ToleranceConfig,
};
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;
use std::fmt;

/// Number of random output-feedback gains used by the fixed-mode cross-check.
pub const FIXED_MODE_SAMPLES: usize = 4;

/// The triple `(A, B, C)`. `B` has a single column for SIMO subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsystemModel {
    pub a: Mat,
    pub b: Mat,
    pub c: Mat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotSquare { rows: usize, cols: usize },
    InputRows { expected: usize, found: usize },
    OutputCols { expected: usize, found: usize },
    Empty { matrix: &'static str },
    NonFinite { matrix: &'static str },
    ZeroOutputChannel { row: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSquare { rows, cols } => write!(f, "A must be square, got {rows}x{cols}"),
            Violation::InputRows { expected, found } => {
                write!(f, "B must have {expected} rows, got {found}")
            }
            Violation::OutputCols { expected, found } => {
                write!(f, "C must have {expected} columns, got {found}")
            }
            Violation::Empty { matrix } => write!(f, "{matrix} is empty"),
            Violation::NonFinite { matrix } => write!(f, "{matrix} has non-finite entries"),
            Violation::ZeroOutputChannel { row } => {
                write!(f, "zero output channel: row {} of C", row + 1)
            }
        }
    }
}

/// Lists every structural problem with the triple; empty means valid.
pub fn validate_model(m: &SubsystemModel) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = m.a.nrows();
    for (name, mat) in [("A", &m.a), ("B", &m.b), ("C", &m.c)] {
        if mat.is_empty() {
            out.push(Violation::Empty { matrix: name });
        } else if !all_finite(mat) {
            out.push(Violation::NonFinite { matrix: name });
        }
    }
    if m.a.ncols() != n {
        out.push(Violation::NotSquare {
            rows: n,
            cols: m.a.ncols(),
        });
    }
    if m.b.nrows() != n {
        out.push(Violation::InputRows {
            expected: n,
            found: m.b.nrows(),
        });
    }
    if m.c.ncols() != n {
        out.push(Violation::OutputCols {
            expected: n,
            found: m.c.ncols(),
        });
    }
    for (row, r) in m.c.row_iter().enumerate() {
        if r.iter().all(|&x| x == 0.0) {
            out.push(Violation::ZeroOutputChannel { row });
        }
    }
    out
}

impl SubsystemModel {
    /// Validated constructor.
    pub fn new(a: Mat, b: Mat, c: Mat) -> Result<Self> {
        let m = Self::unchecked(a, b, c);
        m.validate()?;
        Ok(m)
    }

    pub fn unchecked(a: Mat, b: Mat, c: Mat) -> Self {
        Self { a, b, c }
    }

    pub fn validate(&self) -> Result<()> {
        let v = validate_model(self);
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Model(v.iter().map(ToString::to_string).collect()))
        }
    }

    pub fn state_dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn input_dim(&self) -> usize {
        self.b.ncols()
    }

    pub fn output_dim(&self) -> usize {
        self.c.nrows()
    }

    pub fn is_simo(&self) -> bool {
        self.b.ncols() == 1
    }

    /// Output row `c_k` (0-based) as a `1 x n` matrix.
    pub fn output_row(&self, k: usize) -> Mat {
        self.c.rows(k, 1).into_owned()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::unchecked(&self.a * s, &self.b * s, &self.c * s)
    }
}

pub fn check_controllable(m: &SubsystemModel, tol: &ToleranceConfig) -> Result<PbhOutcome> {
    pbh_controllable(&m.a, &m.b, tol)
}

pub fn check_observable(m: &SubsystemModel, tol: &ToleranceConfig) -> Result<PbhOutcome> {
    pbh_observable(&m.a, &m.c, tol)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedModeReport {
    /// Uncontrollable or unobservable eigenvalue clusters of `A`; this set is
    /// authoritative.
    pub fixed_modes: Vec<EigenCluster>,
    /// Clusters of `A` that survived every random output feedback.
    pub persistent_modes: Vec<EigenCluster>,
    pub method_agreement: bool,
}

impl FixedModeReport {
    pub fn has_fixed_modes(&self) -> bool {
        !self.fixed_modes.is_empty()
    }
}

/// Fixed modes of `(A, B, C)` under unstructured static output feedback.
///
/// The deterministic set collects eigenvalues of `A` at which either
/// `[lambda I - A, B]` or `[lambda I - A^T, C^T]` loses rank. The
/// cross-check draws [`FIXED_MODE_SAMPLES`] gains `F` with entries uniform
/// on `[-1, 1]` and keeps eigenvalues of `A` that stay in
/// `sigma(A + B F C)` every time (greedy nearest matching within
/// `eig_match_tol`).
pub fn fixed_modes(
    m: &SubsystemModel,
    source: RandomSource,
    tol: &ToleranceConfig,
) -> Result<FixedModeReport> {
    m.validate()?;
    let n = m.state_dim();
    let eigs = eigenvalues(&m.a)?;
    let members = cluster_members(&eigs, tol.eig_match_tol);
    let clusters = cluster_eigenvalues(&eigs, tol.eig_match_tol);

    let at = m.a.transpose();
    let ct = m.c.transpose();
    let mut fixed = Vec::new();
    for cl in &clusters {
        let uncontrollable = pbh_rank(&m.a, &m.b, cl.value, tol)? < n;
        let unobservable = pbh_rank(&at, &ct, cl.value, tol)? < n;
        if uncontrollable || unobservable {
            fixed.push(*cl);
        }
    }

    let mut persists = vec![true; eigs.len()];
    for k in 0..FIXED_MODE_SAMPLES {
        let mut rng = source.substream(k as u64).rng();
        let f = Mat::from_fn(m.input_dim(), m.output_dim(), |_, _| {
            rng.random_range(-1.0..=1.0)
        });
        let closed = &m.a + &m.b * f * &m.c;
        let matched = greedy_match(&eigs, &eigenvalues(&closed)?, tol.eig_match_tol);
        for (p, hit) in persists.iter_mut().zip(matched) {
            *p &= hit;
        }
    }
    let persistent: Vec<EigenCluster> = clusters
        .iter()
        .zip(&members)
        .filter(|(_, idx)| idx.iter().any(|&i| persists[i]))
        .map(|(cl, _)| *cl)
        .collect();

    let method_agreement = persistent == fixed;
    Ok(FixedModeReport {
        fixed_modes: fixed,
        persistent_modes: persistent,
        method_agreement,
    })
}

/// For each entry of `from`, whether it was paired with an entry of `to`
/// within `radius`, pairing closest candidates first.
fn greedy_match(from: &[Complex64], to: &[Complex64], radius: f64) -> Vec<bool> {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, a) in from.iter().enumerate() {
        for (j, b) in to.iter().enumerate() {
            let d = (a - b).norm();
            if d <= radius {
                pairs.push((d, i, j));
            }
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut used_from = vec![false; from.len()];
    let mut used_to = vec![false; to.len()];
    for (_, i, j) in pairs {
        if !used_from[i] && !used_to[j] {
            used_from[i] = true;
            used_to[j] = true;
        }
    }
    used_from
}
