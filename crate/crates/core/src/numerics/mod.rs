//! Dense matrix utilities shared by every other module.
//!
//! Real matrices are plain [`nalgebra::DMatrix<f64>`]; complex ones are used
//! internally for PBH tests because the spectrum of a real matrix may be
//! complex. All rank decisions go through [`numerical_rank`] with a relative
//! singular-value cutoff taken from [`ToleranceConfig`].

mod linalg;
mod pbh;
mod random;

pub use linalg::{
    cluster_eigenvalues, cluster_members, commutation_matrix, controllability_matrix, eigenvalues,
    generic_rank, hcat, identity, kron, numerical_rank, ones, unit_vector, vcat, EigenCluster,
    Permutation,
};
pub use pbh::{pbh_controllable, pbh_observable, pbh_rank, PbhOutcome};
pub use random::{nonzero_uniform, RandomSource};

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Real dense matrix.
pub type Mat = DMatrix<f64>;
/// Complex dense matrix.
pub type CMat = DMatrix<Complex64>;

/// Default relative singular-value cutoff for rank decisions.
pub const DEFAULT_RANK_REL_TOL: f64 = 1e-9;
/// Default absolute radius used to cluster nearby eigenvalues.
pub const DEFAULT_EIG_MATCH_TOL: f64 = 1e-7;

/// Numerical tolerances applied wherever an exact-arithmetic rank or
/// spectrum statement has to be decided in floating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Singular values at or below `rank_rel_tol * sigma_max` count as zero.
    pub rank_rel_tol: f64,
    /// Eigenvalues closer than this are treated as one.
    pub eig_match_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rank_rel_tol: DEFAULT_RANK_REL_TOL,
            eig_match_tol: DEFAULT_EIG_MATCH_TOL,
        }
    }
}

impl ToleranceConfig {
    pub fn new(rank_rel_tol: f64, eig_match_tol: f64) -> Result<Self> {
        let cfg = Self {
            rank_rel_tol,
            eig_match_tol,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_rank_tol(rank_rel_tol: f64) -> Result<Self> {
        Self::new(rank_rel_tol, DEFAULT_EIG_MATCH_TOL)
    }

    pub fn validate(&self) -> Result<()> {
        let ok_rank =
            self.rank_rel_tol.is_finite() && self.rank_rel_tol > 0.0 && self.rank_rel_tol < 1.0;
        let ok_eig = self.eig_match_tol.is_finite() && self.eig_match_tol > 0.0;
        if !ok_rank {
            return Err(Error::Config(format!(
                "rank_rel_tol must lie in (0, 1), got {}",
                self.rank_rel_tol
            )));
        }
        if !ok_eig {
            return Err(Error::Config(format!(
                "eig_match_tol must be positive, got {}",
                self.eig_match_tol
            )));
        }
        Ok(())
    }
}

/// Checks that every entry is finite.
pub fn all_finite(m: &Mat) -> bool {
    m.iter().all(|x| x.is_finite())
}

/// Builds a matrix from row vectors, rejecting ragged input.
pub fn mat_from_rows(rows: &[Vec<f64>]) -> Result<Mat> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Dimension("ragged matrix rows".into()));
    }
    Ok(Mat::from_fn(nrows, ncols, |i, j| rows[i][j]))
}

/// Row-major nested vectors, the layout used by every JSON file.
pub fn mat_to_rows(m: &Mat) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

pub fn to_complex(m: &Mat) -> CMat {
    m.map(|x| Complex64::new(x, 0.0))
}
