use super::{
    cluster_eigenvalues, eigenvalues, numerical_rank, CMat, EigenCluster, Mat, ToleranceConfig,
};
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Result of a PBH rank test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PbhOutcome {
    pub holds: bool,
    /// Eigenvalue clusters at which the rank test failed.
    pub deficient: Vec<EigenCluster>,
}

impl PbhOutcome {
    /// Failing eigenvalues counted with algebraic multiplicity.
    pub fn deficient_count(&self) -> usize {
        self.deficient.iter().map(|c| c.multiplicity).sum()
    }

    pub fn deficient_values(&self) -> Vec<Complex64> {
        self.deficient.iter().map(|c| c.value).collect()
    }
}

/// `(A, B)` is controllable iff `rank [lambda I - A, B] = n` at every
/// eigenvalue `lambda` of `A`.
///
/// Eigenvalues are clustered within `eig_match_tol` and each cluster is
/// tested once at its mean.
pub fn pbh_controllable(a: &Mat, b: &Mat, tol: &ToleranceConfig) -> Result<PbhOutcome> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::Dimension(format!(
            "PBH: A must be square, got {}x{}",
            n,
            a.ncols()
        )));
    }
    if b.nrows() != n {
        return Err(Error::Dimension(format!(
            "PBH: B has {} rows, A has {}",
            b.nrows(),
            n
        )));
    }
    if n == 0 {
        return Ok(PbhOutcome {
            holds: true,
            deficient: Vec::new(),
        });
    }
    let clusters = cluster_eigenvalues(&eigenvalues(a)?, tol.eig_match_tol);
    let mut deficient = Vec::new();
    for cluster in clusters {
        if pbh_rank(a, b, cluster.value, tol)? < n {
            deficient.push(cluster);
        }
    }
    Ok(PbhOutcome {
        holds: deficient.is_empty(),
        deficient,
    })
}

/// Numerical rank of the pencil `[lambda I - A, B]`.
pub fn pbh_rank(a: &Mat, b: &Mat, lambda: Complex64, tol: &ToleranceConfig) -> Result<usize> {
    let n = a.nrows();
    let m = b.ncols();
    let pencil = CMat::from_fn(n, n + m, |i, j| {
        if j < n {
            let d = if i == j {
                lambda
            } else {
                Complex64::new(0.0, 0.0)
            };
            d - Complex64::new(a[(i, j)], 0.0)
        } else {
            Complex64::new(b[(i, j - n)], 0.0)
        }
    });
    numerical_rank(&pencil, tol)
}

/// Dual of [`pbh_controllable`]: `(A, C)` is observable iff `(A^T, C^T)` is
/// controllable.
pub fn pbh_observable(a: &Mat, c: &Mat, tol: &ToleranceConfig) -> Result<PbhOutcome> {
    if c.ncols() != a.ncols() {
        return Err(Error::Dimension(format!(
            "PBH: C has {} columns, A has {}",
            c.ncols(),
            a.ncols()
        )));
    }
    pbh_controllable(&a.transpose(), &c.transpose(), tol)
}
