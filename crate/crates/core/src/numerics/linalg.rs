use super::{Mat, RandomSource, ToleranceConfig};
use crate::error::{Error, Result};
use nalgebra::{ComplexField, DMatrix, Schur};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

const MAX_SWEEPS: usize = 10_000;
const SIMILARITY_RETRIES: u64 = 4;
const SIMILARITY_SEED: u64 = 0x5EED;

/// Kronecker product `A (x) B`.
pub fn kron<T>(a: &DMatrix<T>, b: &DMatrix<T>) -> DMatrix<T>
where
    T: nalgebra::Scalar + Copy + std::ops::Mul<Output = T>,
{
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    DMatrix::from_fn(ar * br, ac * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

pub fn identity(n: usize) -> Mat {
    Mat::identity(n, n)
}

pub fn ones(rows: usize, cols: usize) -> Mat {
    Mat::from_element(rows, cols, 1.0)
}

/// `i`-th column of `I_n` (0-based).
pub fn unit_vector(n: usize, i: usize) -> Mat {
    let mut e = Mat::zeros(n, 1);
    e[(i, 0)] = 1.0;
    e
}

/// Horizontal concatenation `[A, B]`.
pub fn hcat<T: nalgebra::Scalar + Copy>(a: &DMatrix<T>, b: &DMatrix<T>) -> Result<DMatrix<T>> {
    if a.nrows() != b.nrows() {
        return Err(Error::Dimension(format!(
            "hcat: {} rows vs {} rows",
            a.nrows(),
            b.nrows()
        )));
    }
    let ac = a.ncols();
    Ok(DMatrix::from_fn(a.nrows(), ac + b.ncols(), |i, j| {
        if j < ac {
            a[(i, j)]
        } else {
            b[(i, j - ac)]
        }
    }))
}

/// Vertical concatenation `[A; B]`.
pub fn vcat<T: nalgebra::Scalar + Copy>(a: &DMatrix<T>, b: &DMatrix<T>) -> Result<DMatrix<T>> {
    if a.ncols() != b.ncols() {
        return Err(Error::Dimension(format!(
            "vcat: {} cols vs {} cols",
            a.ncols(),
            b.ncols()
        )));
    }
    let ar = a.nrows();
    Ok(DMatrix::from_fn(ar + b.nrows(), a.ncols(), |i, j| {
        if i < ar {
            a[(i, j)]
        } else {
            b[(i - ar, j)]
        }
    }))
}

/// A permutation stored as an index map: column `j` of the dense form has
/// its single one in row `map[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn from_map(map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &i in &map {
            if i >= map.len() || seen[i] {
                return Err(Error::Dimension("index map is not a permutation".into()));
            }
            seen[i] = true;
        }
        Ok(Self { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn to_dense(&self) -> Mat {
        let n = self.map.len();
        let mut p = Mat::zeros(n, n);
        for (j, &i) in self.map.iter().enumerate() {
            p[(i, j)] = 1.0;
        }
        p
    }

    /// `P^T M`, computed by row gathering.
    pub fn transpose_mul(&self, m: &Mat) -> Mat {
        Mat::from_fn(self.len(), m.ncols(), |j, c| m[(self.map[j], c)])
    }

    /// `M P`, computed by column gathering.
    pub fn rmul(&self, m: &Mat) -> Mat {
        Mat::from_fn(m.nrows(), self.len(), |r, j| m[(r, self.map[j])])
    }
}

/// Commutation permutation `P(m, p)` of size `mp x mp`.
///
/// For every `A` (`m x n`) and `B` (`p x r`):
/// `P(m, p)^T (A (x) B) P(n, r) = B (x) A`.
pub fn commutation_matrix(m: usize, p: usize) -> Permutation {
    // Column k*m + i of P(m,p) carries its one in row i*p + k.
    let mut map = vec![0; m * p];
    for i in 0..m {
        for k in 0..p {
            map[k * m + i] = i * p + k;
        }
    }
    Permutation { map }
}

/// Number of singular values strictly above `rank_rel_tol * sigma_max`.
pub fn numerical_rank<T>(m: &DMatrix<T>, tol: &ToleranceConfig) -> Result<usize>
where
    T: ComplexField<RealField = f64>,
{
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return Err(Error::Dimension("rank of an empty matrix".into()));
    }
    let svd = m
        .clone()
        .try_svd(false, false, f64::EPSILON, MAX_SWEEPS)
        .ok_or(Error::Numeric {
            op: "svd",
            rows,
            cols,
        })?;
    let sv = svd.singular_values;
    let smax = sv.iter().cloned().fold(0.0_f64, f64::max);
    if smax == 0.0 {
        return Ok(0);
    }
    let cutoff = tol.rank_rel_tol * smax;
    Ok(sv.iter().filter(|&&s| s > cutoff).count())
}

/// Eigenvalues with multiplicity, via a real Schur decomposition.
pub fn eigenvalues(a: &Mat) -> Result<Vec<Complex64>> {
    let (rows, cols) = a.shape();
    if rows != cols {
        return Err(Error::Dimension(format!(
            "eigenvalues of a non-square {rows}x{cols} matrix"
        )));
    }
    if rows == 0 {
        return Ok(Vec::new());
    }
    if let Some(schur) = Schur::try_new(a.clone(), f64::EPSILON, MAX_SWEEPS) {
        return Ok(schur.complex_eigenvalues().iter().copied().collect());
    }
    // The unshifted-restart QR iteration can stall on structured matrices
    // with defective eigenvalues. An orthogonal similarity keeps the
    // spectrum and breaks the structure.
    for attempt in 0..SIMILARITY_RETRIES {
        let mut rng = RandomSource::new(SIMILARITY_SEED)
            .with_stream(attempt)
            .rng();
        let q = Mat::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0))
            .qr()
            .q();
        let rotated = q.transpose() * a * &q;
        if let Some(schur) = Schur::try_new(rotated, f64::EPSILON, MAX_SWEEPS) {
            return Ok(schur.complex_eigenvalues().iter().copied().collect());
        }
    }
    Err(Error::Numeric {
        op: "schur",
        rows,
        cols,
    })
}

/// A group of numerically coincident eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenCluster {
    /// Mean of the members; better conditioned than any single member when
    /// the cluster stems from a defective eigenvalue.
    pub value: Complex64,
    pub multiplicity: usize,
}

/// Single-linkage clustering with radius `radius`, sorted by real then
/// imaginary part.
pub fn cluster_eigenvalues(eigs: &[Complex64], radius: f64) -> Vec<EigenCluster> {
    cluster_members(eigs, radius)
        .into_iter()
        .map(|members| EigenCluster {
            value: members.iter().map(|&i| eigs[i]).sum::<Complex64>() / members.len() as f64,
            multiplicity: members.len(),
        })
        .collect()
}

/// Index groups behind [`cluster_eigenvalues`], in the same order.
pub fn cluster_members(eigs: &[Complex64], radius: f64) -> Vec<Vec<usize>> {
    let n = eigs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (eigs[i] - eigs[j]).norm() <= radius {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[rj] = ri;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == root) {
            Some(g) => g.1.push(i),
            None => groups.push((root, vec![i])),
        }
    }
    let mean = |m: &[usize]| m.iter().map(|&i| eigs[i]).sum::<Complex64>() / m.len() as f64;
    let mut out: Vec<Vec<usize>> = groups.into_iter().map(|g| g.1).collect();
    out.sort_by(|a, b| {
        let (za, zb) = (mean(a), mean(b));
        za.re.total_cmp(&zb.re).then(za.im.total_cmp(&zb.im))
    });
    out
}

/// Maximum numerical rank of `matfn(s)` over `trials` random parameter
/// vectors `s`, each coordinate uniform on `[-1, -0.1] U [0.1, 1]`.
///
/// Draws come from one stream in order, so more trials under the same
/// source never lower the result.
pub fn generic_rank<T, F>(
    mut matfn: F,
    num_params: usize,
    trials: usize,
    source: RandomSource,
    tol: &ToleranceConfig,
) -> Result<usize>
where
    T: ComplexField<RealField = f64>,
    F: FnMut(&[f64]) -> Result<DMatrix<T>>,
{
    if trials == 0 {
        return Err(Error::Config(
            "generic_rank needs at least one trial".into(),
        ));
    }
    let mut rng = source.rng();
    let mut best = 0;
    let mut params = vec![0.0; num_params];
    for _ in 0..trials {
        for s in params.iter_mut() {
            *s = super::nonzero_uniform(&mut rng, 1.0);
        }
        let m = matfn(&params)?;
        best = best.max(numerical_rank(&m, tol)?);
    }
    Ok(best)
}

/// Kalman matrix `[B, AB, ..., A^{n-1} B]`.
pub fn controllability_matrix(a: &Mat, b: &Mat) -> Result<Mat> {
    let n = a.nrows();
    if a.ncols() != n || b.nrows() != n {
        return Err(Error::Dimension(format!(
            "controllability matrix: A is {}x{}, B is {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    let m = b.ncols();
    let mut out = Mat::zeros(n, n * m);
    let mut block = b.clone();
    for k in 0..n {
        out.view_mut((0, k * m), (n, m)).copy_from(&block);
        block = a * &block;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dmatrix;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn random_mat(rows: usize, cols: usize, seed: u64) -> Mat {
        let mut rng = RandomSource::new(seed).rng();
        Mat::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0))
    }

    #[test]
    fn kron_identity_is_block_diagonal() {
        let m = dmatrix![1.0, 2.0; 3.0, 4.0; 5.0, 6.0];
        let k = kron(&identity(2), &m);
        assert_eq!(k.shape(), (6, 4));
        assert_eq!(k.view((0, 0), (3, 2)), m);
        assert_eq!(k.view((3, 2), (3, 2)), m);
        assert!(k.view((0, 2), (3, 2)).iter().all(|&x| x == 0.0));
        assert!(k.view((3, 0), (3, 2)).iter().all(|&x| x == 0.0));
    }

    #[test]
    fn kron_scalar_scales() {
        let m = random_mat(3, 4, 11);
        assert_eq!(kron(&dmatrix![2.0], &m), &m * 2.0);
    }

    #[test]
    fn kron_matches_index_loop_definition() {
        let a = random_mat(2, 3, 1);
        let b = random_mat(3, 2, 2);
        let k = kron(&a, &b);
        assert_eq!(k.shape(), (6, 6));
        // Independent oracle: walk blocks explicitly.
        for i in 0..2 {
            for j in 0..3 {
                for p in 0..3 {
                    for q in 0..2 {
                        assert_eq!(k[(i * 3 + p, j * 2 + q)], a[(i, j)] * b[(p, q)]);
                    }
                }
            }
        }
    }

    #[test]
    fn commutation_degenerate_shapes_are_identity() {
        assert_eq!(commutation_matrix(1, 4).to_dense(), identity(4));
        assert_eq!(commutation_matrix(5, 1).to_dense(), identity(5));
    }

    #[test]
    fn commutation_identity_square_case() {
        let a = random_mat(2, 2, 3);
        let b = random_mat(3, 3, 4);
        let p = commutation_matrix(2, 3).to_dense();
        let lhs = p.transpose() * kron(&a, &b) * &p;
        assert_eq!(lhs, kron(&b, &a));
    }

    #[test]
    fn permutation_gathers_match_dense_products() {
        let p = commutation_matrix(3, 2);
        let m = random_mat(6, 6, 5);
        assert_eq!(p.transpose_mul(&m), p.to_dense().transpose() * &m);
        assert_eq!(p.rmul(&m), &m * p.to_dense());
        assert!(Permutation::from_map(vec![0, 0]).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(numerical_rank(&identity(3), &tol()).unwrap(), 3);
        assert_eq!(numerical_rank(&Mat::zeros(2, 5), &tol()).unwrap(), 0);
        assert_eq!(
            numerical_rank(&dmatrix![1.0, 2.0; 2.0, 4.0], &tol()).unwrap(),
            1
        );
        assert!(numerical_rank(&Mat::zeros(0, 3), &tol()).is_err());
    }

    #[test]
    fn eigenvalue_examples() {
        let e = eigenvalues(&identity(2)).unwrap();
        assert!(e
            .iter()
            .all(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-12));
        let e = eigenvalues(&dmatrix![0.0, 1.0; 0.0, 0.0]).unwrap();
        assert!(e.iter().all(|z| z.norm() < 1e-12));
        let mut e: Vec<f64> = eigenvalues(&Mat::from_diagonal(&nalgebra::dvector![3.0, -1.0, 2.0]))
            .unwrap()
            .iter()
            .map(|z| z.re)
            .collect();
        e.sort_by(f64::total_cmp);
        assert_eq!(e, vec![-1.0, 2.0, 3.0]);
        assert!(eigenvalues(&Mat::zeros(2, 3)).is_err());
    }

    #[test]
    fn stalled_qr_falls_back_to_a_similarity() {
        // Two decoupled consensus pairs of double integrators; plain QR
        // iteration does not converge on this one.
        let (a, b) = (0.7451124872543093, 0.5341734312622408);
        let (c, d) = (0.15989982871805852, 0.21353788974155463);
        let mut m = Mat::zeros(8, 8);
        for i in 0..4 {
            m[(2 * i, 2 * i + 1)] = 1.0;
        }
        for (row, sign) in [(1, 1.0), (3, -1.0)] {
            m[(row, 0)] = -a * sign;
            m[(row, 1)] = b * sign;
            m[(row, 2)] = a * sign;
            m[(row, 3)] = -b * sign;
        }
        for (row, sign) in [(5, 1.0), (7, -1.0)] {
            m[(row, 4)] = c * sign;
            m[(row, 5)] = -d * sign;
            m[(row, 6)] = -c * sign;
            m[(row, 7)] = d * sign;
        }
        let eigs = eigenvalues(&m).unwrap();
        assert_eq!(eigs.len(), 8);
        let zeros = eigs.iter().filter(|z| z.norm() < 1e-6).count();
        assert_eq!(zeros, 4);
    }

    #[test]
    fn eigenvalues_make_characteristic_matrix_singular() {
        let a = random_mat(5, 5, 9);
        for lam in eigenvalues(&a).unwrap() {
            let shifted = CMatLike::shift(&a, lam);
            let sv = shifted.singular_values();
            let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(smin < 1e-10 * sv.max(), "sigma_min = {smin}");
        }
    }

    struct CMatLike;
    impl CMatLike {
        fn shift(a: &Mat, lam: Complex64) -> DMatrix<Complex64> {
            DMatrix::from_fn(a.nrows(), a.ncols(), |i, j| {
                let d = if i == j {
                    lam
                } else {
                    Complex64::new(0.0, 0.0)
                };
                d - Complex64::new(a[(i, j)], 0.0)
            })
        }
    }

    #[test]
    fn clustering_merges_close_values() {
        let z = |re| Complex64::new(re, 0.0);
        let c = cluster_eigenvalues(&[z(1.0), z(2.0), z(1.0 + 1e-9), z(1.0 - 1e-9)], 1e-7);
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].multiplicity, 3);
        assert!((c[0].value.re - 1.0).abs() < 1e-15);
        assert_eq!(c[1].multiplicity, 1);
    }

    #[test]
    fn generic_rank_examples() {
        let src = RandomSource::new(5);
        let r = generic_rank(|s: &[f64]| Ok(dmatrix![s[0]]), 1, 3, src, &tol()).unwrap();
        assert_eq!(r, 1);
        let r = generic_rank(
            |s: &[f64]| Ok(dmatrix![s[0], s[0]; s[0], s[0]]),
            1,
            3,
            src,
            &tol(),
        )
        .unwrap();
        assert_eq!(r, 1);
        let r = generic_rank(
            |s: &[f64]| Ok(dmatrix![s[0], 0.0; 0.0, s[1]]),
            2,
            3,
            src,
            &tol(),
        )
        .unwrap();
        assert_eq!(r, 2);
        assert!(generic_rank(|s: &[f64]| Ok(dmatrix![s[0]]), 1, 0, src, &tol()).is_err());
    }
}
