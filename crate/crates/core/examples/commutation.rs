//! Kronecker algebra behind the lumped model. The commutation matrix swaps
//! Kronecker factors, which is what turns the per-edge factorization of the
//! coupling into the block form used for assembly.

use diffnet::assembly::{assemble_lumped, factorized_assembly_check, sample_weights, tq_decompose};
use diffnet::numerics::{commutation_matrix, kron, mat_from_rows, RandomSource};
use diffnet::subsystem::SubsystemModel;
use diffnet::topology::{DrivenSet, Edge, NetworkGraph};

fn main() -> diffnet::Result<()> {
    let a = mat_from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]])?;
    let b = mat_from_rows(&[vec![0.0, 5.0, -1.0]])?;
    let lhs = commutation_matrix(2, 1).to_dense().transpose()
        * kron(&a, &b)
        * commutation_matrix(2, 3).to_dense();
    println!(
        "max |K' (A x B) K - B x A| = {:e}",
        (lhs - kron(&b, &a)).abs().max()
    );

    let w = mat_from_rows(&[vec![1.0, -2.0, 0.5], vec![3.0, 0.0, 4.0]])?;
    let f = tq_decompose(&w);
    println!(
        "T Lambda Q reproduces W exactly: {}",
        &f.t * &f.lambda * &f.q == w
    );

    let m = SubsystemModel::new(
        mat_from_rows(&[
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![-1.0, -2.0, -3.0],
        ])?,
        mat_from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]])?,
        mat_from_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ])?,
    )?;
    let g = NetworkGraph::new(3, vec![Edge::undirected(0, 1), Edge::undirected(1, 2)])?;
    let d = DrivenSet::new([1], 3)?;
    let weights = sample_weights(&g, (2, 3), RandomSource::new(3), 1.0)?;
    let sys = assemble_lumped(&m, &g, &weights, &d)?;
    let residual = factorized_assembly_check(&m, &g, &weights, &d)?;
    println!(
        "lumped system {}x{} with {} inputs; factorized forms deviate by {:e}",
        sys.a_sys.nrows(),
        sys.a_sys.ncols(),
        sys.b_sys.ncols(),
        residual.max()
    );
    Ok(())
}
