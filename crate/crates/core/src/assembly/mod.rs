//! Laplacians and lumped systems built from a subsystem model, a graph and
//! edge weights.

mod laplacian;
mod lumped;
mod mass_spring;
mod weights;

pub use laplacian::{
    block_laplacian, channel_laplacian, scalar_laplacians, vector_laplacian, LaplacianSet,
};
pub use lumped::{
    assemble_lumped, assemble_lumped_mimo, assemble_lumped_simo, block_diag,
    factorized_assembly_check, relative_deviation, tq_decompose, FactorizationResidual,
    LumpedSystem, TqFactors, ASSEMBLY_AGREEMENT_TOL,
};
pub use mass_spring::{mass_spring_chain, MassSpringChain};
pub use weights::{sample_weights, EdgeWeights, MatrixWeights, VectorWeights, WeightRecord};
