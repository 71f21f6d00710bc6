//! Structural controllability of diffusively coupled networks.
//!
//! A network of `N` identical linear subsystems `(A, B, C)` interacts through
//! diffusive coupling `W_ij C (x_j - x_i)`, where each edge carries a vector
//! (`1 x r`) or matrix (`p x r`) weight. This crate decides whether such a
//! network is structurally controllable, i.e. controllable for almost every
//! choice of edge weights, using graph-theoretic conditions:
//!
//! * SIMO subsystems with undirected or semi-symmetric topologies: the network
//!   is structurally controllable iff `(A, b)` is controllable, `(A, C)` is
//!   observable and every vertex is reachable from a driven vertex.
//! * MIMO subsystems with matrix weights: when `(A, B, C)` has no fixed mode,
//!   input-reachability alone decides the question.
//!
//! Every verdict can be certified by a randomized oracle that samples weights,
//! assembles the lumped pair `(A_sys, B_sys)` and runs a PBH rank test.
//!
//! The modules mirror the pipeline:
//!
//! * [`numerics`]: Kronecker products, commutation matrices, rank, eigenvalues,
//!   PBH tests and generic-rank sampling.
//! * [`topology`]: graphs, driven sets, reachability, spanning forests,
//!   incidence matrices and auxiliary digraphs.
//! * [`subsystem`]: node-level checks and fixed modes.
//! * [`assembly`]: Laplacians, lumped systems and the mass-spring-damper chain.
//! * [`verdict`]: the analysis engines and Monte Carlo certification.
//! * [`cli`]: problem/report file formats and the command implementations
//!   behind the `diffnet` binary.

pub mod assembly;
pub mod cli;
pub mod error;
pub mod numerics;
pub mod subsystem;
pub mod topology;
pub mod verdict;

pub use error::{Error, Result};
