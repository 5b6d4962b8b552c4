//! Spectral analysis of k-uniform hypergraphs through their adjacency,
//! Laplacian and signless Laplacian tensors.
//!
//! Tensors are never materialized. Every operator is applied edge by edge
//! in `O(|E| k)` time, which is what makes solvers on thousands of vertices
//! practical.

pub mod closed_form;
pub mod generate;
pub mod gf2;
pub mod hypergraph;
pub mod io;
pub mod solvers;
pub mod structure;
pub mod tensor;
pub mod verify;

pub use closed_form::{
    bound_report, hypercycle_signless_lambda, hyperstar_laplacian_lambda, hyperstar_signless_lambda, BoundReport,
    ClosedFormConfig, ClosedFormError, ClosedFormResult,
};
pub use generate::{generate, Family, GenerateError};
pub use hypergraph::{recognize, BuildError, DegreeProfile, Hypergraph, StructureTags};
pub use io::ParseError;
pub use solvers::{
    laplacian_max_even, multistart_max, nqz_max, verify_pair, Method, Shift, SolveOutcome, SolverConfig, SolverError,
};
pub use structure::{
    equality_diagnosis, odd_bipartition, transfer_eigenvector, BitPartition, EqualityVerdict, Prediction,
    StructureError,
};
pub use tensor::{apply, form, residual, EigenPair, OperatorKind, TensorError};
