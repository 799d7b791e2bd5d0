//! Homogeneous δ-derivations on truncated windows.

mod map;
mod solve;
mod system;

pub use map::{derivation_residual, LinearMap};
pub use solve::{
    interior_columns, interior_dimension, nullspace, projected_dimension, solve_degree, solve_derivations, DegreeResult, DerivationReport,
    Generator, GeneratorKind, ProjectedVector, SolutionSpace,
};
pub use system::{assemble_system, LinearSystem, UnknownTable};
