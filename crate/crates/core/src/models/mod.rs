//! Concrete nilpotent models: structure-constant algebras, their groups,
//! the Gr/Lie round trip and the equation solver.

pub mod algebra;
pub mod functor;
pub mod linalg;
pub mod solver;

pub use algebra::{BracketEntry, ModelVector, SCLieAlgebra};
pub use functor::{group_lcs, lie_from_group_ops, GroupDerivedOps};
pub use linalg::Subspace;
pub use solver::{
    augmentation, group_equation_residual, group_equation_term, solve_equation,
    solve_group_equation,
};
