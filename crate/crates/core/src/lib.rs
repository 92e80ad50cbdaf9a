//! Exact solvers for combinatorial optimization problems with interaction
//! costs: pick `S1 ∈ F1` and `S2 ∈ F2` minimizing
//! `Σ_{i∈S1, j∈S2} q_ij + Σ_{i∈S1} c_i + Σ_{j∈S2} d_j`.

pub mod bruteforce;
pub mod cost;
pub mod diagonal;
pub mod error;
pub mod families;
pub mod fixedrank;
pub mod graphkit;
pub mod instance;
pub mod linalg;
pub mod linearize;
pub mod reductions;

pub use cost::{Cost, Rational};
pub use error::{CopicError, Result};
pub use families::{FamilySpec, MatroidOracle};
pub use graphkit::Graph;
pub use instance::{
    evaluate_objective, validate_instance, DiagonalCosts, Instance, Interaction, Matrix, Solution,
    Subset,
};
