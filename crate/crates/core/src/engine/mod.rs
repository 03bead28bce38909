//! Determining equations for `u_t = G` and their solution inside finite
//! ansatz spaces. Every result is relative to the ansatz it was computed in.

mod ansatz;
mod defect;
mod determining;
mod equation;
mod solve;

use thiserror::Error;

pub use ansatz::{build_ansatz, AnsatzCaps, AnsatzSpace, ExpWeights};
pub use defect::{is_symmetry, lie_bracket, symbolic_defect, symmetry_defect};
pub use determining::{determining_system, ConstraintMatrix, DeterminingSystem};
pub use equation::{to_characteristic, EvolutionEquation, GeneralizedVectorField, SystemSpec};
pub use solve::{bound_check, lambda_candidates, solve_symmetries, BoundEntry, LambdaSearch, SymmetryBasis};

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("out of scope: {0}")]
    Scope(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("the ansatz caps produce no generators")]
    EmptyAnsatz,
    #[error("ansatz generators are not linearly independent")]
    DependentGenerators,
    #[error("a symbolic-lambda ansatz must be given a fixed lambda before solving")]
    SymbolicAnsatz,
    #[error("lambda search needs a symbolic-lambda ansatz")]
    FixedAnsatz,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
