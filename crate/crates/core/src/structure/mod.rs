//! Exponential-polynomial structure of symmetry spaces that are closed
//! under shifts of selected 0-jet coordinates, reduction to special form,
//! and the test for dependence on a selected coordinate.

mod criterion;
mod decompose;
mod reduce;
mod shift;

use thiserror::Error;

pub use criterion::{
    auto_weights, criterion_direct_g1, criterion_from_decomposition, criterion_full, CriterionVerdict,
    WitnessShape,
};
pub use decompose::{decompose_shift_action, Block, BlockDecomposition};
pub use reduce::{apply_shift, epsilon, reduce_to_special, shift_element, ReductionMethod, SpecialFormElement};
pub use shift::{shift_matrices, SelectedVariables, ShiftAction};

use crate::algebra::{AlgebraError, UniPoly};
use crate::engine::EngineError;
use crate::jet::{Coord, JetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("d/d{coord} of {element} leaves the span of the basis")]
    ClosureViolation { element: String, coord: Coord },
    #[error("spectrum does not split over the rationals: {}", render(.factors))]
    UnresolvedSpectrum { factors: Vec<UniPoly> },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("{0} is not a selected coordinate")]
    TargetNotSelected(Coord),
    #[error("shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn render(factors: &[UniPoly]) -> String {
    factors.iter().map(|f| f.render("lambda")).collect::<Vec<_>>().join(", ")
}
