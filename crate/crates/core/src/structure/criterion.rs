use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{
    decompose_shift_action, epsilon, reduce_to_special, shift_matrices, BlockDecomposition, ReductionMethod,
    SelectedVariables, SpecialFormElement, StructureError,
};
use crate::algebra::{rational_to_string, Rational};
use crate::engine::{
    build_ansatz, lambda_candidates, solve_symmetries, AnsatzCaps, EvolutionEquation, ExpWeights, LambdaSearch,
    SymmetryBasis,
};
use crate::jet::{canonical_exp_poly, Coord, ExpPolyExpr};

/// Which form the witness takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessShape {
    /// `exp(lambda z) K_0` with `lambda != 0`.
    Exponential,
    /// `K_0 + z K_1` with `K_1 != 0`.
    Linear,
}

impl WitnessShape {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessShape::Exponential => "exponential",
            WitnessShape::Linear => "linear",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionVerdict {
    pub target: Coord,
    pub exists: bool,
    pub witness: Option<SpecialFormElement>,
    pub shape: Option<WitnessShape>,
    /// What was searched; every verdict is relative to it.
    pub certificate: String,
}

impl CriterionVerdict {
    pub fn witness_expr(&self) -> Option<ExpPolyExpr> {
        self.witness.as_ref().map(SpecialFormElement::reconstruct)
    }
}

fn shape_of(w: &SpecialFormElement, i: usize) -> WitnessShape {
    if w.lambda()[i].is_zero() {
        WitnessShape::Linear
    } else {
        WitnessShape::Exponential
    }
}

/// Verdict read off an existing decomposition.
pub fn criterion_from_decomposition(
    decomposition: &BlockDecomposition,
    target: Coord,
    certificate: String,
) -> Result<CriterionVerdict, StructureError> {
    let i = decomposition
        .action
        .selected
        .index_of(target)
        .ok_or(StructureError::TargetNotSelected(target))?;
    // same preference as the direct search: nonzero weights by size,
    // positive first, then polynomial dependence
    let mut dependent: Vec<_> = decomposition
        .elements()
        .map(|(_, f)| f)
        .filter(|f| f.depends_on_selected(i))
        .collect();
    dependent.sort_by_key(|f| {
        let l = &f.lambda[i];
        (l.is_zero(), l.abs(), l.is_negative())
    });
    let mut last_err = None;
    for form in dependent {
        match reduce_to_special(form, i) {
            Ok(w) => {
                return Ok(CriterionVerdict {
                    target,
                    exists: true,
                    shape: Some(shape_of(&w, i)),
                    witness: Some(w),
                    certificate,
                })
            }
            Err(e @ StructureError::InternalInconsistency(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    if let Some(e) = last_err {
        return Err(e);
    }
    Ok(CriterionVerdict {
        target,
        exists: false,
        witness: None,
        shape: None,
        certificate,
    })
}

/// Decides whether the basis contains symmetries depending on `target`,
/// producing a special-form witness through the block decomposition.
pub fn criterion_full(
    basis: &SymmetryBasis,
    selected: &SelectedVariables,
    target: Coord,
) -> Result<CriterionVerdict, StructureError> {
    let action = shift_matrices(&basis.elements, selected)?;
    let decomposition = decompose_shift_action(&action)?;
    criterion_from_decomposition(&decomposition, target, format!("ansatz-exhaustive; {}", basis.ansatz.describe()))
}

/// Exponential weights for a fixed-weight ansatz that contains every
/// exponential found by the search: zero, the rational candidates, and one
/// if the kernel is nonzero for every weight.
pub fn auto_weights(search: &LambdaSearch) -> ExpWeights {
    let mut ws = vec![Rational::zero()];
    ws.extend(search.candidates.iter().cloned());
    if search.generic_kernel {
        ws.push(Rational::from_integer(1.into()));
    }
    ExpWeights::fixed(ws)
}

/// Searches directly for `exp(lambda y) K_0` with `lambda != 0`, then for
/// `K_0 + y K_1` with `K_1 != 0`, where the `K` are free of `y`.
pub fn criterion_direct_g1(eq: &EvolutionEquation, caps: AnsatzCaps) -> Result<CriterionVerdict, StructureError> {
    let jet_caps = AnsatzCaps { y_degree: 0, ..caps };
    let symbolic = build_ansatz(jet_caps, ExpWeights::Symbolic)?;
    let search = lambda_candidates(&symbolic, eq)?;
    let mut tries: Vec<Rational> = search.candidates.iter().filter(|l| !l.is_zero()).cloned().collect();
    tries.sort_by(|a, b| a.abs().cmp(&b.abs()).then(b.cmp(a)));
    if search.generic_kernel {
        tries.extend((1..=3).map(|k| Rational::from_integer(k.into())));
    }
    let tried: Vec<String> = tries.iter().map(rational_to_string).collect();
    let mut certificate = format!(
        "ansatz-exhaustive; exponential search over {} (lambda tried: [{}])",
        symbolic.describe(),
        tried.join(", ")
    );
    for lam in &tries {
        let fixed = build_ansatz(jet_caps, ExpWeights::fixed(vec![lam.clone()]))?;
        let basis = solve_symmetries(&fixed, eq)?;
        if let Some(e) = basis.elements.first() {
            let element = canonical_exp_poly(e, &[Coord::Y])?;
            return Ok(CriterionVerdict {
                target: Coord::Y,
                exists: true,
                witness: Some(SpecialFormElement {
                    epsilon: epsilon(&element.lambda),
                    element,
                    method: ReductionMethod::Greedy,
                }),
                shape: Some(WitnessShape::Exponential),
                certificate,
            });
        }
    }
    if !search.unresolved.is_empty() {
        return Err(StructureError::UnresolvedSpectrum {
            factors: search.unresolved,
        });
    }

    let linear = build_ansatz(AnsatzCaps { y_degree: 1, ..caps }, ExpWeights::zero())?;
    certificate.push_str(&format!("; linear search over {}", linear.describe()));
    let basis = solve_symmetries(&linear, eq)?;
    for e in &basis.elements {
        let element = canonical_exp_poly(e, &[Coord::Y])?;
        if element.depends_on_selected(0) {
            return Ok(CriterionVerdict {
                target: Coord::Y,
                exists: true,
                witness: Some(SpecialFormElement {
                    epsilon: epsilon(&element.lambda),
                    element,
                    method: ReductionMethod::Greedy,
                }),
                shape: Some(WitnessShape::Linear),
                certificate,
            });
        }
    }
    Ok(CriterionVerdict {
        target: Coord::Y,
        exists: false,
        witness: None,
        shape: None,
        certificate,
    })
}
