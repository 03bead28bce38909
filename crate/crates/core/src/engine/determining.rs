use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::{symbolic_defect, symmetry_defect, AnsatzSpace, EvolutionEquation};
use crate::algebra::{PolyMatrix, RatMatrix, Rational, UniPoly};
use crate::jet::{coefficient_matrix, ExpPolyExpr, Monomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstraintMatrix {
    Fixed(RatMatrix),
    /// Entries in `lambda` after factoring out `exp(lambda y)`.
    Symbolic(PolyMatrix),
}

/// Linear constraints on the coefficients of a generic ansatz element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminingSystem {
    pub unknowns: usize,
    /// The defect monomial each row annihilates.
    pub rows: Vec<Monomial>,
    pub matrix: ConstraintMatrix,
}

impl DeterminingSystem {
    pub fn fixed_matrix(&self) -> Option<&RatMatrix> {
        match &self.matrix {
            ConstraintMatrix::Fixed(m) => Some(m),
            ConstraintMatrix::Symbolic(_) => None,
        }
    }

    pub fn poly_matrix(&self) -> Option<&PolyMatrix> {
        match &self.matrix {
            ConstraintMatrix::Symbolic(m) => Some(m),
            ConstraintMatrix::Fixed(_) => None,
        }
    }
}

pub fn determining_system(ansatz: &AnsatzSpace, eq: &EvolutionEquation) -> DeterminingSystem {
    let n = ansatz.len();
    if ansatz.weights.is_symbolic() {
        let defects: Vec<Vec<ExpPolyExpr>> =
            ansatz.generators.iter().map(|g| symbolic_defect(g, eq)).collect();
        let rows: Vec<Monomial> = defects
            .iter()
            .flatten()
            .flat_map(|c| c.terms().map(|(m, _)| m.clone()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let pos: BTreeMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut coeffs = vec![vec![Vec::<Rational>::new(); n]; rows.len()];
        for (j, ck) in defects.iter().enumerate() {
            for (k, c) in ck.iter().enumerate() {
                for (m, v) in c.terms() {
                    let cell = &mut coeffs[pos[m]][j];
                    if cell.len() <= k {
                        cell.resize(k + 1, Rational::zero());
                    }
                    cell[k] = v.clone();
                }
            }
        }
        let data = coeffs.into_iter().flatten().map(UniPoly::from_coeffs).collect();
        let matrix = PolyMatrix::new(rows.len(), n, data).expect("consistent shape");
        return DeterminingSystem {
            unknowns: n,
            rows,
            matrix: ConstraintMatrix::Symbolic(matrix),
        };
    }
    let defects: Vec<ExpPolyExpr> = ansatz.generators.iter().map(|g| symmetry_defect(g, eq)).collect();
    let refs: Vec<&ExpPolyExpr> = defects.iter().collect();
    let (rows, matrix) = coefficient_matrix(&refs);
    DeterminingSystem {
        unknowns: n,
        rows,
        matrix: ConstraintMatrix::Fixed(matrix),
    }
}
