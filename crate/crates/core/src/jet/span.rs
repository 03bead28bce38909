use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::{ExpPolyExpr, Monomial};
use crate::algebra::{RatMatrix, Rational};

/// Coordinates of expressions against a common monomial index, one column
/// per expression.
pub fn coefficient_matrix(exprs: &[&ExpPolyExpr]) -> (Vec<Monomial>, RatMatrix) {
    let index: BTreeSet<&Monomial> = exprs.iter().flat_map(|e| e.terms().map(|(m, _)| m)).collect();
    let rows: Vec<Monomial> = index.into_iter().cloned().collect();
    let pos: BTreeMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = RatMatrix::zeros(rows.len(), exprs.len());
    for (j, e) in exprs.iter().enumerate() {
        for (m, c) in e.terms() {
            mat.set(pos[m], j, c.clone());
        }
    }
    (rows, mat)
}

/// Solves `sum_i x_i basis_i = target` exactly.
pub fn span_coordinates(basis: &[ExpPolyExpr], target: &ExpPolyExpr) -> Option<Vec<Rational>> {
    if target.is_zero() {
        return Some(vec![Rational::zero(); basis.len()]);
    }
    let mut all: Vec<&ExpPolyExpr> = basis.iter().collect();
    all.push(target);
    let (_, mat) = coefficient_matrix(&all);
    let n = basis.len();
    let a = RatMatrix::from_columns(mat.rows(), &(0..n).map(|j| mat.column(j)).collect::<Vec<_>>())
        .expect("consistent shape");
    a.solve(&mat.column(n))
}

/// `sum_i coeffs_i exprs_i`.
pub fn combine(exprs: &[ExpPolyExpr], coeffs: &[Rational]) -> ExpPolyExpr {
    exprs
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .fold(ExpPolyExpr::zero(), |acc, (e, c)| &acc + &e.scale(c))
}

/// Whether the expressions are linearly independent over the rationals.
pub fn linearly_independent(exprs: &[ExpPolyExpr]) -> bool {
    let refs: Vec<&ExpPolyExpr> = exprs.iter().collect();
    coefficient_matrix(&refs).1.rank() == exprs.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::jet::Coord;

    #[test]
    fn span_membership() {
        let y = ExpPolyExpr::var(Coord::Y);
        let u = ExpPolyExpr::var(Coord::U);
        let basis = vec![&y + &u, &y - &u];
        let target = y.scale(&int(2));
        assert_eq!(span_coordinates(&basis, &target), Some(vec![int(1), int(1)]));
        assert_eq!(span_coordinates(&basis, &ExpPolyExpr::one()), None);
        assert!(linearly_independent(&basis));
        assert!(!linearly_independent(&[y.clone(), y.scale(&int(3))]));
        assert_eq!(combine(&basis, &[int(1), int(-1)]), u.scale(&int(2)));
    }
}
