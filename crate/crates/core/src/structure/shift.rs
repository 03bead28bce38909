use super::StructureError;
use crate::algebra::{RatMatrix, Rational};
use crate::jet::{check_selected, span_coordinates, Coord, ExpPolyExpr, JetError};

/// Ordered, distinct 0-jet coordinates `z_1..z_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectedVariables(Vec<Coord>);

impl SelectedVariables {
    pub fn new(coords: Vec<Coord>) -> Result<Self, JetError> {
        check_selected(&coords)?;
        Ok(SelectedVariables(coords))
    }

    pub fn y() -> Self {
        SelectedVariables(vec![Coord::Y])
    }

    pub fn coords(&self) -> &[Coord] {
        &self.0
    }

    pub fn g(&self) -> usize {
        self.0.len()
    }

    pub fn index_of(&self, c: Coord) -> Option<usize> {
        self.0.iter().position(|&s| s == c)
    }
}

/// Matrices of `d/dz_s` on a basis: column `j` holds the coordinates of
/// `d(basis_j)/dz_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftAction {
    pub selected: SelectedVariables,
    pub basis: Vec<ExpPolyExpr>,
    pub matrices: Vec<RatMatrix>,
}

impl ShiftAction {
    /// Wraps matrices given directly, checking shapes and commutativity.
    pub fn from_matrices(
        selected: SelectedVariables,
        basis: Vec<ExpPolyExpr>,
        matrices: Vec<RatMatrix>,
    ) -> Result<Self, StructureError> {
        let n = basis.len();
        if matrices.len() != selected.g() || matrices.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(StructureError::Shape("one n x n matrix per selected coordinate".into()));
        }
        let action = ShiftAction {
            selected,
            basis,
            matrices,
        };
        if !action.commutes() {
            return Err(StructureError::Shape("shift matrices do not commute".into()));
        }
        Ok(action)
    }

    pub fn commutes(&self) -> bool {
        let m = &self.matrices;
        (0..m.len()).all(|a| {
            (a + 1..m.len()).all(|b| m[a].mul(&m[b]).ok() == m[b].mul(&m[a]).ok())
        })
    }
}

pub fn shift_matrices(basis: &[ExpPolyExpr], selected: &SelectedVariables) -> Result<ShiftAction, StructureError> {
    let n = basis.len();
    let mut matrices = Vec::with_capacity(selected.g());
    for &c in selected.coords() {
        let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(n);
        for e in basis {
            let d = e.partial_derive(c);
            let coords = span_coordinates(basis, &d).ok_or_else(|| StructureError::ClosureViolation {
                element: e.to_string(),
                coord: c,
            })?;
            columns.push(coords);
        }
        matrices.push(RatMatrix::from_columns(n, &columns).expect("square shape"));
    }
    Ok(ShiftAction {
        selected: selected.clone(),
        basis: basis.to_vec(),
        matrices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn uj(l: u32) -> ExpPolyExpr {
        ExpPolyExpr::var(Coord::jet(l))
    }
    fn y() -> ExpPolyExpr {
        ExpPolyExpr::var(Coord::Y)
    }

    #[test]
    fn heat_basis_shift() {
        let basis = vec![ExpPolyExpr::one(), y(), uj(0), uj(1)];
        let a = shift_matrices(&basis, &SelectedVariables::y()).unwrap();
        let mut expected = RatMatrix::zeros(4, 4);
        expected.set(0, 1, int(1));
        assert_eq!(a.matrices[0], expected);
        assert!(a.matrices[0].pow(2).unwrap().is_zero());
    }

    #[test]
    fn exponentials_are_eigenvectors() {
        let e = |w| ExpPolyExpr::exp(Coord::Y, int(w)).unwrap();
        let a = shift_matrices(&[e(1), e(-1)], &SelectedVariables::y()).unwrap();
        assert_eq!(a.matrices[0], RatMatrix::from_ints(&[&[1, 0], &[0, -1]]));
    }

    #[test]
    fn closure_violation() {
        let basis = vec![uj(0), &y() * &uj(1)];
        match shift_matrices(&basis, &SelectedVariables::y()) {
            Err(StructureError::ClosureViolation { element, coord }) => {
                assert_eq!(element, "y*u_1");
                assert_eq!(coord, Coord::Y);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn two_coordinates_commute() {
        let basis = vec![ExpPolyExpr::one(), y(), uj(0), &y() * &uj(0)];
        let sel = SelectedVariables::new(vec![Coord::Y, Coord::U]).unwrap();
        let a = shift_matrices(&basis, &sel).unwrap();
        assert!(a.commutes());
        assert!(ShiftAction::from_matrices(
            sel,
            vec![ExpPolyExpr::one(), y()],
            vec![RatMatrix::from_ints(&[&[0, 1], &[0, 0]]), RatMatrix::from_ints(&[&[1, 0], &[0, 2]])],
        )
        .is_err());
    }
}
