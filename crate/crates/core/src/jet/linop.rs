use super::{Coord, ExpPolyExpr};

/// Linear differential operator `sum_j a_j D_y^j` with expression
/// coefficients. Trailing zero coefficients are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearDiffOp {
    coeffs: Vec<ExpPolyExpr>,
}

impl LinearDiffOp {
    pub fn new(mut coeffs: Vec<ExpPolyExpr>) -> Self {
        while coeffs.last().is_some_and(ExpPolyExpr::is_zero) {
            coeffs.pop();
        }
        LinearDiffOp { coeffs }
    }

    pub fn coeffs(&self) -> &[ExpPolyExpr] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn apply(&self, theta: &ExpPolyExpr) -> ExpPolyExpr {
        let mut out = ExpPolyExpr::zero();
        let mut deriv = theta.clone();
        for (j, a) in self.coeffs.iter().enumerate() {
            if j > 0 {
                deriv = deriv.total_derive_y();
            }
            if !a.is_zero() {
                out = &out + &(a * &deriv);
            }
        }
        out
    }
}

/// Linearization of `e`: the coefficient of `D_y^j` is `de/du_(j)`.
pub fn frechet(e: &ExpPolyExpr) -> LinearDiffOp {
    let order = e.order();
    if order < 0 {
        return LinearDiffOp::default();
    }
    LinearDiffOp::new(
        (0..=order as u32)
            .map(|j| e.partial_derive(Coord::jet(j)))
            .collect(),
    )
}
