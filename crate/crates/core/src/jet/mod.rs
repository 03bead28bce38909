//! Exponential-polynomial expressions over the jet coordinates of a scalar
//! field `u(t, y)`, with partial, total and Frechet derivatives.

mod coord;
mod exppoly;
mod expr;
mod linop;
mod span;

use thiserror::Error;

pub use coord::Coord;
pub use exppoly::{canonical_exp_poly, ExpPolyElement, TableEntry};
pub(crate) use exppoly::check_selected;
pub use expr::{expr_order, ExpPolyExpr, Monomial};
pub use linop::{frechet, LinearDiffOp};
pub use span::{coefficient_matrix, combine, linearly_independent, span_coordinates};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("exponential weights are only allowed on t, y and u, not on {0}")]
    InvalidExpWeight(Coord),
    #[error("terms carry different exponential weights in the selected coordinates")]
    MixedType,
    #[error("{0} is not a 0-jet coordinate")]
    NotZeroJet(Coord),
    #[error("coordinate {0} selected twice")]
    DuplicateCoordinate(Coord),
    #[error("no selected coordinates")]
    NoSelectedCoordinates,
    #[error("table shape does not match the selected coordinates")]
    ShapeMismatch,
    #[error("a coefficient depends on a selected coordinate")]
    CoefficientDependsOnSelected,
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::algebra::{rat, Rational};
    use proptest::prelude::*;

    fn monomial() -> impl Strategy<Value = Monomial> {
        (
            prop::sample::select(vec![0i64, 0, 1, -1, 2]),
            prop::sample::select(vec![0i64, 0, 0, 1]),
            0u32..3,
            proptest::collection::vec(0u32..3, 4),
        )
            .prop_map(|(wy, wu, py, jets)| {
                let mut m = Monomial::var(Coord::Y, py);
                m.set_weight(Coord::Y, rat(wy, 1)).unwrap();
                m.set_weight(Coord::U, rat(wu, 1)).unwrap();
                for (l, p) in jets.into_iter().enumerate() {
                    m.set_power(Coord::jet(l as u32), p);
                }
                m
            })
    }

    pub(crate) fn expr() -> impl Strategy<Value = ExpPolyExpr> {
        proptest::collection::vec((monomial(), -3i64..=3, 1i64..=3), 0..4).prop_map(|ts| {
            ExpPolyExpr::from_terms(ts.into_iter().map(|(m, n, d)| (m, rat(n, d))))
        })
    }

    proptest! {
        #[test]
        fn sums_and_products_stay_canonical(a in expr(), b in expr()) {
            for e in [&a + &b, &a * &b, &a - &b] {
                prop_assert!(e.terms().all(|(_, c)| *c != Rational::from_integer(0.into())));
                let keys: Vec<_> = e.terms().map(|(m, _)| m.clone()).collect();
                prop_assert!(keys.windows(2).all(|w| w[0] < w[1]));
            }
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn leibniz(a in expr(), b in expr()) {
            let lhs = (&a * &b).total_derive_y();
            let rhs = &(&a.total_derive_y() * &b) + &(&a * &b.total_derive_y());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn commutator_with_total_derivative(e in expr(), l in 0u32..4) {
            let c = Coord::jet(l);
            let lhs = &e.total_derive_y().partial_derive(c) - &e.partial_derive(c).total_derive_y();
            if l == 0 {
                prop_assert!(lhs.is_zero());
            } else {
                prop_assert_eq!(lhs, e.partial_derive(Coord::jet(l - 1)));
            }
        }

        #[test]
        fn total_derivative_raises_order_by_at_most_one(e in expr()) {
            prop_assert!(e.total_derive_y().order() <= e.order().max(-1) + 1);
        }

        #[test]
        fn exp_poly_round_trip(e in expr()) {
            match canonical_exp_poly(&e, &[Coord::Y]) {
                Ok(el) => prop_assert_eq!(el.reconstruct(), e.clone()),
                Err(err) => prop_assert_eq!(err, JetError::MixedType),
            }
            if let Ok(el) = canonical_exp_poly(&e, &[Coord::Y, Coord::U]) {
                prop_assert_eq!(el.reconstruct(), e);
            }
        }

        #[test]
        fn frechet_is_linear(a in expr(), b in expr(), theta in expr(), n in -3i64..=3) {
            let k = rat(n, 2);
            let combo = &a.scale(&k) + &b;
            let lhs = frechet(&combo).apply(&theta);
            let rhs = &frechet(&a).apply(&theta).scale(&k) + &frechet(&b).apply(&theta);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
