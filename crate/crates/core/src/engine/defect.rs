use num_bigint::BigInt;
use num_integer::binomial;

use super::EvolutionEquation;
use crate::algebra::Rational;
use crate::jet::{frechet, ExpPolyExpr};

/// `eta_*[G] - G_*[eta]`: vanishes exactly when `eta` is the characteristic
/// of a generalized symmetry of `u_t = G`.
pub fn symmetry_defect(eta: &ExpPolyExpr, eq: &EvolutionEquation) -> ExpPolyExpr {
    &frechet(eta).apply(eq.rhs()) - &frechet(eq.rhs()).apply(eta)
}

pub fn is_symmetry(eta: &ExpPolyExpr, eq: &EvolutionEquation) -> bool {
    symmetry_defect(eta, eq).is_zero()
}

/// Characteristic of the commutator, `eta2_*[eta1] - eta1_*[eta2]`.
pub fn lie_bracket(eta1: &ExpPolyExpr, eta2: &ExpPolyExpr) -> ExpPolyExpr {
    &frechet(eta2).apply(eta1) - &frechet(eta1).apply(eta2)
}

/// Defect of `exp(lambda y) p` with `lambda` left symbolic.
///
/// Returns `c_0, c_1, ...` with
/// `symmetry_defect(exp(lambda y) p) = exp(lambda y) sum_k lambda^k c_k`,
/// using `D^j (exp(lambda y) p) = exp(lambda y) sum_k C(j, k) lambda^k D^{j-k} p`.
pub fn symbolic_defect(p: &ExpPolyExpr, eq: &EvolutionEquation) -> Vec<ExpPolyExpr> {
    let lin = frechet(eq.rhs());
    let a = lin.coeffs();
    let top = a.len();
    let mut derivs = vec![p.clone()];
    for _ in 1..top.max(1) {
        let next = derivs.last().unwrap().total_derive_y();
        derivs.push(next);
    }
    let mut out = Vec::with_capacity(top.max(1));
    for k in 0..top.max(1) {
        let mut ck = if k == 0 {
            frechet(p).apply(eq.rhs())
        } else {
            ExpPolyExpr::zero()
        };
        for (j, aj) in a.iter().enumerate().skip(k) {
            if aj.is_zero() {
                continue;
            }
            let b = Rational::from_integer(BigInt::from(binomial(j as u64, k as u64)));
            ck = &ck - &(aj * &derivs[j - k]).scale(&b);
        }
        out.push(ck);
    }
    while out.len() > 1 && out.last().is_some_and(ExpPolyExpr::is_zero) {
        out.pop();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::jet::{Coord, Monomial};

    fn uj(l: u32) -> ExpPolyExpr {
        ExpPolyExpr::var(Coord::jet(l))
    }
    fn y() -> ExpPolyExpr {
        ExpPolyExpr::var(Coord::Y)
    }
    fn eq(g: ExpPolyExpr) -> EvolutionEquation {
        EvolutionEquation::new(g).unwrap()
    }

    #[test]
    fn defect_examples() {
        let heat = eq(uj(2));
        let kdv = eq(&uj(3) + &(&uj(0) * &uj(1)));
        assert!(symmetry_defect(kdv.rhs(), &kdv).is_zero());
        assert!(symmetry_defect(&y(), &heat).is_zero());
        assert_eq!(
            symmetry_defect(&(&y() * &uj(1)), &heat),
            uj(2).scale(&int(-2))
        );
    }

    #[test]
    fn is_symmetry_examples() {
        let heat = eq(uj(2));
        assert!(is_symmetry(&uj(1), &heat));
        let damped = eq(&uj(2) - &uj(0));
        assert!(is_symmetry(&ExpPolyExpr::exp(Coord::Y, int(1)).unwrap(), &damped));
        assert!(!is_symmetry(&(&y() * &uj(1)), &heat));
    }

    #[test]
    fn bracket_examples() {
        assert!(lie_bracket(&uj(1), &uj(2)).is_zero());
        let e = &(&y() * &uj(0)) + &uj(3);
        assert!(lie_bracket(&e, &e).is_zero());
        assert_eq!(lie_bracket(&ExpPolyExpr::one(), &(&uj(0) * &uj(1))), uj(1));
    }

    #[test]
    fn symbolic_defect_of_exponential() {
        let damped = eq(&uj(2) - &uj(0));
        let c = symbolic_defect(&ExpPolyExpr::one(), &damped);
        // (1 - lambda^2) exp(lambda y)
        assert_eq!(c, vec![ExpPolyExpr::one(), ExpPolyExpr::zero(), ExpPolyExpr::constant(int(-1))]);
    }

    #[test]
    fn symbolic_defect_matches_concrete_lambda() {
        let kdv = eq(&uj(3) + &(&uj(0) * &uj(1)));
        let p = &(&y() * &uj(1)) + &uj(0).pow(2);
        let c = symbolic_defect(&p, &kdv);
        for l in [-2i64, 1, 3] {
            let lam = int(l);
            let e = ExpPolyExpr::exp(Coord::Y, lam.clone()).unwrap();
            let concrete = symmetry_defect(&(&e * &p), &kdv);
            let mut from_symbolic = ExpPolyExpr::zero();
            let mut power = int(1);
            for ck in &c {
                from_symbolic = &from_symbolic + &ck.scale(&power);
                power *= &lam;
            }
            let from_symbolic = from_symbolic.mul_monomial(&Monomial::exp(Coord::Y, lam).unwrap());
            assert_eq!(concrete, from_symbolic);
        }
    }
}
