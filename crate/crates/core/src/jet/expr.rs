use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Coord, JetError};
use crate::algebra::{rational_to_string, Rational};

/// Coefficient-free monomial `prod exp(w_A z_A) * prod c^p`.
///
/// Exponential weights sit only on 0-jet coordinates. Zero weights and zero
/// powers are never stored, so structural equality is mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(Coord, Rational)>,
    powers: Vec<(Coord, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(c: Coord, power: u32) -> Self {
        let mut m = Self::one();
        m.set_power(c, power);
        m
    }

    pub fn exp(c: Coord, weight: Rational) -> Result<Self, JetError> {
        let mut m = Self::one();
        m.set_weight(c, weight)?;
        Ok(m)
    }

    pub fn exps(&self) -> &[(Coord, Rational)] {
        &self.exps
    }

    pub fn powers(&self) -> &[(Coord, u32)] {
        &self.powers
    }

    pub fn power(&self, c: Coord) -> u32 {
        self.powers
            .iter()
            .find(|(k, _)| *k == c)
            .map_or(0, |(_, p)| *p)
    }

    pub fn weight(&self, c: Coord) -> Rational {
        self.exps
            .iter()
            .find(|(k, _)| *k == c)
            .map_or_else(Rational::zero, |(_, w)| w.clone())
    }

    pub fn set_power(&mut self, c: Coord, p: u32) {
        match self.powers.binary_search_by(|(k, _)| k.cmp(&c)) {
            Ok(i) if p == 0 => {
                self.powers.remove(i);
            }
            Ok(i) => self.powers[i].1 = p,
            Err(_) if p == 0 => {}
            Err(i) => self.powers.insert(i, (c, p)),
        }
    }

    pub fn set_weight(&mut self, c: Coord, w: Rational) -> Result<(), JetError> {
        if !c.is_zero_jet() {
            return Err(JetError::InvalidExpWeight(c));
        }
        match self.exps.binary_search_by(|(k, _)| k.cmp(&c)) {
            Ok(i) if w.is_zero() => {
                self.exps.remove(i);
            }
            Ok(i) => self.exps[i].1 = w,
            Err(_) if w.is_zero() => {}
            Err(i) => self.exps.insert(i, (c, w)),
        }
        Ok(())
    }

    /// Sum of the powers of `u` and its jets.
    pub fn jet_degree(&self) -> u32 {
        self.powers
            .iter()
            .filter(|(c, _)| c.jet_order().is_some())
            .map(|(_, p)| p)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (c, p) in &other.powers {
            let cur = out.power(*c);
            out.set_power(*c, cur + p);
        }
        for (c, w) in &other.exps {
            let cur = out.weight(*c);
            out.set_weight(*c, cur + w).expect("0-jet weight");
        }
        out
    }

    pub fn depends_on(&self, c: Coord) -> bool {
        self.power(c) > 0 || !self.weight(c).is_zero()
    }

    /// Highest jet order present, counting `u` (in a power or an exponential)
    /// as order zero.
    pub fn order(&self) -> i64 {
        let from_powers = self
            .powers
            .iter()
            .filter_map(|(c, _)| c.jet_order())
            .map(i64::from)
            .max();
        let from_exp = if self.weight(Coord::U).is_zero() {
            None
        } else {
            Some(0)
        };
        from_powers.max(from_exp).unwrap_or(-1)
    }

    fn render(&self) -> Vec<String> {
        let mut factors = Vec::new();
        if !self.exps.is_empty() {
            let mut arg = String::new();
            for (i, (c, w)) in self.exps.iter().enumerate() {
                let neg = w.is_negative();
                let mag = w.abs();
                if i == 0 {
                    if neg {
                        arg.push('-');
                    }
                } else {
                    arg.push_str(if neg { " - " } else { " + " });
                }
                if mag.is_one() {
                    arg.push_str(&c.name());
                } else {
                    arg.push_str(&format!("{}*{}", rational_to_string(&mag), c.name()));
                }
            }
            factors.push(format!("exp({arg})"));
        }
        for (c, p) in &self.powers {
            if *p == 1 {
                factors.push(c.name());
            } else {
                factors.push(format!("{}^{}", c.name(), p));
            }
        }
        factors
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.jet_degree()
            .cmp(&other.jet_degree())
            .then_with(|| self.powers.cmp(&other.powers))
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exponential-polynomial expression: a finite rational combination of
/// [`Monomial`]s, kept in canonical sorted order with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpPolyExpr {
    terms: BTreeMap<Monomial, Rational>,
}

impl ExpPolyExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(c: Coord) -> Self {
        Self::term(Monomial::var(c, 1), Rational::one())
    }

    /// `exp(weight * c)`; `c` must be a 0-jet coordinate.
    pub fn exp(c: Coord, weight: Rational) -> Result<Self, JetError> {
        Ok(Self::term(Monomial::exp(c, weight)?, Rational::one()))
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut e = Self::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ExpPolyExpr {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Multiplies every term by a monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self::from_terms(self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `d/dc`, treating every other coordinate as independent.
    pub fn partial_derive(&self, c: Coord) -> Self {
        let mut out = Self::zero();
        for (m, coeff) in &self.terms {
            let w = m.weight(c);
            if !w.is_zero() {
                out.add_term(m.clone(), coeff * &w);
            }
            let p = m.power(c);
            if p > 0 {
                let mut lowered = m.clone();
                lowered.set_power(c, p - 1);
                out.add_term(lowered, coeff * Rational::from_integer(BigInt::from(p)));
            }
        }
        out
    }

    /// Total derivative `D_y = d/dy + sum_l u_(l+1) d/du_(l)`. Any `t`
    /// dependence is carried along untouched.
    pub fn total_derive_y(&self) -> Self {
        let mut out = self.partial_derive(Coord::Y);
        let mut jets: Vec<u32> = self
            .terms
            .keys()
            .flat_map(|m| {
                let from_powers = m.powers.iter().filter_map(|(c, _)| c.jet_order());
                let from_exp = (!m.weight(Coord::U).is_zero()).then_some(0);
                from_powers.chain(from_exp)
            })
            .collect();
        jets.sort_unstable();
        jets.dedup();
        for l in jets {
            let d = self.partial_derive(Coord::jet(l));
            out = &out + &d.mul_monomial(&Monomial::var(Coord::jet(l + 1), 1));
        }
        out
    }

    /// `D_y^n`.
    pub fn total_derive_y_n(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |acc, _| acc.total_derive_y())
    }

    /// Highest `l` with `u_(l)` present; `-1` for expressions free of `u`.
    pub fn order(&self) -> i64 {
        self.terms.keys().map(Monomial::order).max().unwrap_or(-1)
    }

    pub fn depends_on(&self, c: Coord) -> bool {
        self.terms.keys().any(|m| m.depends_on(c))
    }

    /// Maximum power of `c` over all terms.
    pub fn degree_in(&self, c: Coord) -> u32 {
        self.terms.keys().map(|m| m.power(c)).max().unwrap_or(0)
    }
}

/// Order of an expression as a symmetry characteristic; see
/// [`ExpPolyExpr::order`].
pub fn expr_order(e: &ExpPolyExpr) -> i64 {
    e.order()
}

impl Add for &ExpPolyExpr {
    type Output = ExpPolyExpr;
    fn add(self, rhs: &ExpPolyExpr) -> ExpPolyExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ExpPolyExpr {
    type Output = ExpPolyExpr;
    fn sub(self, rhs: &ExpPolyExpr) -> ExpPolyExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &ExpPolyExpr {
    type Output = ExpPolyExpr;
    fn mul(self, rhs: &ExpPolyExpr) -> ExpPolyExpr {
        let mut out = ExpPolyExpr::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl Neg for &ExpPolyExpr {
    type Output = ExpPolyExpr;
    fn neg(self) -> ExpPolyExpr {
        ExpPolyExpr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for ExpPolyExpr {
    /// `3*exp(2*y)*y^2*u_1 - u` style; terms in canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors = m.render();
            if !mag.is_one() || factors.is_empty() {
                factors.insert(0, rational_to_string(&mag));
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn y() -> ExpPolyExpr {
        ExpPolyExpr::var(Coord::Y)
    }
    fn u() -> ExpPolyExpr {
        ExpPolyExpr::var(Coord::U)
    }
    fn uj(l: u32) -> ExpPolyExpr {
        ExpPolyExpr::var(Coord::jet(l))
    }
    fn c(n: i64) -> ExpPolyExpr {
        ExpPolyExpr::constant(int(n))
    }
    fn ey(w: i64) -> ExpPolyExpr {
        ExpPolyExpr::exp(Coord::Y, int(w)).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let e = &(&u() * &y()) + &c(3);
        assert_eq!(&e + &ExpPolyExpr::zero(), e);
        assert_eq!(&ey(1) * &ey(-1), ExpPolyExpr::one());
        assert_eq!(&(&u() + &y()) * &(&u() - &y()), &u().pow(2) - &y().pow(2));
    }

    #[test]
    fn partial_derivative_examples() {
        assert_eq!(
            (&y().pow(2) * &u()).partial_derive(Coord::Y),
            &(&c(2) * &y()) * &u()
        );
        assert_eq!(
            (&ey(2) * &uj(1)).partial_derive(Coord::Y),
            &(&c(2) * &ey(2)) * &uj(1)
        );
        let eu = ExpPolyExpr::exp(Coord::U, int(3)).unwrap();
        assert_eq!(eu.partial_derive(Coord::U), &c(3) * &eu);
    }

    #[test]
    fn total_derivative_examples() {
        assert_eq!(u().total_derive_y(), uj(1));
        assert_eq!((&y() * &uj(1)).total_derive_y(), &uj(1) + &(&y() * &uj(2)));
        assert_eq!(u().pow(2).total_derive_y(), &(&c(2) * &u()) * &uj(1));
        let eu = ExpPolyExpr::exp(Coord::U, int(2)).unwrap();
        assert_eq!(eu.total_derive_y(), &(&c(2) * &uj(1)) * &eu);
    }

    #[test]
    fn order_examples() {
        assert_eq!((&uj(3) + &u()).order(), 3);
        assert_eq!(y().pow(2).order(), -1);
        assert_eq!((&u() * &uj(1)).order(), 1);
        assert_eq!(u().order(), 0);
    }

    #[test]
    fn depends_on_examples() {
        assert!((&y() * &uj(1)).depends_on(Coord::Y));
        assert!((&ey(3) * &u()).depends_on(Coord::Y));
        assert!(!uj(2).depends_on(Coord::Y));
    }

    #[test]
    fn exp_weight_on_jet_rejected() {
        assert_eq!(
            ExpPolyExpr::exp(Coord::jet(2), int(1)),
            Err(JetError::InvalidExpWeight(Coord::Jet(2)))
        );
    }

    #[test]
    fn rendering() {
        let e = &(&(&c(3) * &ey(2)) * &y().pow(2)) * &uj(1);
        assert_eq!(e.to_string(), "3*exp(2*y)*y^2*u_1");
        assert_eq!((&uj(2) - &u()).to_string(), "-u + u_2");
        assert_eq!(ExpPolyExpr::zero().to_string(), "0");
        assert_eq!(ey(-1).to_string(), "exp(-y)");
        let mixed = &ey(1) * &ExpPolyExpr::exp(Coord::U, crate::algebra::rat(-1, 2)).unwrap();
        assert_eq!(mixed.to_string(), "exp(y - 1/2*u)");
    }
}
