use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Coord, ExpPolyExpr, JetError, Monomial};
use crate::algebra::Rational;

/// An expression written as
/// `exp(sum_s lambda_s z_s) * sum_j z_1^{j_1} ... z_g^{j_g} C_j`
/// over selected 0-jet coordinates `z_1..z_g`, where each `C_j` is free of
/// the selected coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpPolyElement {
    pub selected: Vec<Coord>,
    pub lambda: Vec<Rational>,
    /// `k_s`: one more than the highest power of `z_s`; zero for the zero
    /// expression.
    pub degrees: Vec<u32>,
    /// Nonzero coefficients keyed by the exponent tuple `j`.
    pub table: BTreeMap<Vec<u32>, ExpPolyExpr>,
}

impl ExpPolyElement {
    /// Builds an element from its table, computing `degrees` and dropping
    /// zero coefficients.
    pub fn new(
        selected: Vec<Coord>,
        lambda: Vec<Rational>,
        table: BTreeMap<Vec<u32>, ExpPolyExpr>,
    ) -> Result<Self, JetError> {
        check_selected(&selected)?;
        if lambda.len() != selected.len() || table.keys().any(|j| j.len() != selected.len()) {
            return Err(JetError::ShapeMismatch);
        }
        for c in table.values() {
            if selected.iter().any(|&s| c.depends_on(s)) {
                return Err(JetError::CoefficientDependsOnSelected);
            }
        }
        let table: BTreeMap<_, _> = table.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let degrees = (0..selected.len())
            .map(|s| table.keys().map(|j| j[s] + 1).max().unwrap_or(0))
            .collect();
        Ok(ExpPolyElement {
            selected,
            lambda,
            degrees,
            table,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn coefficient(&self, j: &[u32]) -> Option<&ExpPolyExpr> {
        self.table.get(j)
    }

    /// Multiplies the table back out into a single expression.
    pub fn reconstruct(&self) -> ExpPolyExpr {
        let mut exp = Monomial::one();
        for (c, l) in self.selected.iter().zip(&self.lambda) {
            exp.set_weight(*c, l.clone()).expect("selected coordinates are 0-jets");
        }
        let mut out = ExpPolyExpr::zero();
        for (j, coeff) in &self.table {
            let mut m = exp.clone();
            for (c, p) in self.selected.iter().zip(j) {
                m.set_power(*c, *p);
            }
            out = &out + &coeff.mul_monomial(&m);
        }
        out
    }

    pub fn depends_on_selected(&self, s: usize) -> bool {
        !self.lambda[s].is_zero() || self.degrees[s] > 1
    }
}

/// Rendering of an element's table for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub j: Vec<u32>,
    pub coefficient: String,
}

impl ExpPolyElement {
    pub fn table_entries(&self) -> Vec<TableEntry> {
        self.table
            .iter()
            .map(|(j, c)| TableEntry {
                j: j.clone(),
                coefficient: c.to_string(),
            })
            .collect()
    }
}

pub(crate) fn check_selected(selected: &[Coord]) -> Result<(), JetError> {
    if selected.is_empty() {
        return Err(JetError::NoSelectedCoordinates);
    }
    for (i, c) in selected.iter().enumerate() {
        if !c.is_zero_jet() {
            return Err(JetError::NotZeroJet(*c));
        }
        if selected[..i].contains(c) {
            return Err(JetError::DuplicateCoordinate(*c));
        }
    }
    Ok(())
}

/// Reads `e` in exponential-polynomial form over the selected coordinates.
///
/// Fails with [`JetError::MixedType`] when the terms carry different
/// exponential weights in the selected coordinates.
pub fn canonical_exp_poly(e: &ExpPolyExpr, selected: &[Coord]) -> Result<ExpPolyElement, JetError> {
    check_selected(selected)?;
    let mut lambda: Option<Vec<Rational>> = None;
    let mut table: BTreeMap<Vec<u32>, ExpPolyExpr> = BTreeMap::new();
    for (m, c) in e.terms() {
        let weights: Vec<Rational> = selected.iter().map(|&s| m.weight(s)).collect();
        match &lambda {
            None => lambda = Some(weights),
            Some(l) if *l != weights => return Err(JetError::MixedType),
            Some(_) => {}
        }
        let j: Vec<u32> = selected.iter().map(|&s| m.power(s)).collect();
        let mut rest = m.clone();
        for &s in selected {
            rest.set_power(s, 0);
            rest.set_weight(s, Rational::zero()).expect("0-jet");
        }
        table
            .entry(j)
            .or_default()
            .add_term(rest, c.clone());
    }
    let lambda = lambda.unwrap_or_else(|| vec![Rational::zero(); selected.len()]);
    ExpPolyElement::new(selected.to_vec(), lambda, table)
}
