use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::StructureError;
use crate::algebra::{RatMatrix, Rational};
use crate::jet::{canonical_exp_poly, coefficient_matrix, combine, Coord, ExpPolyElement, ExpPolyExpr, TableEntry};

/// `(d/dz - lambda)^times e`.
pub fn apply_shift(e: &ExpPolyExpr, coord: Coord, lambda: &Rational, times: u32) -> ExpPolyExpr {
    let mut out = e.clone();
    for _ in 0..times {
        out = &out.partial_derive(coord) - &out.scale(lambda);
    }
    out
}

/// How a special form was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionMethod {
    /// One operator product chosen from the top term of the table.
    Greedy,
    /// Another exponent tuple, found by scanning all of them.
    Exhaustive,
    /// A linear combination of shifted copies of the input.
    ShiftSpan,
}

impl ReductionMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            ReductionMethod::Greedy => "greedy",
            ReductionMethod::Exhaustive => "exhaustive",
            ReductionMethod::ShiftSpan => "shift-span",
        }
    }
}

/// `exp(sum_s lambda_s z_s) sum_j z^j K_j` with `j_s <= epsilon_s`, where
/// `epsilon_s` is 0 when `lambda_s != 0` and 1 otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialFormElement {
    pub element: ExpPolyElement,
    pub epsilon: Vec<u32>,
    pub method: ReductionMethod,
}

impl SpecialFormElement {
    pub fn lambda(&self) -> &[Rational] {
        &self.element.lambda
    }

    pub fn table(&self) -> &BTreeMap<Vec<u32>, ExpPolyExpr> {
        &self.element.table
    }

    pub fn table_entries(&self) -> Vec<TableEntry> {
        self.element.table_entries()
    }

    pub fn reconstruct(&self) -> ExpPolyExpr {
        self.element.reconstruct()
    }

    /// `lambda_i != 0`, or some `K_j` with `j_i = 1` is nonzero.
    pub fn is_witness(&self, i: usize) -> bool {
        !self.element.lambda[i].is_zero() || self.element.table.keys().any(|j| j[i] == 1)
    }
}

pub fn epsilon(lambda: &[Rational]) -> Vec<u32> {
    lambda.iter().map(|l| u32::from(l.is_zero())).collect()
}

/// Applies `prod_s (d/dz_s - lambda_s)^{a_s}` on the table: each
/// `z^j C_j` becomes `prod_s j_s!/(j_s - a_s)! z^{j - a} C_j`.
pub fn shift_element(elem: &ExpPolyElement, a: &[u32]) -> ExpPolyElement {
    let mut table = BTreeMap::new();
    for (j, c) in &elem.table {
        if j.iter().zip(a).any(|(js, as_)| js < as_) {
            continue;
        }
        let mut factor = BigInt::one();
        for (&js, &as_) in j.iter().zip(a) {
            for t in (js - as_ + 1)..=js {
                factor *= t;
            }
        }
        let key: Vec<u32> = j.iter().zip(a).map(|(js, as_)| js - as_).collect();
        table.insert(key, c.scale(&Rational::from_integer(factor)));
    }
    ExpPolyElement::new(elem.selected.clone(), elem.lambda.clone(), table).expect("shape preserved")
}

fn acceptable(e: &ExpPolyElement, eps: &[u32], target: usize, need_witness: bool) -> bool {
    if e.is_zero() || e.table.keys().any(|j| j.iter().zip(eps).any(|(js, es)| js > es)) {
        return false;
    }
    !need_witness || !e.lambda[target].is_zero() || e.table.keys().any(|j| j[target] == 1)
}

fn exponent_tuples(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..b.max(1)).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Linear combination of shifted copies of `elem` in special form that
/// also meets the witness condition when asked to.
fn shift_span_search(
    elem: &ExpPolyElement,
    eps: &[u32],
    target: usize,
    need_witness: bool,
) -> Option<ExpPolyElement> {
    let copies: Vec<ExpPolyExpr> = exponent_tuples(&elem.degrees)
        .iter()
        .map(|a| shift_element(elem, a).reconstruct())
        .collect();
    let refs: Vec<&ExpPolyExpr> = copies.iter().collect();
    let (rows, m) = coefficient_matrix(&refs);
    let outside: Vec<usize> = (0..rows.len())
        .filter(|&r| {
            elem.selected
                .iter()
                .zip(eps)
                .any(|(&c, &e)| rows[r].power(c) > e)
        })
        .collect();
    let mut constraints = RatMatrix::zeros(outside.len(), copies.len());
    for (i, &r) in outside.iter().enumerate() {
        for (j, v) in m.row(r).iter().enumerate() {
            constraints.set(i, j, v.clone());
        }
    }
    for v in constraints.nullspace() {
        let e = combine(&copies, &v);
        let Ok(form) = canonical_exp_poly(&e, &elem.selected) else {
            continue;
        };
        if acceptable(&form, eps, target, need_witness) {
            return Some(form);
        }
    }
    None
}

/// Brings an element to special form by differentiating along the selected
/// coordinates.
///
/// The top term is chosen with the target coordinate first, then the others
/// in order, and `prod_s (d/dz_s - lambda_s)^{max(r_s - epsilon_s, 0)}` is
/// applied. If the result is not of special form, or lost the dependence on
/// the target, every exponent tuple is tried in lexicographic order, and
/// finally linear combinations of all shifted copies.
pub fn reduce_to_special(elem: &ExpPolyElement, target: usize) -> Result<SpecialFormElement, StructureError> {
    let g = elem.selected.len();
    if target >= g {
        return Err(StructureError::Shape(format!("target index {target} with {g} coordinates")));
    }
    if elem.is_zero() {
        return Err(StructureError::InternalInconsistency("zero element has no special form".into()));
    }
    let eps = epsilon(&elem.lambda);
    let need_witness = elem.depends_on_selected(target);
    let done = |element, method| SpecialFormElement {
        element,
        epsilon: eps.clone(),
        method,
    };

    let order: Vec<usize> = std::iter::once(target).chain((0..g).filter(|&s| s != target)).collect();
    let top = elem
        .table
        .keys()
        .max_by(|a, b| order.iter().map(|&s| a[s]).cmp(order.iter().map(|&s| b[s])))
        .expect("nonzero element");
    let a: Vec<u32> = (0..g).map(|s| top[s].saturating_sub(eps[s])).collect();
    let greedy = shift_element(elem, &a);
    if acceptable(&greedy, &eps, target, need_witness) {
        return Ok(done(greedy, ReductionMethod::Greedy));
    }
    for a in exponent_tuples(&elem.degrees) {
        let cand = shift_element(elem, &a);
        if acceptable(&cand, &eps, target, need_witness) {
            return Ok(done(cand, ReductionMethod::Exhaustive));
        }
    }
    if let Some(form) = shift_span_search(elem, &eps, target, need_witness) {
        return Ok(done(form, ReductionMethod::ShiftSpan));
    }
    Err(StructureError::InternalInconsistency(format!(
        "no special form depending on {} in the shift span of {}",
        elem.selected[target],
        elem.reconstruct()
    )))
}
