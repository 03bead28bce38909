use std::fmt;

use num_traits::Zero;

use super::EngineError;
use crate::algebra::{rational_to_string, Rational};
use crate::jet::{linearly_independent, Coord, ExpPolyExpr, Monomial};

/// Exponential weights of the `exp(lambda y)` factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpWeights {
    /// Sorted, deduplicated list of rational weights.
    Fixed(Vec<Rational>),
    /// `lambda` kept as an indeterminate; generators omit the exponential.
    Symbolic,
}

impl ExpWeights {
    pub fn fixed(mut ws: Vec<Rational>) -> Self {
        ws.sort();
        ws.dedup();
        ExpWeights::Fixed(ws)
    }

    pub fn zero() -> Self {
        ExpWeights::Fixed(vec![Rational::zero()])
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, ExpWeights::Symbolic)
    }
}

impl fmt::Display for ExpWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpWeights::Symbolic => write!(f, "symbolic"),
            ExpWeights::Fixed(ws) => {
                let parts: Vec<String> = ws.iter().map(rational_to_string).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
        }
    }
}

/// Degree caps used to enumerate an ansatz.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnsatzCaps {
    pub q_max: u32,
    pub y_degree: u32,
    pub jet_total_degree: u32,
}

impl Default for AnsatzCaps {
    fn default() -> Self {
        AnsatzCaps {
            q_max: 3,
            y_degree: 3,
            jet_total_degree: 2,
        }
    }
}

/// Finite space of candidate characteristics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnsatzSpace {
    pub generators: Vec<ExpPolyExpr>,
    pub q_max: u32,
    pub y_degree: u32,
    pub jet_total_degree: u32,
    pub weights: ExpWeights,
    /// False for spaces given as an explicit generator list.
    pub enumerated: bool,
}

impl AnsatzSpace {
    /// Wraps an explicit list of fixed-weight generators.
    pub fn from_generators(generators: Vec<ExpPolyExpr>) -> Result<Self, EngineError> {
        if generators.iter().any(ExpPolyExpr::is_zero) || !linearly_independent(&generators) {
            return Err(EngineError::DependentGenerators);
        }
        let q_max = generators.iter().map(|g| g.order().max(0) as u32).max().unwrap_or(0);
        let y_degree = generators.iter().map(|g| g.degree_in(Coord::Y)).max().unwrap_or(0);
        let jet_total_degree = generators
            .iter()
            .flat_map(|g| g.terms().map(|(m, _)| m.jet_degree()))
            .max()
            .unwrap_or(0);
        let mut ws: Vec<Rational> = generators
            .iter()
            .flat_map(|g| g.terms().map(|(m, _)| m.weight(Coord::Y)))
            .collect();
        if ws.is_empty() {
            ws.push(Rational::zero());
        }
        Ok(AnsatzSpace {
            generators,
            q_max,
            y_degree,
            jet_total_degree,
            weights: ExpWeights::fixed(ws),
            enumerated: false,
        })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn caps(&self) -> AnsatzCaps {
        AnsatzCaps {
            q_max: self.q_max,
            y_degree: self.y_degree,
            jet_total_degree: self.jet_total_degree,
        }
    }

    /// One-line description used in certificates and reports.
    pub fn describe(&self) -> String {
        let kind = if self.enumerated { "enumerated" } else { "explicit" };
        format!(
            "{kind} ansatz: {} generators, order <= {}, y-degree <= {}, jet degree <= {}, lambda {}",
            self.generators.len(),
            self.q_max,
            self.y_degree,
            self.jet_total_degree,
            self.weights
        )
    }
}

/// Jet monomials `prod u_(l)^{b_l}` with `l <= q_max` and `sum b_l <= deg`,
/// by total degree, then lexicographically in the jet indices.
fn jet_monomials(q_max: u32, deg: u32) -> Vec<Monomial> {
    fn rec(start: u32, q_max: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for l in start..=q_max {
            cur.push(l);
            rec(l, q_max, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..=deg {
        let mut lists = Vec::new();
        rec(0, q_max, total, &mut Vec::new(), &mut lists);
        for list in lists {
            let mut m = Monomial::one();
            for l in list {
                let c = Coord::jet(l);
                m.set_power(c, m.power(c) + 1);
            }
            out.push(m);
        }
    }
    out
}

/// All generators `exp(lambda y) y^a prod u_(l)^{b_l}` within the caps, looping
/// over jet monomials, then weights, then powers of `y`.
pub fn build_ansatz(caps: AnsatzCaps, weights: ExpWeights) -> Result<AnsatzSpace, EngineError> {
    let ws: Vec<Rational> = match &weights {
        ExpWeights::Fixed(ws) => ws.clone(),
        ExpWeights::Symbolic => vec![Rational::zero()],
    };
    let mut generators = Vec::new();
    for j in jet_monomials(caps.q_max, caps.jet_total_degree) {
        for w in &ws {
            for a in 0..=caps.y_degree {
                let mut m = j.clone();
                m.set_power(Coord::Y, a);
                m.set_weight(Coord::Y, w.clone()).expect("y is a 0-jet");
                generators.push(ExpPolyExpr::term(m, Rational::from_integer(1.into())));
            }
        }
    }
    if generators.is_empty() {
        return Err(EngineError::EmptyAnsatz);
    }
    Ok(AnsatzSpace {
        generators,
        q_max: caps.q_max,
        y_degree: caps.y_degree,
        jet_total_degree: caps.jet_total_degree,
        weights,
        enumerated: true,
    })
}
