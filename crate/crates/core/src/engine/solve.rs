use super::{determining_system, AnsatzSpace, EngineError, EvolutionEquation};
use crate::algebra::{RatMatrix, Rational, UniPoly};
use crate::jet::{combine, ExpPolyExpr};

/// Basis of the symmetries contained in an ansatz space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryBasis {
    pub equation: EvolutionEquation,
    pub ansatz: AnsatzSpace,
    pub elements: Vec<ExpPolyExpr>,
    /// Coordinates of each element against the ansatz generators.
    pub coefficients: Vec<Vec<Rational>>,
    /// `dims[q]`: dimension of the symmetries of order at most `q`.
    pub dims: Vec<usize>,
}

impl SymmetryBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn nullity_of_columns(m: &RatMatrix, cols: &[usize]) -> usize {
    let sub = RatMatrix::from_columns(m.rows(), &cols.iter().map(|&j| m.column(j)).collect::<Vec<_>>())
        .expect("consistent shape");
    cols.len() - sub.rank()
}

pub fn solve_symmetries(ansatz: &AnsatzSpace, eq: &EvolutionEquation) -> Result<SymmetryBasis, EngineError> {
    let ds = determining_system(ansatz, eq);
    let m = ds.fixed_matrix().ok_or(EngineError::SymbolicAnsatz)?;
    let coefficients = if ansatz.is_empty() { Vec::new() } else { m.nullspace() };
    let elements = coefficients
        .iter()
        .map(|c| combine(&ansatz.generators, c))
        .collect();
    let orders: Vec<i64> = ansatz.generators.iter().map(|g| g.order().max(0)).collect();
    let dims = (0..=ansatz.q_max as i64)
        .map(|q| {
            let cols: Vec<usize> = (0..orders.len()).filter(|&j| orders[j] <= q).collect();
            nullity_of_columns(m, &cols)
        })
        .collect();
    Ok(SymmetryBasis {
        equation: eq.clone(),
        ansatz: ansatz.clone(),
        elements,
        coefficients,
        dims,
    })
}

/// Outcome of the search for exponential weights in a symbolic ansatz.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaSearch {
    /// Rational `lambda` at which the determining system loses rank, sorted.
    pub candidates: Vec<Rational>,
    /// Monic factors without rational roots at whose roots the rank drops.
    pub unresolved: Vec<UniPoly>,
    pub pivots: Vec<UniPoly>,
    pub generic_rank: usize,
    /// Whether the kernel is nonzero for every `lambda`.
    pub generic_kernel: bool,
}

pub fn lambda_candidates(ansatz: &AnsatzSpace, eq: &EvolutionEquation) -> Result<LambdaSearch, EngineError> {
    if !ansatz.weights.is_symbolic() {
        return Err(EngineError::FixedAnsatz);
    }
    let ds = determining_system(ansatz, eq);
    let m = ds.poly_matrix().expect("symbolic ansatz");
    let pivots = m.pivots();
    let generic_rank = pivots.len();
    let mut candidates = Vec::new();
    let mut residual = UniPoly::one();
    for p in &pivots {
        let split = p.rational_roots()?;
        for (r, _) in split.roots {
            if !candidates.contains(&r) && m.eval(&r).rank() < generic_rank {
                candidates.push(r);
            }
        }
        residual = &residual * &split.residual;
    }
    candidates.sort();
    let unresolved = m.rank_drop_factors(&residual.monic(), generic_rank);
    Ok(LambdaSearch {
        candidates,
        unresolved,
        pivots,
        generic_rank,
        generic_kernel: generic_rank < ansatz.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEntry {
    pub q: u32,
    /// Human-readable inequality with numbers filled in.
    pub relation: String,
    pub pass: bool,
}

/// Checks `v(1) <= d + 3` and `v(q) <= v(1) + q - 1` for `q >= 2`.
pub fn bound_check(basis: &SymmetryBasis) -> Vec<BoundEntry> {
    let mut out = Vec::new();
    let Some(&v1) = basis.dims.get(1) else {
        return out;
    };
    let d = basis.equation.order() as usize;
    out.push(BoundEntry {
        q: 1,
        relation: format!("v(1) = {v1} <= d + 3 = {}", d + 3),
        pass: v1 <= d + 3,
    });
    for (q, &vq) in basis.dims.iter().enumerate().skip(2) {
        out.push(BoundEntry {
            q: q as u32,
            relation: format!("v({q}) = {vq} <= v(1) + {} = {}", q - 1, v1 + q - 1),
            pass: vq < v1 + q,
        });
    }
    out
}
