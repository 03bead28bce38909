use super::EngineError;
use crate::jet::{Coord, ExpPolyExpr};

/// Shape of a system of PDEs: `m` independent variables, `n` dependent
/// variables, `f` equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SystemSpec {
    pub m: usize,
    pub n: usize,
    pub f: usize,
}

impl SystemSpec {
    /// One scalar evolution equation in `t` and `y`.
    pub const SCALAR_EVOLUTION: SystemSpec = SystemSpec { m: 2, n: 1, f: 1 };
}

/// `u_t = G(u, u_1, ..., u_d)` with `d >= 2` and `G` free of `t` and `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvolutionEquation {
    rhs: ExpPolyExpr,
    order: u32,
}

impl EvolutionEquation {
    pub fn new(rhs: ExpPolyExpr) -> Result<Self, EngineError> {
        for c in [Coord::T, Coord::Y] {
            if rhs.depends_on(c) {
                return Err(EngineError::Scope(format!(
                    "right-hand side depends explicitly on {c}"
                )));
            }
        }
        let order = rhs.order();
        if order < 2 {
            return Err(EngineError::Scope(format!(
                "equation order is {}, at least 2 is required",
                order.max(0)
            )));
        }
        Ok(EvolutionEquation {
            rhs,
            order: order as u32,
        })
    }

    pub fn rhs(&self) -> &ExpPolyExpr {
        &self.rhs
    }

    /// The order `d` of the right-hand side.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn spec(&self) -> SystemSpec {
        SystemSpec::SCALAR_EVOLUTION
    }
}

impl std::fmt::Display for EvolutionEquation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "u_t = {}", self.rhs)
    }
}

/// `sum_i xi_i d/dx_i + sum_a eta_a d/du_a`, with `x = (t, y)` in the
/// scalar pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedVectorField {
    pub spec: SystemSpec,
    pub xi: Vec<ExpPolyExpr>,
    pub eta: Vec<ExpPolyExpr>,
}

impl GeneralizedVectorField {
    pub fn new(spec: SystemSpec, xi: Vec<ExpPolyExpr>, eta: Vec<ExpPolyExpr>) -> Result<Self, EngineError> {
        if xi.len() != spec.m || eta.len() != spec.n {
            return Err(EngineError::UnsupportedShape(format!(
                "expected {} xi and {} eta components, got {} and {}",
                spec.m,
                spec.n,
                xi.len(),
                eta.len()
            )));
        }
        Ok(GeneralizedVectorField { spec, xi, eta })
    }

    /// Evolutionary field with the given characteristic.
    pub fn evolutionary(eta: ExpPolyExpr) -> Self {
        GeneralizedVectorField {
            spec: SystemSpec::SCALAR_EVOLUTION,
            xi: vec![ExpPolyExpr::zero(), ExpPolyExpr::zero()],
            eta: vec![eta],
        }
    }
}

/// Characteristic `eta - xi_t u_t - xi_y u_1` of a field on the scalar
/// pipeline, with `u_t` replaced through the equation when one is given.
pub fn to_characteristic(
    field: &GeneralizedVectorField,
    eq: Option<&EvolutionEquation>,
) -> Result<Vec<ExpPolyExpr>, EngineError> {
    if field.spec != SystemSpec::SCALAR_EVOLUTION {
        return Err(EngineError::UnsupportedShape(format!(
            "only m=2, n=1, f=1 is supported, got m={}, n={}, f={}",
            field.spec.m, field.spec.n, field.spec.f
        )));
    }
    let (xi_t, xi_y) = (&field.xi[0], &field.xi[1]);
    let mut q = &field.eta[0] - &(xi_y * &ExpPolyExpr::var(Coord::jet(1)));
    if !xi_t.is_zero() {
        let eq = eq.ok_or_else(|| {
            EngineError::UnsupportedShape("a t-component needs the equation to eliminate u_t".into())
        })?;
        q = &q - &(xi_t * eq.rhs());
    }
    Ok(vec![q])
}
