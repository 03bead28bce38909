use super::parser::{parse_equation, parse_expression, ParseError};
use super::report::*;
use super::{LambdaMode, Mode, RunConfig};
use crate::algebra::{rational_to_string, Rational};
use crate::engine::{
    bound_check, build_ansatz, is_symmetry, lambda_candidates, solve_symmetries, symmetry_defect, AnsatzCaps,
    AnsatzSpace, EngineError, EvolutionEquation, ExpWeights,
};
use crate::jet::{Coord, ExpPolyExpr};
use crate::structure::{
    auto_weights, criterion_direct_g1, criterion_from_decomposition, decompose_shift_action, shift_matrices,
    CriterionVerdict, SelectedVariables, StructureError,
};

impl From<ParseError> for ErrorReport {
    fn from(e: ParseError) -> Self {
        match &e {
            ParseError::Syntax { position, expected, .. } => ErrorReport {
                position: Some(*position),
                expected: Some(expected.clone()),
                ..ErrorReport::new(ErrorKind::Syntax, e.to_string())
            },
            ParseError::Scope(_) => ErrorReport::new(ErrorKind::Scope, e.to_string()),
        }
    }
}

impl From<StructureError> for ErrorReport {
    fn from(e: StructureError) -> Self {
        match &e {
            StructureError::ClosureViolation { element, .. } => ErrorReport {
                element: Some(element.clone()),
                ..ErrorReport::new(ErrorKind::ClosureViolation, e.to_string())
            },
            StructureError::UnresolvedSpectrum { factors } => ErrorReport {
                factors: Some(factors.iter().map(|f| f.render("lambda")).collect()),
                ..ErrorReport::new(ErrorKind::UnresolvedSpectrum, e.to_string())
            },
            StructureError::Engine(inner) => ErrorReport::from(inner.clone()),
            _ => ErrorReport::new(ErrorKind::Other, e.to_string()),
        }
    }
}

impl From<EngineError> for ErrorReport {
    fn from(e: EngineError) -> Self {
        let kind = match e {
            EngineError::Scope(_) => ErrorKind::Scope,
            _ => ErrorKind::Other,
        };
        ErrorReport::new(kind, e.to_string())
    }
}

fn strings(rs: &[Rational]) -> Vec<String> {
    rs.iter().map(rational_to_string).collect()
}

fn verdict_report(v: &CriterionVerdict) -> VerdictReport {
    let w = v.witness.as_ref();
    VerdictReport {
        target: v.target.to_string(),
        exists: v.exists,
        shape: v.shape.map(|s| s.as_str().to_string()),
        witness: v.witness_expr().map(|e| e.to_string()),
        lambda: w.map(|w| strings(w.lambda())),
        epsilon: w.map(|w| w.epsilon.clone()),
        table: w.map(|w| w.table_entries()),
        method: w.map(|w| w.method.as_str().to_string()),
        certificate: v.certificate.clone(),
    }
}

fn parse_coord(name: &str) -> Result<Coord, ErrorReport> {
    match Coord::from_name(name.trim()) {
        Some(c) if c.is_zero_jet() => Ok(c),
        _ => Err(ErrorReport::new(
            ErrorKind::Other,
            format!("'{name}' is not a 0-jet coordinate (t, y, u)"),
        )),
    }
}

/// Runs the configured analysis. Failures are recorded in the report's
/// `error` field; partial results computed before the failure are kept.
pub fn run_pipeline(cfg: &RunConfig) -> Report {
    let mut report = Report::new(cfg.clone());
    if let Err(e) = run_into(cfg, &mut report) {
        report.error = Some(e);
    }
    report
}

fn run_into(cfg: &RunConfig, report: &mut Report) -> Result<(), ErrorReport> {
    let eq = parse_equation(&cfg.equation)?;
    report.equation = Some(EquationReport {
        rhs: eq.rhs().to_string(),
        order: eq.order(),
    });

    if cfg.mode == Mode::Check {
        if cfg.check.is_empty() {
            return Err(ErrorReport::new(ErrorKind::Other, "check mode needs at least one characteristic"));
        }
        for src in &cfg.check {
            let eta = parse_expression(src)?;
            let defect = symmetry_defect(&eta, &eq);
            report.check.push(CheckEntry {
                expr: eta.to_string(),
                symmetry: defect.is_zero(),
                defect: defect.to_string(),
            });
        }
        return Ok(());
    }

    let structural = matches!(cfg.mode, Mode::Structure | Mode::Criterion);
    let selected_coords = cfg
        .selected_names()
        .iter()
        .map(|n| parse_coord(n))
        .collect::<Result<Vec<_>, _>>()?;
    let selected = SelectedVariables::new(selected_coords)
        .map_err(|e| ErrorReport::new(ErrorKind::Other, e.to_string()))?;
    let target = parse_coord(&cfg.target)?;
    if structural && selected.index_of(target).is_none() {
        return Err(StructureError::TargetNotSelected(target).into());
    }

    let caps = cfg.caps();
    let weights = match &cfg.lambda {
        LambdaMode::None => ExpWeights::zero(),
        LambdaMode::List(ls) => ExpWeights::fixed(ls.clone()),
        LambdaMode::Auto => {
            let symbolic = build_ansatz(AnsatzCaps { y_degree: 0, ..caps }, ExpWeights::Symbolic)?;
            let search = lambda_candidates(&symbolic, &eq)?;
            let weights = auto_weights(&search);
            let ExpWeights::Fixed(ws) = &weights else { unreachable!() };
            let unresolved: Vec<String> = search.unresolved.iter().map(|f| f.render("lambda")).collect();
            report.lambda_search = Some(LambdaReport {
                candidates: strings(&search.candidates),
                unresolved: unresolved.clone(),
                pivots: search.pivots.iter().map(|p| p.render("lambda")).collect(),
                generic_rank: search.generic_rank,
                generic_kernel: search.generic_kernel,
                weights: strings(ws),
            });
            if !unresolved.is_empty() {
                if structural {
                    return Err(StructureError::UnresolvedSpectrum {
                        factors: search.unresolved,
                    }
                    .into());
                }
                report.notes.push(format!(
                    "exponentials exp(lambda*y) with lambda a root of {} are not rational and are not in the basis",
                    unresolved.join(", ")
                ));
            }
            weights
        }
    };

    let explicit = match &cfg.basis {
        Some(list) if structural => Some(list.iter().map(|s| parse_expression(s)).collect::<Result<Vec<_>, _>>()?),
        _ => None,
    };
    let elements: Vec<ExpPolyExpr> = if let Some(list) = explicit {
        let ansatz = AnsatzSpace::from_generators(list.clone())?;
        report.ansatz = Some(AnsatzReport {
            description: ansatz.describe(),
            generators: ansatz.len(),
        });
        let failing: Vec<String> = list
            .iter()
            .filter(|e| !is_symmetry(e, &eq))
            .map(ToString::to_string)
            .collect();
        if !failing.is_empty() {
            report
                .notes
                .push(format!("explicit basis elements that are not symmetries: {}", failing.join(", ")));
        }
        report.basis = list.iter().map(ToString::to_string).collect();
        list
    } else {
        let ansatz = build_ansatz(caps, weights)?;
        report.ansatz = Some(AnsatzReport {
            description: ansatz.describe(),
            generators: ansatz.len(),
        });
        let basis = solve_symmetries(&ansatz, &eq)?;
        report.basis = basis.elements.iter().map(ToString::to_string).collect();
        report.dims = basis
            .dims
            .iter()
            .enumerate()
            .map(|(q, &v)| DimEntry { q: q as u32, v })
            .collect();
        report.bounds = bound_check(&basis)
            .into_iter()
            .map(|b| BoundReport {
                q: b.q,
                relation: b.relation,
                pass: b.pass,
            })
            .collect();
        report.notes.push("all results are relative to the ansatz".into());
        basis.elements
    };
    if !structural {
        return Ok(());
    }

    let action = shift_matrices(&elements, &selected)?;
    report.shift = Some(ShiftReport {
        selected: selected.coords().iter().map(ToString::to_string).collect(),
        matrices: action
            .matrices
            .iter()
            .map(|m| m.to_rows().iter().map(|r| strings(r)).collect())
            .collect(),
    });
    let decomposition = decompose_shift_action(&action)?;
    report.structure = Some(StructureReport {
        rho: decomposition.rho(),
        blocks: decomposition
            .blocks
            .iter()
            .map(|b| BlockReport {
                lambda: strings(&b.lambda),
                k: b.k.clone(),
                size: b.size(),
                elements: b.elements.iter().map(ToString::to_string).collect(),
            })
            .collect(),
    });
    if cfg.mode != Mode::Criterion {
        return Ok(());
    }

    let description = report.ansatz.as_ref().map(|a| a.description.clone()).unwrap_or_default();
    let full = criterion_from_decomposition(&decomposition, target, format!("ansatz-exhaustive; {description}"))?;
    let mut criterion = CriterionReport {
        full: verdict_report(&full),
        direct: None,
        agree: None,
    };
    if selected.g() == 1 && target == Coord::Y && cfg.basis.is_none() {
        let direct = criterion_direct_g1(&eq, caps)?;
        criterion.agree = Some(direct.exists == full.exists);
        if direct.exists != full.exists {
            report
                .notes
                .push("direct and full verdicts searched different ansatz spaces and disagree".into());
        }
        criterion.direct = Some(verdict_report(&direct));
    }
    report.criterion = Some(criterion);
    Ok(())
}

/// Convenience used by tests and the C interface.
pub fn check_characteristic(eq: &EvolutionEquation, eta: &str) -> Result<bool, ParseError> {
    Ok(is_symmetry(&parse_expression(eta)?, eq))
}
