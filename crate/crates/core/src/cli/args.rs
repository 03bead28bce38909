use std::path::PathBuf;

use clap::Parser;

use super::{Format, LambdaMode, Mode, RunConfig};

/// Generalized symmetries of scalar evolution equations u_t = G(u, u_1, ..., u_d).
#[derive(Debug, Parser)]
#[command(name = "jetsym", version)]
pub struct Args {
    /// Equation, e.g. "u_t = u_3 + u*u_1"
    #[arg(long = "eq")]
    pub equation: String,
    /// Highest jet order in the ansatz
    #[arg(long, default_value_t = 3)]
    pub order: u32,
    /// Highest power of y in the ansatz
    #[arg(long, default_value_t = 3)]
    pub ydeg: u32,
    /// Highest total degree in the jets u, u_1, ...
    #[arg(long, default_value_t = 2)]
    pub jetdeg: u32,
    /// Exponential weights: auto, none, or a comma-separated list like 1,-1/2
    #[arg(long, default_value = "auto", allow_hyphen_values = true)]
    pub lambda: LambdaMode,
    /// solve, structure, criterion or check (check is implied by --check)
    #[arg(long)]
    pub mode: Option<Mode>,
    /// Coordinate whose dependence the criterion tests
    #[arg(long, default_value = "y")]
    pub target: String,
    /// Comma-separated selected coordinates (default: the target)
    #[arg(long, value_delimiter = ',')]
    pub select: Option<Vec<String>>,
    /// Characteristic to verify; may be repeated
    #[arg(long)]
    pub check: Vec<String>,
    /// Explicit basis "e1; e2; ..." used instead of solving
    #[arg(long)]
    pub basis: Option<String>,
    /// Also write the JSON report to this file
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Output format on stdout
    #[arg(long, default_value = "human")]
    pub format: Format,
    /// Record wall-clock time in the report
    #[arg(long)]
    pub timing: bool,
}

impl Args {
    pub fn to_config(&self) -> RunConfig {
        let mode = self
            .mode
            .unwrap_or(if self.check.is_empty() { Mode::Solve } else { Mode::Check });
        RunConfig {
            equation: self.equation.clone(),
            order: self.order,
            ydeg: self.ydeg,
            jetdeg: self.jetdeg,
            lambda: self.lambda.clone(),
            mode,
            target: self.target.clone(),
            select: self.select.clone(),
            check: self.check.clone(),
            basis: self.basis.as_ref().map(|b| {
                b.split(';')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect()
            }),
        }
    }
}
