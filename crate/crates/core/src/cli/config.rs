use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rational, rational_to_string, Rational};
use crate::engine::AnsatzCaps;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Solve,
    Structure,
    Criterion,
    Check,
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "solve" => Ok(Mode::Solve),
            "structure" => Ok(Mode::Structure),
            "criterion" => Ok(Mode::Criterion),
            "check" => Ok(Mode::Check),
            _ => Err(format!("unknown mode '{s}' (solve, structure, criterion, check)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mode::Solve => "solve",
            Mode::Structure => "structure",
            Mode::Criterion => "criterion",
            Mode::Check => "check",
        };
        f.write_str(s)
    }
}

/// Exponential weights: searched, only zero, or an explicit list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum LambdaMode {
    #[default]
    Auto,
    None,
    List(Vec<Rational>),
}

impl FromStr for LambdaMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "auto" => Ok(LambdaMode::Auto),
            "none" => Ok(LambdaMode::None),
            list => list
                .split(',')
                .map(|p| parse_rational(p.trim()).ok_or_else(|| format!("bad rational '{}'", p.trim())))
                .collect::<Result<Vec<_>, _>>()
                .map(LambdaMode::List),
        }
    }
}

impl fmt::Display for LambdaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaMode::Auto => f.write_str("auto"),
            LambdaMode::None => f.write_str("none"),
            LambdaMode::List(ls) => {
                f.write_str(&ls.iter().map(rational_to_string).collect::<Vec<_>>().join(","))
            }
        }
    }
}

impl Serialize for LambdaMode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LambdaMode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Human,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "human" => Ok(Format::Human),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{s}' (human, json)")),
        }
    }
}

/// Everything a run needs; also the JSON input accepted by the C interface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub equation: String,
    pub order: u32,
    pub ydeg: u32,
    pub jetdeg: u32,
    pub lambda: LambdaMode,
    pub mode: Mode,
    pub target: String,
    /// Selected coordinates; defaults to the target alone.
    pub select: Option<Vec<String>>,
    /// Characteristics for check mode.
    pub check: Vec<String>,
    /// Explicit basis replacing the solved one in structure and criterion
    /// modes.
    pub basis: Option<Vec<String>>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let caps = AnsatzCaps::default();
        RunConfig {
            equation: String::new(),
            order: caps.q_max,
            ydeg: caps.y_degree,
            jetdeg: caps.jet_total_degree,
            lambda: LambdaMode::Auto,
            mode: Mode::Solve,
            target: "y".into(),
            select: None,
            check: Vec::new(),
            basis: None,
        }
    }
}

impl RunConfig {
    pub fn caps(&self) -> AnsatzCaps {
        AnsatzCaps {
            q_max: self.order,
            y_degree: self.ydeg,
            jet_total_degree: self.jetdeg,
        }
    }

    pub fn selected_names(&self) -> Vec<String> {
        self.select.clone().unwrap_or_else(|| vec![self.target.clone()])
    }
}
