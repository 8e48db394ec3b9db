use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::coeff::rational::parse_rational;
use crate::coeff::{MultiPoly, Rational};
use crate::lie::{AlgebraSpec, Family};

pub const JOBS_ENV: &str = "CENTRALIZER_JOBS";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("unknown algebra `{0}` (use gl:N, o:N, sp:N or a family name with --n)")]
    BadSpec(String),
    #[error("rank {given} conflicts with the rank of {spec}")]
    RankConflict { spec: AlgebraSpec, given: usize },
    #[error("missing {0}")]
    Missing(&'static str),
    #[error("invalid value `{value}` for {key}")]
    BadValue { key: String, value: String },
    #[error("config line {line}: {message}")]
    BadLine { line: usize, message: String },
    #[error("m = {m} must be smaller than n = {n}")]
    MBound { m: usize, n: usize },
    #[error("two-variable relations need K >= 2, got {0}")]
    OrderTooSmall(usize),
    #[error("suite `{suite}` does not apply to {spec}")]
    SuiteMismatch { suite: Suite, spec: AlgebraSpec },
    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

/// Symbolic c or a fixed rational value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CMode {
    Symbolic,
    Value(Rational),
}

impl CMode {
    pub fn as_poly(&self) -> MultiPoly {
        match self {
            CMode::Symbolic => MultiPoly::c(),
            CMode::Value(r) => MultiPoly::constant(r.clone()),
        }
    }
}

impl FromStr for CMode {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "sym" || s == "c" {
            return Ok(CMode::Symbolic);
        }
        parse_rational(s).map(CMode::Value).ok_or_else(|| ConfigError::BadValue { key: "c".into(), value: s.into() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

impl FromStr for OutputFormat {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            other => Err(ConfigError::BadValue { key: "format".into(), value: other.into() }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    /// Ternary relation for η (and φ when c is given).
    Ternary,
    /// Reflection and symmetry relations for S_η.
    Twisted,
    /// Reflection and symmetry for φ in the tensor model.
    Tensor,
    /// Commutators with the first coefficient matrix.
    Commutator,
    /// Image coefficients commute with g_m(n).
    Centralizer,
    /// Ideal coherence along the ranks n, n−1, …, 2.
    Projection,
    /// Centrality of the quantum determinant coefficients.
    Qdet,
    /// Small fixed collection covering every suite, used for golden files.
    Reference,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Ternary,
        Suite::Twisted,
        Suite::Tensor,
        Suite::Commutator,
        Suite::Centralizer,
        Suite::Projection,
        Suite::Qdet,
        Suite::Reference,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Ternary => "ternary",
            Suite::Twisted => "twisted",
            Suite::Tensor => "tensor",
            Suite::Commutator => "commutator",
            Suite::Centralizer => "centralizer",
            Suite::Projection => "projection",
            Suite::Qdet => "qdet",
            Suite::Reference => "reference",
        }
    }

    pub fn default_for(family: Family) -> Suite {
        if family == Family::A {
            Suite::Ternary
        } else {
            Suite::Twisted
        }
    }

    fn uses_two_variables(&self) -> bool {
        matches!(self, Suite::Ternary | Suite::Twisted | Suite::Tensor)
    }

    fn applies_to(&self, family: Family) -> bool {
        match self {
            Suite::Ternary | Suite::Qdet => family == Family::A,
            Suite::Twisted | Suite::Tensor => family != Family::A,
            _ => true,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| ConfigError::BadValue { key: "suite".into(), value: s.into() })
    }
}

/// Everything a suite run depends on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub spec: AlgebraSpec,
    pub m: usize,
    pub order: usize,
    pub c: CMode,
    pub suite: Suite,
    pub format: OutputFormat,
    pub jobs: usize,
    pub perturb: bool,
}

fn family_name(s: &str) -> Option<Family> {
    match s {
        "gl" | "a" | "A" => Some(Family::A),
        "o-odd" | "b" | "B" => Some(Family::B),
        "sp" | "c" | "C" => Some(Family::C),
        "o-even" | "d" | "D" => Some(Family::D),
        _ => None,
    }
}

/// `gl:3`, `o:5`, `sp:4`, or a family name (`gl`, `o-odd`, `sp`, `o-even`) with a rank.
pub fn resolve_spec(spec: &str, n: Option<usize>) -> Result<AlgebraSpec, ConfigError> {
    let spec = spec.trim();
    if spec.contains(':') {
        let parsed: AlgebraSpec = spec.parse().map_err(|_| ConfigError::BadSpec(spec.into()))?;
        if let Some(given) = n {
            if given != parsed.rank {
                return Err(ConfigError::RankConflict { spec: parsed, given });
            }
        }
        return Ok(parsed);
    }
    let family = family_name(spec).ok_or_else(|| ConfigError::BadSpec(spec.into()))?;
    let n = n.ok_or(ConfigError::Missing("--n for a bare family name"))?;
    Ok(AlgebraSpec::new(family, n))
}

/// `key = value` lines; `#` starts a comment.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut out = BTreeMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) =
            line.split_once('=').ok_or_else(|| ConfigError::BadLine { line: k + 1, message: "expected key = value".into() })?;
        let key = key.trim().to_string();
        if !["spec", "n", "m", "order", "c", "suite", "format", "jobs", "perturb"].contains(&key.as_str()) {
            return Err(ConfigError::BadLine { line: k + 1, message: format!("unknown key `{key}`") });
        }
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

pub fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.trim().parse().map_err(|_| ConfigError::BadValue { key: key.into(), value: value.into() })
}

/// Upper bound on the number of cleared-coefficient comparisons a suite run may request.
const WORK_LIMIT: usize = 60_000;

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.m >= self.spec.rank {
            return Err(ConfigError::MBound { m: self.m, n: self.spec.rank });
        }
        if self.suite != Suite::Reference && !self.suite.applies_to(self.spec.family) {
            return Err(ConfigError::SuiteMismatch { suite: self.suite, spec: self.spec });
        }
        if self.suite.uses_two_variables() && self.order < 2 {
            return Err(ConfigError::OrderTooSmall(self.order));
        }
        let size = self.spec.size();
        let work = match self.suite {
            Suite::Ternary | Suite::Twisted | Suite::Tensor => size.pow(4) * self.order * self.order,
            Suite::Projection | Suite::Centralizer => size * size * self.order.pow(3),
            _ => size * size * self.order,
        };
        if work > WORK_LIMIT || self.spec.rank > 6 || self.order > 12 {
            return Err(ConfigError::ResourceLimit(format!(
                "{} at {} with K={} exceeds the desk-scale budget",
                self.suite, self.spec, self.order
            )));
        }
        Ok(())
    }
}
