//! Problem files: JSON with polynomial strings over the declared variables.

use std::path::Path;

use linesing::derlog::{self, SpacePair};
use linesing::invariants::{Config, Problem};
use linesing::mora::DEFAULT_BUDGET;
use linesing::{Derivation, Error, Weights};
use serde::Deserialize;

use crate::Failure;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    /// The first one is the coordinate along the axis.
    pub variables: Vec<String>,
    #[serde(default)]
    pub weights: Option<Vec<u32>>,
    pub equations: Vec<String>,
    pub f: String,
    /// Generators of `D_X`, Euler derivation first, one component per
    /// variable. Required for complete intersections of codimension ≥ 2.
    #[serde(default)]
    pub derlog: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub n_max: Option<u32>,
    pub budget: Option<u64>,
    pub k_min: Option<u32>,
    pub k_max: Option<u32>,
}

/// Settings from the command line or environment, which win over the file.
#[derive(Debug, Default, Clone, Copy)]
pub struct Overrides {
    pub n_max: Option<u32>,
    pub budget: Option<u64>,
}

pub fn read(path: &Path) -> Result<ProblemFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Schema(format!("{}: {e}", path.display())))
}

impl ProblemFile {
    pub fn build(&self, over: Overrides) -> Result<Problem, Failure> {
        let budget = over.budget.or(self.options.budget).unwrap_or(DEFAULT_BUDGET);
        let n = self.variables.len();
        let ring = linesing::Ring::new(self.variables.iter().map(String::as_str))?;
        let parse = |what: &str, s: &str| {
            ring.parse(s).map_err(|e| Failure::Schema(format!("{what}: {e}")))
        };
        let hs = self
            .equations
            .iter()
            .enumerate()
            .map(|(i, s)| parse(&format!("equation {i}"), s))
            .collect::<Result<Vec<_>, _>>()?;
        let weights = self.weights.clone().map(Weights::new).transpose()?;
        let space = SpacePair::with_budget(self.variables.clone(), weights, hs, budget)?;
        let f = parse("f", &self.f)?;
        let problem = match &self.derlog {
            Some(gens) => {
                let mut derivations = Vec::new();
                for (i, comps) in gens.iter().enumerate() {
                    if comps.len() != n {
                        return Err(Failure::Schema(format!(
                            "derivation {i} has {} components, expected {n}",
                            comps.len()
                        )));
                    }
                    let comps = comps
                        .iter()
                        .map(|s| parse(&format!("derivation {i}"), s))
                        .collect::<Result<Vec<_>, _>>()?;
                    derivations.push(Derivation::new(comps)?);
                }
                let basis = derlog::load_derlog(&space, derivations)?;
                Problem::new(space, basis, f)?
            }
            None if space.p() >= 2 => {
                return Err(Failure::Schema("derlog generators are required when p ≥ 2".into()));
            }
            None => Problem::hypersurface(space, f)?,
        };
        let mut config = Config::default();
        if let Some(v) = over.n_max.or(self.options.n_max) {
            config.n_max = v;
        }
        if let Some(v) = self.options.k_min {
            config.k_min = v;
        }
        if let Some(v) = self.options.k_max {
            config.k_max = v;
        }
        if config.k_min == 0 {
            return Err(Error::PreconditionViolation("k_min must be positive".into()).into());
        }
        Ok(problem.with_config(config))
    }
}
