//! Scenario configuration files (TOML).

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::nonlinearity::{Nonlinearity, Term};
use crate::system::{PowerSystemSpec, SystemSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    #[serde(alias = "solve")]
    Existence,
    Multiplicity,
    Uniqueness,
    #[serde(alias = "nonexist")]
    Nonexistence,
    #[serde(alias = "eigen")]
    Eigenvalue,
    Verify,
    Bounds,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    /// Number of equations; optional, checked against `k` when given.
    pub n: Option<usize>,
    #[serde(rename = "N")]
    pub dim: u32,
    pub k: Vec<u32>,
    /// Exponents of a power system `f_i = v^{gamma_i}`.
    pub gamma: Option<Vec<f64>>,
    /// Monomials `{ coeff, t_power, v_power }` per equation.
    pub terms: Option<Vec<Vec<Term>>>,
    #[serde(rename = "M")]
    pub grid: Option<usize>,
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
    pub damping: Option<f64>,
    pub r_min: Option<f64>,
    pub r_max: Option<f64>,
    pub points: Option<usize>,
    pub seed: Option<u64>,
    pub starts: Option<usize>,
    pub xi: Option<f64>,
    /// Parameter vectors for the eigenvalue relation table.
    pub lambdas: Option<Vec<Vec<f64>>>,
    pub r0: Option<f64>,
    #[serde(rename = "R0")]
    pub big_r0: Option<f64>,
    /// Candidate solution to check in the `verify` scenario.
    pub solution_csv: Option<PathBuf>,
}

fn config_err(msg: impl std::fmt::Display) -> Error {
    Error::Config(msg.to_string())
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(config_err)?;
        config.validate()?;
        Ok(config)
    }

    /// Reads a config file; relative `solution_csv` paths resolve against
    /// the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))?;
        let mut config = Self::from_toml(&text)?;
        if let (Some(csv), Some(dir)) = (&config.solution_csv, path.parent()) {
            if csv.is_relative() {
                config.solution_csv = Some(dir.join(csv));
            }
        }
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        if let Some(n) = self.n {
            if n != self.k.len() {
                return Err(config_err(format!(
                    "n = {n} but k has {} entries",
                    self.k.len()
                )));
            }
        }
        match (&self.gamma, &self.terms) {
            (Some(_), Some(_)) => return Err(config_err("give either gamma or terms, not both")),
            (None, None) => return Err(config_err("missing gamma or terms")),
            _ => {}
        }
        if let Some(m) = self.grid {
            if m < 7 {
                return Err(config_err(format!(
                    "M = {m} is too small (need at least 7)"
                )));
            }
        }
        self.system()?;
        Ok(())
    }

    /// The power-system view, when `gamma` was given.
    pub fn power_system(&self) -> Result<Option<PowerSystemSpec>> {
        match &self.gamma {
            Some(g) => PowerSystemSpec::new(self.dim, self.k.clone(), g.clone())
                .map(Some)
                .map_err(config_err),
            None => Ok(None),
        }
    }

    pub fn system(&self) -> Result<SystemSpec> {
        if let Some(p) = self.power_system()? {
            return Ok(p.to_system());
        }
        let terms = self.terms.as_ref().expect("validated");
        let f = terms
            .iter()
            .map(|t| Nonlinearity::new(t.clone()))
            .collect::<Result<Vec<_>>>()
            .map_err(config_err)?;
        SystemSpec::new(self.dim, self.k.clone(), f).map_err(config_err)
    }

    pub fn grid_size(&self) -> usize {
        self.grid.unwrap_or(crate::grid::DEFAULT_GRID)
    }

    pub fn tol(&self) -> f64 {
        self.tol.unwrap_or(1e-11)
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter.unwrap_or(10_000)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_power_and_terms() {
        let c = ScenarioConfig::from_toml(
            "scenario = \"solve\"\nN = 2\nk = [1, 1]\ngamma = [0.5, 0.5]\n",
        )
        .unwrap();
        assert_eq!(c.scenario, ScenarioKind::Existence);
        assert!(c.power_system().unwrap().is_some());
        let c = ScenarioConfig::from_toml(
            "scenario = \"multiplicity\"\nN = 2\nk = [1, 1]\nterms = [[{coeff = 0.5, t_power = 0.0, v_power = 0.5}], [{coeff = 1.0, t_power = 1.0, v_power = 3.0}]]\n",
        )
        .unwrap();
        assert_eq!(c.system().unwrap().f()[1].terms()[0].t_power, 1.0);
    }

    #[test]
    fn rejects_bad_configs() {
        for text in [
            "scenario = \"solve\"\nN = 2\nk = [1, 1]\n",
            "scenario = \"solve\"\nN = 2\nk = [1, 3]\ngamma = [1.0, 1.0]\n",
            "scenario = \"solve\"\nN = 2\nn = 3\nk = [1, 1]\ngamma = [1.0, 1.0]\n",
            "scenario = \"fly\"\nN = 2\nk = [1, 1]\ngamma = [1.0, 1.0]\n",
            "scenario = \"solve\"\nN = 2\nk = [1, 1]\ngamma = [1.0, 1.0]\nbogus = 1\n",
            "scenario = \"solve\"\nN = 2\nk = [1, 1]\ngamma = [1.0, 1.0]\nM = 3\n",
        ] {
            assert!(
                matches!(ScenarioConfig::from_toml(text), Err(Error::Config(_))),
                "{text}"
            );
        }
    }
}
