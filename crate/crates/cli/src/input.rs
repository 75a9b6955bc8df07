//! Input files: a TOML table with `vars`, `weights`, `degree`, `omega` and optional `[options]`.

use std::path::Path;

use hochserre_core::{parse_poly, Error as CoreError, OrbifoldModel, Polynomial, VarSystem};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    pub vars: Vec<String>,
    pub weights: Vec<i64>,
    pub degree: i64,
    pub omega: String,
    #[serde(default)]
    pub options: FileOptions,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileOptions {
    pub oracle: Option<bool>,
    pub assume_restriction_action: Option<bool>,
    pub format: Option<Format>,
    pub modulus: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

/// Anything that stops a run before a result exists.
#[derive(Debug)]
pub enum InputError {
    Io(String),
    Toml(String),
    Invalid(String),
    Core(CoreError),
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputError::Io(m) => write!(f, "cannot read input: {m}"),
            InputError::Toml(m) => write!(f, "malformed input file: {m}"),
            InputError::Invalid(m) => write!(f, "invalid input: {m}"),
            InputError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for InputError {
    fn from(e: CoreError) -> Self {
        InputError::Core(e)
    }
}

impl InputFile {
    pub fn load(path: &Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| InputError::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self, InputError> {
        toml::from_str(text).map_err(|e| InputError::Toml(e.message().to_string()))
    }

    pub fn var_system(&self) -> Result<VarSystem, InputError> {
        if self.vars.len() != self.weights.len() {
            return Err(InputError::Invalid(format!(
                "{} variable names but {} weights",
                self.vars.len(),
                self.weights.len()
            )));
        }
        if self.degree < 2 {
            return Err(InputError::Invalid(format!(
                "degree must be at least 2, got {}",
                self.degree
            )));
        }
        let degree = u32::try_from(self.degree)
            .map_err(|_| InputError::Invalid(format!("degree {} is too large", self.degree)))?;
        let weights = self
            .weights
            .iter()
            .map(|&w| {
                u32::try_from(w)
                    .ok()
                    .filter(|&w| w >= 1)
                    .ok_or_else(|| InputError::Invalid(format!("weight {w} is not a positive integer")))
            })
            .collect::<Result<Vec<u32>, _>>()?;
        Ok(VarSystem::new(self.vars.clone(), weights, degree)?)
    }

    pub fn build(&self) -> Result<(VarSystem, Polynomial, OrbifoldModel), InputError> {
        let vars = self.var_system()?;
        let omega = parse_poly(&self.omega, &vars)?;
        if omega.is_zero() {
            return Err(CoreError::ZeroPolynomial.into());
        }
        let model = OrbifoldModel::new(vars.clone(), omega.clone())?;
        Ok((vars, omega, model))
    }
}
