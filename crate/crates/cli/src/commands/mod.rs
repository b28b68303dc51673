pub mod critical;
pub mod orbit;
pub mod phase_space;
pub mod spectrum;
pub mod spin_check;

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::CliError;
use crate::output::OutputDir;

pub struct Context {
    pub out: OutputDir,
    pub report: Vec<String>,
    pub warnings: Vec<String>,
}

impl Context {
    pub fn create(root: &Path) -> Result<Self, CliError> {
        Ok(Self {
            out: OutputDir::create(root)?,
            report: Vec::new(),
            warnings: Vec::new(),
        })
    }

    pub fn say(&mut self, line: impl Into<String>) {
        self.report.push(line.into());
    }

    pub fn warn(&mut self, line: impl Into<String>) {
        self.warnings.push(line.into());
    }
}

/// Resolved parameters, rendered so that feeding them back as flags
/// reproduces the run.
#[derive(Default)]
pub struct Params(BTreeMap<String, String>);

impl Params {
    pub fn set(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.0.insert(key.to_string(), value.to_string());
        self
    }

    pub fn set_opt<T: ToString>(&mut self, key: &str, value: Option<T>) -> &mut Self {
        if let Some(v) = value {
            self.set(key, v);
        }
        self
    }

    pub fn into_map(self) -> BTreeMap<String, String> {
        self.0
    }
}

/// Exactly one of the two reduced Hamiltonians must be selected.
pub fn select_reduced(
    lambda: Option<f64>,
    lambda_prime: Option<f64>,
) -> Result<spinorize_core::classical::ReducedHamiltonian, CliError> {
    use spinorize_core::classical::ReducedHamiltonian;
    match (lambda, lambda_prime) {
        (Some(l), None) => Ok(ReducedHamiltonian::rotating(l)?),
        (None, Some(l)) => Ok(ReducedHamiltonian::counter(l)?),
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--lambda and --lambda-prime: give only one (the reduced portraits are pure approximations)".into(),
        )),
        (None, None) => Err(CliError::Usage("--lambda or --lambda-prime is required".into())),
    }
}
