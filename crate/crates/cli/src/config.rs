//! Scenario configuration and resolution of the files and names it references.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use qpath_core::vacuum::ExtensionSpec;
use qpath_core::{CoinOperator, ComplexMatrix, DensityMatrix, VacuumExtendedChannel};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
        }
    }
}

impl From<qpath_core::Error> for CliError {
    fn from(e: qpath_core::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    SwitchEquiv,
    SpatialRun,
    SwitchRun,
    WalkHybrid,
    EbDemo,
    Dtqw,
    Sweep,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::SwitchEquiv => "switch-equiv",
            Scenario::SpatialRun => "spatial-run",
            Scenario::SwitchRun => "switch-run",
            Scenario::WalkHybrid => "walk-hybrid",
            Scenario::EbDemo => "eb-demo",
            Scenario::Dtqw => "dtqw",
            Scenario::Sweep => "sweep",
        }
    }
}

/// Channel families for randomized sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SweepFamily {
    /// Haar-random unitary pairs, one random carrier per trial.
    Unitary,
    /// Random Kraus channels with uniform vacuum amplitudes, checked over the probe set.
    UniformKraus,
}

/// Everything a scenario run needs. Paths and names are resolved lazily by the runners.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub channel_e: Option<PathBuf>,
    pub channel_d: Option<PathBuf>,
    /// `I`, `X`, `H`, or a path to a 2×2 matrix file.
    pub coin: Option<String>,
    /// `zero`, `one`, `plus`, `minus`, `mixed`, or a path to a matrix file.
    pub carrier: Option<String>,
    /// Control state for run scenarios; same naming as `carrier`.
    pub control: Option<String>,
    pub hops: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub expect_equivalent: bool,
    pub steps: usize,
    /// `0`, `1`, `plus`, `balanced`, or a path to a `[[re, im], [re, im]]` file.
    pub coin_state: String,
    pub trials: usize,
    pub dim: usize,
    pub kraus_count: usize,
    pub family: SweepFamily,
    pub search_paulis: bool,
}

impl ScenarioConfig {
    pub fn new(scenario: Scenario) -> Self {
        Self {
            scenario,
            channel_e: None,
            channel_d: None,
            coin: None,
            carrier: None,
            control: None,
            hops: 2,
            seed: 0,
            tolerance: qpath_core::walk_hybrid::DEFAULT_EQUIVALENCE_TOLERANCE,
            expect_equivalent: false,
            steps: 3,
            coin_state: "0".into(),
            trials: 100,
            dim: 2,
            kraus_count: 2,
            family: SweepFamily::Unitary,
            search_paulis: false,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tolerance > 0.0) {
            return Err(CliError::Validation(format!("tolerance must be > 0, got {}", self.tolerance)));
        }
        if self.scenario == Scenario::Sweep && (self.dim == 0 || self.kraus_count == 0) {
            return Err(CliError::Validation("sweep needs dim ≥ 1 and kraus-count ≥ 1".into()));
        }
        Ok(())
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn load_extension(path: &Path) -> Result<(ExtensionSpec, VacuumExtendedChannel), CliError> {
    let spec: ExtensionSpec = read_json(path)?;
    let ext = spec.to_extension()?;
    Ok((spec, ext))
}

pub fn resolve_coin(spec: Option<&str>, default: &str) -> Result<CoinOperator, CliError> {
    let spec = spec.unwrap_or(default);
    if let Some(coin) = CoinOperator::named(spec) {
        return Ok(coin);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(CliError::Parse(format!("unknown coin {spec:?}: expected I, X, H or a matrix file")));
    }
    let m: ComplexMatrix = read_json(path)?;
    Ok(CoinOperator::new(m)?)
}

/// Named states generalize to any dimension: `zero`/`one` are basis states,
/// `plus`/`minus` the uniform superpositions with alternating sign, `mixed` is `I/dim`.
pub fn resolve_state(spec: &str, dim: usize) -> Result<DensityMatrix, CliError> {
    let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
    let state = match spec {
        "zero" => DensityMatrix::basis(dim, 0)?,
        "one" => DensityMatrix::basis(dim, 1)?,
        "mixed" => DensityMatrix::maximally_mixed(dim),
        "plus" => DensityMatrix::from_ket(&vec![amp; dim])?,
        "minus" => {
            let ket: Vec<_> = (0..dim).map(|i| if i % 2 == 0 { amp } else { -amp }).collect();
            DensityMatrix::from_ket(&ket)?
        }
        path => {
            let p = Path::new(path);
            if !p.exists() {
                return Err(CliError::Parse(format!(
                    "unknown state {path:?}: expected zero, one, plus, minus, mixed or a matrix file"
                )));
            }
            let m: ComplexMatrix = read_json(p)?;
            let rho = DensityMatrix::new(m)?;
            if rho.dim() != dim {
                return Err(CliError::Validation(format!(
                    "state in {path} has dimension {}, expected {dim}",
                    rho.dim()
                )));
            }
            rho
        }
    };
    Ok(state)
}

pub fn resolve_coin_state(spec: &str) -> Result<[Complex64; 2], CliError> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    Ok(match spec {
        "0" => [Complex64::new(1.0, 0.0), z],
        "1" => [z, Complex64::new(1.0, 0.0)],
        "plus" => [Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
        "balanced" => [Complex64::new(h, 0.0), Complex64::new(0.0, h)],
        path => {
            let p = Path::new(path);
            if !p.exists() {
                return Err(CliError::Parse(format!(
                    "unknown coin state {path:?}: expected 0, 1, plus, balanced or a file"
                )));
            }
            let v: Vec<Complex64> = read_json(p)?;
            <[Complex64; 2]>::try_from(v)
                .map_err(|v| CliError::Validation(format!("coin state needs 2 amplitudes, got {}", v.len())))?
        }
    })
}
