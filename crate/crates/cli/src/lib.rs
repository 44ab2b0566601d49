//! Scenario runners behind the `qpath` binary.

pub mod config;
pub mod scenarios;
pub mod sweep;

pub use config::{CliError, Scenario, ScenarioConfig, SweepFamily};
pub use scenarios::{run_scenario, Report, ScenarioOutput};
