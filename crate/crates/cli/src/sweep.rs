//! Randomized equivalence sweeps.
//!
//! Trial `t` draws from a ChaCha8 stream `t` keyed by the sweep seed, so every
//! trial is reproducible on its own and results do not depend on scheduling.

use qpath_core::channels::{random_channel_with, unitary_channel};
use qpath_core::numerics::{haar_unitary_with, random_density_with};
use qpath_core::walk_hybrid::{switch_equivalence, switch_equivalence_on_probes};
use qpath_core::VacuumExtendedChannel;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{resolve_coin, CliError, ScenarioConfig, SweepFamily};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialResult {
    pub trial: usize,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepAggregate {
    pub trials: Vec<TrialResult>,
    pub count: usize,
    pub max: Option<f64>,
    pub mean: Option<f64>,
    pub tolerance: f64,
    /// `None` for an empty sweep.
    pub equivalent: Option<bool>,
}

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn run_trial(cfg: &ScenarioConfig, coin: &qpath_core::CoinOperator, trial: usize) -> Result<f64, CliError> {
    let mut rng = trial_rng(cfg.seed, trial);
    let distance = match cfg.family {
        SweepFamily::Unitary => {
            let u1 = haar_unitary_with(cfg.dim, &mut rng);
            let u2 = haar_unitary_with(cfg.dim, &mut rng);
            let rho = random_density_with(cfg.dim, &mut rng);
            let e = VacuumExtendedChannel::uniform(unitary_channel(u1)?);
            let d = VacuumExtendedChannel::uniform(unitary_channel(u2)?);
            switch_equivalence(&e, &d, coin, &rho, cfg.tolerance)?.distance
        }
        SweepFamily::UniformKraus => {
            let e = VacuumExtendedChannel::uniform(random_channel_with(cfg.dim, cfg.kraus_count, &mut rng));
            let d = VacuumExtendedChannel::uniform(random_channel_with(cfg.dim, cfg.kraus_count, &mut rng));
            switch_equivalence_on_probes(&e, &d, coin, cfg.tolerance)?.distance
        }
    };
    Ok(distance)
}

pub fn sweep(cfg: &ScenarioConfig) -> Result<SweepAggregate, CliError> {
    let coin = resolve_coin(cfg.coin.as_deref(), "X")?;
    let distances: Vec<f64> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, &coin, t))
        .collect::<Result<_, _>>()?;
    let count = distances.len();
    let max = distances.iter().copied().reduce(f64::max);
    let mean = (count > 0).then(|| distances.iter().sum::<f64>() / count as f64);
    Ok(SweepAggregate {
        trials: distances
            .into_iter()
            .enumerate()
            .map(|(trial, distance)| TrialResult { trial, distance })
            .collect(),
        count,
        max,
        mean,
        tolerance: cfg.tolerance,
        equivalent: max.map(|m| m <= cfg.tolerance),
    })
}

/// Returns (resolved config, results, verdict) for the report.
pub(crate) fn run_sweep(cfg: &ScenarioConfig) -> Result<(Value, Value, String), CliError> {
    let coin = resolve_coin(cfg.coin.as_deref(), "X")?;
    let agg = sweep(cfg)?;
    let verdict = match agg.equivalent {
        None => "empty",
        Some(true) => "equivalent",
        Some(false) => "not-equivalent",
    };
    let resolved = json!({ "coin": coin.matrix(), "rng": "chacha8, stream = trial index" });
    let results = serde_json::to_value(&agg).expect("aggregate is serializable");
    Ok((resolved, results, verdict.to_string()))
}
