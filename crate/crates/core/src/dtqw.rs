//! One-dimensional discrete-time quantum walk, `U = T (I ⊗ C)`.
//!
//! The conditional shift `T` moves coin-`|0⟩` amplitude one site right and
//! coin-`|1⟩` amplitude one site left. The lattice is finite, `[−n_max, n_max]`,
//! without wraparound; [`run_walk`] sizes it so the walker never reaches the edge.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::walk_hybrid::CoinOperator;

const NORM_TOLERANCE: f64 = 1e-10;

/// Walker amplitudes over (position, coin); index `(x + n_max) * 2 + coin`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    n_max: usize,
    amplitudes: Vec<Complex64>,
}

impl WalkState {
    /// Walker localized at `position` with the given coin state.
    pub fn localized(n_max: usize, position: i64, coin: [Complex64; 2]) -> Result<Self> {
        let norm: f64 = coin.iter().map(Complex64::norm_sqr).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidDensity(format!("coin state has norm² {norm}")));
        }
        let sites = 2 * n_max + 1;
        let site = position + n_max as i64;
        if site < 0 || site >= sites as i64 {
            return Err(Error::BoundaryOverflow);
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); sites * 2];
        amplitudes[site as usize * 2] = coin[0];
        amplitudes[site as usize * 2 + 1] = coin[1];
        Ok(Self { n_max, amplitudes })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn amplitude(&self, position: i64, coin: usize) -> Complex64 {
        let site = (position + self.n_max as i64) as usize;
        self.amplitudes[site * 2 + coin]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    fn positions(&self) -> impl Iterator<Item = i64> {
        let n = self.n_max as i64;
        -n..=n
    }

    /// Probability of each lattice site, coin traced out.
    pub fn distribution(&self) -> PositionDistribution {
        PositionDistribution(
            self.positions()
                .map(|x| (x, self.amplitude(x, 0).norm_sqr() + self.amplitude(x, 1).norm_sqr()))
                .collect(),
        )
    }
}

/// One walk step: coin on every site, then the conditional shift.
pub fn walk_step(state: &WalkState, coin: &CoinOperator) -> Result<WalkState> {
    let n = state.n_max as i64;
    for x in [-n, n] {
        if state.amplitude(x, 0) != Complex64::new(0.0, 0.0)
            || state.amplitude(x, 1) != Complex64::new(0.0, 0.0)
        {
            return Err(Error::BoundaryOverflow);
        }
    }
    let c = coin.matrix();
    let mut next = vec![Complex64::new(0.0, 0.0); state.amplitudes.len()];
    for site in 1..2 * state.n_max {
        let a0 = state.amplitudes[site * 2];
        let a1 = state.amplitudes[site * 2 + 1];
        next[(site + 1) * 2] += c[(0, 0)] * a0 + c[(0, 1)] * a1;
        next[(site - 1) * 2 + 1] += c[(1, 0)] * a0 + c[(1, 1)] * a1;
    }
    Ok(WalkState {
        n_max: state.n_max,
        amplitudes: next,
    })
}

/// Runs `steps` steps from the origin on a lattice of `2·steps + 1` sites.
pub fn run_walk(steps: usize, initial_coin: [Complex64; 2], coin: &CoinOperator) -> Result<PositionDistribution> {
    let mut state = WalkState::localized(steps, 0, initial_coin)?;
    for _ in 0..steps {
        state = walk_step(&state, coin)?;
    }
    Ok(state.distribution())
}

/// Position → probability, ordered by position.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionDistribution(pub BTreeMap<i64, f64>);

impl PositionDistribution {
    pub fn probability(&self, position: i64) -> f64 {
        self.0.get(&position).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.0.values().sum()
    }

    /// `position,probability` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("position,probability\n");
        for (x, p) in &self.0 {
            writeln!(out, "{x},{p}").expect("writing to a String");
        }
        out
    }
}

/// Σ x·P(x).
pub fn mean_displacement(dist: &PositionDistribution) -> f64 {
    dist.0.iter().map(|(&x, &p)| x as f64 * p).sum()
}
