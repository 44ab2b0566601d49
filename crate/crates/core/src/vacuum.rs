//! Vacuum-extended channels: a Kraus channel plus one vacuum amplitude per
//! Kraus operator.
//!
//! The vacuum sector itself is never materialized. The amplitudes enter only
//! through the spatial-superposition Kraus operators built in
//! [`crate::supermaps`]. They are tied to the specific Kraus list they were
//! given with; re-expressing the channel in another Kraus basis would require
//! transforming them too, which this module does not attempt.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::{ChannelSpec, KrausChannel};
use crate::error::{Error, Result};

/// Tolerance on `Σ|α_i|² = 1`.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct VacuumExtendedChannel {
    channel: KrausChannel,
    amplitudes: Vec<Complex64>,
}

impl VacuumExtendedChannel {
    pub fn new(channel: KrausChannel, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != channel.kraus_count() {
            return Err(Error::AmplitudeCount {
                expected: channel.kraus_count(),
                found: amplitudes.len(),
            });
        }
        let sum: f64 = amplitudes.iter().map(Complex64::norm_sqr).sum();
        if !((sum - 1.0).abs() <= NORMALIZATION_TOLERANCE) {
            return Err(Error::AmplitudeNormalization { sum });
        }
        Ok(Self { channel, amplitudes })
    }

    /// Every amplitude equal to `1/√n`.
    pub fn uniform(channel: KrausChannel) -> Self {
        let n = channel.kraus_count();
        let a = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
        Self {
            amplitudes: vec![a; n],
            channel,
        }
    }

    /// Amplitude 1 on Kraus operator `index`, 0 on the rest.
    pub fn concentrated(channel: KrausChannel, index: usize) -> Result<Self> {
        let n = channel.kraus_count();
        if index >= n {
            return Err(Error::IndexOutOfRange { index, len: n });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { channel, amplitudes })
    }

    pub fn channel(&self) -> &KrausChannel {
        &self.channel
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.channel.dim()
    }

    /// `Σ_i α_i^* K_i`, the operator a coherent branch sees through this channel.
    pub fn coherent_operator(&self) -> crate::numerics::ComplexMatrix {
        let d = self.dim();
        self.channel
            .kraus()
            .iter()
            .zip(&self.amplitudes)
            .fold(crate::numerics::ComplexMatrix::zeros(d, d), |acc, (k, a)| {
                &acc + &k.scale(a.conj())
            })
    }
}

/// Channel spec plus optional `vacuum_amplitudes`. When the field is absent the
/// uniform extension is used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtensionSpec {
    #[serde(flatten)]
    pub channel: ChannelSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vacuum_amplitudes: Option<Vec<Complex64>>,
}

impl ExtensionSpec {
    pub fn from_extension(ext: &VacuumExtendedChannel, name: Option<String>) -> Self {
        Self {
            channel: ChannelSpec::from_channel(ext.channel(), name),
            vacuum_amplitudes: Some(ext.amplitudes().to_vec()),
        }
    }

    pub fn to_extension(&self) -> Result<VacuumExtendedChannel> {
        let ch = self.channel.to_channel()?;
        match &self.vacuum_amplitudes {
            Some(a) => VacuumExtendedChannel::new(ch, a.clone()),
            None => Ok(VacuumExtendedChannel::uniform(ch)),
        }
    }
}
