//! Kraus-operator channels.
//!
//! A [`KrausChannel`] is validated on construction: the Kraus operators must be
//! square, of equal dimension, and satisfy `Σ K†K = I` within
//! [`CPTP_TOLERANCE`] entrywise. Channels are compared as maps (their action on
//! the matrix-unit basis), never by their Kraus lists.

mod choi;
mod library;

pub use choi::{choi, is_entanglement_breaking};
pub use library::{bit_flip, depolarizing, dephasing, eb_xz, identity, unitary_channel};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{haar_unitary_with, ComplexMatrix};
pub use crate::state::DensityMatrix;

/// Entrywise tolerance on the closure residual `Σ K†K − I`.
pub const CPTP_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    dim: usize,
    kraus: Vec<ComplexMatrix>,
}

impl KrausChannel {
    /// Validates a Kraus list into a channel.
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or(Error::EmptyKraus)?;
        let dim = first.ensure_square()?;
        for k in &kraus {
            let d = k.ensure_square()?;
            if d != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: d });
            }
        }
        let residual = closure_residual(&kraus, dim);
        if residual > CPTP_TOLERANCE {
            return Err(Error::NotCptp { residual });
        }
        Ok(Self { dim, kraus })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn kraus_count(&self) -> usize {
        self.kraus.len()
    }

    /// max entrywise |Σ K†K − I|.
    pub fn closure_residual(&self) -> f64 {
        closure_residual(&self.kraus, self.dim)
    }

    /// Σ K X K† for an arbitrary square operator X.
    pub fn apply_operator(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_dim(x.ensure_square()?)?;
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for k in &self.kraus {
            out = &out + &(&(k * x) * &k.adjoint());
        }
        Ok(out)
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        DensityMatrix::new(self.apply_operator(rho.matrix())?)
    }

    /// `outer ∘ inner`: Kraus list `{O_i I_j}`, i-major.
    pub fn compose(outer: &KrausChannel, inner: &KrausChannel) -> Result<KrausChannel> {
        outer.check_dim(inner.dim)?;
        let kraus = outer
            .kraus
            .iter()
            .flat_map(|o| inner.kraus.iter().map(move |i| o * i))
            .collect();
        KrausChannel::new(kraus)
    }

    /// Largest entrywise output difference over the `dim²` matrix units `|i⟩⟨j|`.
    pub fn map_distance(&self, other: &KrausChannel) -> Result<f64> {
        self.check_dim(other.dim)?;
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut unit = ComplexMatrix::zeros(self.dim, self.dim);
                unit[(i, j)] = num_complex::Complex64::new(1.0, 0.0);
                let a = self.apply_operator(&unit)?;
                let b = other.apply_operator(&unit)?;
                worst = worst.max(a.max_abs_diff(&b));
            }
        }
        Ok(worst)
    }

    pub fn same_map(&self, other: &KrausChannel, tol: f64) -> Result<bool> {
        Ok(self.map_distance(other)? <= tol)
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }
}

fn closure_residual(kraus: &[ComplexMatrix], dim: usize) -> f64 {
    let mut sum = ComplexMatrix::zeros(dim, dim);
    for k in kraus {
        sum = &sum + &(&k.adjoint() * k);
    }
    sum.max_abs_diff(&ComplexMatrix::identity(dim))
}

/// Random channel with `kraus_count` operators, read off a Haar isometry
/// `V: C^dim → C^dim ⊗ C^kraus_count` (environment index slow).
pub fn random_channel_with<R: Rng + ?Sized>(dim: usize, kraus_count: usize, rng: &mut R) -> KrausChannel {
    assert!(dim >= 1 && kraus_count >= 1);
    let u = haar_unitary_with(dim * kraus_count, rng);
    let kraus = (0..kraus_count)
        .map(|e| ComplexMatrix::from_fn(dim, dim, |r, c| u[(e * dim + r, c)]))
        .collect();
    KrausChannel::new(kraus).expect("isometry blocks are a valid Kraus set")
}

/// On-disk channel description: `dim`, `kraus` (list of matrices, entries as
/// `[re, im]`), optional `name`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub kraus: Vec<ComplexMatrix>,
}

impl ChannelSpec {
    pub fn from_channel(ch: &KrausChannel, name: Option<String>) -> Self {
        Self {
            name,
            dim: ch.dim(),
            kraus: ch.kraus().to_vec(),
        }
    }

    pub fn to_channel(&self) -> Result<KrausChannel> {
        let ch = KrausChannel::new(self.kraus.clone())?;
        if ch.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: ch.dim(),
            });
        }
        Ok(ch)
    }
}
