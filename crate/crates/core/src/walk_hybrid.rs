//! Spatial superposition driven like a quantum walk.
//!
//! One hop is `W = S ∘ (I ⊗ C)`: toss the control with the coin `C`, then route
//! the carrier through the spatial superposition `S`. With `C = X` and the
//! control prepared in `|+⟩`, two hops of `W` reproduce the quantum switch of
//! the two channels exactly whenever both channels are unitary. For general
//! channels the diagonal control blocks always match the switch, while the
//! off-diagonal blocks carry the coherent operators `Σ α_i^* E_i` and
//! `Σ β_j^* D_j` of the vacuum extensions.
//!
//! Equivalence is decided numerically: outputs are compared by trace distance,
//! either for a single carrier or over an informationally complete probe set.

use num_complex::Complex64;
use serde::Serialize;

use crate::channels::{DensityMatrix, KrausChannel};
use crate::error::{Error, Result};
use crate::numerics::gates;
use crate::numerics::{tensor, trace_distance, ComplexMatrix};
use crate::supermaps::{
    apply_joint, apply_to_joint, partially_coherent_switch, plus_control, quantum_switch,
    spatial_superposition, JointState,
};
use crate::vacuum::VacuumExtendedChannel;

/// Default trace-distance tolerance for equivalence verdicts.
pub const DEFAULT_EQUIVALENCE_TOLERANCE: f64 = 1e-9;

/// Amplitude products at or below this modulus count as vanishing.
pub const AMPLITUDE_ZERO_TOLERANCE: f64 = 1e-12;

const COIN_TOLERANCE: f64 = 1e-12;

/// A 2×2 unitary acting on the control qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinOperator {
    matrix: ComplexMatrix,
}

impl CoinOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.rows() != 2 || matrix.cols() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: matrix.rows(),
            });
        }
        let residual = matrix.unitarity_residual();
        if residual > COIN_TOLERANCE {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self { matrix })
    }

    pub fn identity() -> Self {
        Self { matrix: gates::identity() }
    }

    pub fn pauli_x() -> Self {
        Self { matrix: gates::pauli_x() }
    }

    pub fn hadamard() -> Self {
        Self { matrix: gates::hadamard() }
    }

    /// Looks up `I`, `X` or `H`.
    pub fn named(name: &str) -> Option<Self> {
        match name {
            "I" => Some(Self::identity()),
            "X" => Some(Self::pauli_x()),
            "H" => Some(Self::hadamard()),
            _ => None,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub distance: f64,
    pub tolerance: f64,
    pub equivalent: bool,
    pub hop_count: usize,
}

impl EquivalenceReport {
    fn new(distance: f64, tolerance: f64, hop_count: usize) -> Self {
        Self {
            distance,
            tolerance,
            equivalent: distance <= tolerance,
            hop_count,
        }
    }
}

/// `W = S ∘ (I ⊗ C)` with Kraus operators `S_k (I ⊗ C)`.
pub fn hop_channel(s: &KrausChannel, coin: &CoinOperator) -> Result<KrausChannel> {
    if !s.dim().is_multiple_of(2) {
        return Err(Error::DimensionMismatch {
            expected: s.dim() + 1,
            found: s.dim(),
        });
    }
    let toss = tensor(&ComplexMatrix::identity(s.dim() / 2), coin.matrix());
    KrausChannel::new(s.kraus().iter().map(|k| k * &toss).collect())
}

/// Applies `w` to `carrier ⊗ control` `hops` times.
pub fn evolve(w: &KrausChannel, hops: usize, carrier: &DensityMatrix, control: &DensityMatrix) -> Result<JointState> {
    let mut state = JointState::product(carrier, control)?;
    if w.dim() != state.carrier_dim() * 2 {
        return Err(Error::DimensionMismatch {
            expected: state.carrier_dim() * 2,
            found: w.dim(),
        });
    }
    for _ in 0..hops {
        state = apply_to_joint(w, &state)?;
    }
    Ok(state)
}

/// Two hops of the walk built from `e` and `d`, control started in `|+⟩`.
pub fn two_hop_output(
    e: &VacuumExtendedChannel,
    d: &VacuumExtendedChannel,
    coin: &CoinOperator,
    carrier: &DensityMatrix,
) -> Result<JointState> {
    let w = hop_channel(&spatial_superposition(e, d)?, coin)?;
    evolve(&w, 2, carrier, &plus_control())
}

/// Trace distance between the two-hop walk output and the quantum switch of
/// the underlying channels, both on `carrier ⊗ |+⟩⟨+|`.
pub fn switch_equivalence(
    e: &VacuumExtendedChannel,
    d: &VacuumExtendedChannel,
    coin: &CoinOperator,
    carrier: &DensityMatrix,
    tolerance: f64,
) -> Result<EquivalenceReport> {
    let switch = quantum_switch(e.channel(), d.channel())?;
    compare_two_hop(e, d, coin, &switch, std::slice::from_ref(carrier), tolerance)
}

/// [`switch_equivalence`] maximized over [`probe_states`] of the carrier dimension.
pub fn switch_equivalence_on_probes(
    e: &VacuumExtendedChannel,
    d: &VacuumExtendedChannel,
    coin: &CoinOperator,
    tolerance: f64,
) -> Result<EquivalenceReport> {
    let switch = quantum_switch(e.channel(), d.channel())?;
    compare_two_hop(e, d, coin, &switch, &probe_states(e.dim()), tolerance)
}

/// Worst trace distance between the two-hop walk and an arbitrary joint-space
/// `reference` map over the given carriers.
pub fn compare_two_hop(
    e: &VacuumExtendedChannel,
    d: &VacuumExtendedChannel,
    coin: &CoinOperator,
    reference: &KrausChannel,
    carriers: &[DensityMatrix],
    tolerance: f64,
) -> Result<EquivalenceReport> {
    let w = hop_channel(&spatial_superposition(e, d)?, coin)?;
    let mut worst = 0.0_f64;
    for carrier in carriers {
        let walked = evolve(&w, 2, carrier, &plus_control())?;
        let target = apply_joint(reference, carrier, &plus_control())?;
        worst = worst.max(trace_distance(walked.joint(), target.joint())?);
    }
    Ok(EquivalenceReport::new(worst, tolerance, 2))
}

/// `dim²` pure states whose projectors span all operators on `C^dim`:
/// `|k⟩`, `(|k⟩+|l⟩)/√2` and `(|k⟩+i|l⟩)/√2` for `k < l`.
pub fn probe_states(dim: usize) -> Vec<DensityMatrix> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(dim * dim);
    for k in 0..dim {
        out.push(DensityMatrix::basis(dim, k).expect("k < dim"));
    }
    for k in 0..dim {
        for l in k + 1..dim {
            for phase in [Complex64::new(h, 0.0), Complex64::new(0.0, h)] {
                let mut ket = vec![Complex64::new(0.0, 0.0); dim];
                ket[k] = Complex64::new(h, 0.0);
                ket[l] = phase;
                out.push(DensityMatrix::from_ket(&ket).expect("normalized"));
            }
        }
    }
    out
}

/// Switch whose coherent order superposition keeps only the Kraus pairs
/// `(i, j)` with non-vanishing vacuum amplitudes `α_i` and `β_j`; all other
/// pairs act with a decohered order. When [`cross_term_condition`] holds, the
/// two-hop walk with an `X` coin reproduces this map exactly.
pub fn surviving_operator_switch(e: &VacuumExtendedChannel, d: &VacuumExtendedChannel) -> Result<KrausChannel> {
    let alive = |a: &Complex64| a.norm() > AMPLITUDE_ZERO_TOLERANCE;
    partially_coherent_switch(e.channel(), d.channel(), |i, j| {
        alive(&e.amplitudes()[i]) && alive(&d.amplitudes()[j])
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossTermReport {
    pub holds: bool,
    /// `(s, j, l, m)` with `s ≠ l` or `j ≠ m` whose product `α_s β_j^* α_l^* β_m^*` survives.
    pub violating_tuples: Vec<(usize, usize, usize, usize)>,
}

/// Amplitude-side sufficient condition for the off-diagonal control terms to
/// collapse onto `s = l`, `j = m`.
///
/// `s, l` index the vacuum amplitudes `α` of `e`; `j, m` index `β` of `d`.
pub fn cross_term_condition(e: &VacuumExtendedChannel, d: &VacuumExtendedChannel) -> CrossTermReport {
    let (alpha, beta) = (e.amplitudes(), d.amplitudes());
    let mut violating_tuples = Vec::new();
    for s in 0..alpha.len() {
        for j in 0..beta.len() {
            for l in 0..alpha.len() {
                for m in 0..beta.len() {
                    if s == l && j == m {
                        continue;
                    }
                    let product = alpha[s] * beta[j].conj() * alpha[l].conj() * beta[m].conj();
                    if product.norm() > AMPLITUDE_ZERO_TOLERANCE {
                        violating_tuples.push((s, j, l, m));
                    }
                }
            }
        }
    }
    CrossTermReport {
        holds: violating_tuples.is_empty(),
        violating_tuples,
    }
}
