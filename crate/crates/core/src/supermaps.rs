//! Quantum-path supermaps materialized as Kraus channels on carrier ⊗ control.
//!
//! Both constructions emit their Kraus operators in (i-major, j-minor) order,
//! with `i` running over the first channel's Kraus list and `j` over the second.

use crate::channels::{DensityMatrix, KrausChannel};
use crate::error::{Error, Result};
use crate::numerics::gates::projector;
use crate::numerics::{partial_trace, tensor, ComplexMatrix, Keep};
use crate::vacuum::VacuumExtendedChannel;

/// Joint carrier ⊗ control state; the carrier is the slow tensor index.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    carrier_dim: usize,
    joint: DensityMatrix,
}

impl JointState {
    pub fn new(carrier_dim: usize, joint: DensityMatrix) -> Result<Self> {
        if joint.dim() != carrier_dim * 2 {
            return Err(Error::DimensionMismatch {
                expected: carrier_dim * 2,
                found: joint.dim(),
            });
        }
        Ok(Self { carrier_dim, joint })
    }

    pub fn product(carrier: &DensityMatrix, control: &DensityMatrix) -> Result<Self> {
        if control.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: control.dim(),
            });
        }
        Self::new(carrier.dim(), carrier.tensor(control))
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier_dim
    }

    pub fn joint(&self) -> &DensityMatrix {
        &self.joint
    }

    /// The carrier operator multiplying `|row⟩⟨col|` on the control.
    pub fn control_block(&self, row: usize, col: usize) -> ComplexMatrix {
        assert!(row < 2 && col < 2, "control index out of range");
        let m = self.joint.matrix();
        ComplexMatrix::from_fn(self.carrier_dim, self.carrier_dim, |i, j| {
            m[(i * 2 + row, j * 2 + col)]
        })
    }

    pub fn carrier_marginal(&self) -> DensityMatrix {
        let m = partial_trace(self.joint.matrix(), self.carrier_dim, 2, Keep::First)
            .expect("joint dimension checked on construction");
        DensityMatrix::new(m).expect("marginal of a state is a state")
    }

    pub fn control_marginal(&self) -> DensityMatrix {
        let m = partial_trace(self.joint.matrix(), self.carrier_dim, 2, Keep::Second)
            .expect("joint dimension checked on construction");
        DensityMatrix::new(m).expect("marginal of a state is a state")
    }
}

fn check_same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { expected: a, found: b });
    }
    Ok(())
}

/// Spatial superposition with Kraus operators
/// `S_ij = β_j E_i ⊗ |0⟩⟨0| + α_i D_j ⊗ |1⟩⟨1|`,
/// where `α` are the vacuum amplitudes of `e` and `β` those of `d`.
pub fn spatial_superposition(e: &VacuumExtendedChannel, d: &VacuumExtendedChannel) -> Result<KrausChannel> {
    check_same_dim(e.dim(), d.dim())?;
    let (p0, p1) = (projector(0), projector(1));
    let mut kraus = Vec::with_capacity(e.channel().kraus_count() * d.channel().kraus_count());
    for (e_i, alpha_i) in e.channel().kraus().iter().zip(e.amplitudes()) {
        for (d_j, beta_j) in d.channel().kraus().iter().zip(d.amplitudes()) {
            let through_e = tensor(&e_i.scale(*beta_j), &p0);
            let through_d = tensor(&d_j.scale(*alpha_i), &p1);
            kraus.push(&through_e + &through_d);
        }
    }
    KrausChannel::new(kraus)
}

/// Quantum switch with Kraus operators `S_ij = E_i D_j ⊗ |0⟩⟨0| + D_j E_i ⊗ |1⟩⟨1|`.
pub fn quantum_switch(e: &KrausChannel, d: &KrausChannel) -> Result<KrausChannel> {
    check_same_dim(e.dim(), d.dim())?;
    let (p0, p1) = (projector(0), projector(1));
    let mut kraus = Vec::with_capacity(e.kraus_count() * d.kraus_count());
    for e_i in e.kraus() {
        for d_j in d.kraus() {
            kraus.push(&tensor(&(e_i * d_j), &p0) + &tensor(&(d_j * e_i), &p1));
        }
    }
    KrausChannel::new(kraus)
}

/// Switch in which only the Kraus pairs `(i, j)` with `coherent(i, j)` keep a
/// coherent order superposition; every other pair acts as the decohered
/// mixture `E_i D_j ⊗ |0⟩⟨0|` and `D_j E_i ⊗ |1⟩⟨1|`. Still trace preserving:
/// each pair contributes `D†E†ED ⊗ |0⟩⟨0| + E†D†DE ⊗ |1⟩⟨1|` to the closure either way.
pub fn partially_coherent_switch(
    e: &KrausChannel,
    d: &KrausChannel,
    mut coherent: impl FnMut(usize, usize) -> bool,
) -> Result<KrausChannel> {
    check_same_dim(e.dim(), d.dim())?;
    let (p0, p1) = (projector(0), projector(1));
    let mut kraus = Vec::new();
    for (i, e_i) in e.kraus().iter().enumerate() {
        for (j, d_j) in d.kraus().iter().enumerate() {
            let first = tensor(&(e_i * d_j), &p0);
            let second = tensor(&(d_j * e_i), &p1);
            if coherent(i, j) {
                kraus.push(&first + &second);
            } else {
                kraus.push(first);
                kraus.push(second);
            }
        }
    }
    KrausChannel::new(kraus)
}

/// Applies a joint-space map to `carrier ⊗ control`.
pub fn apply_joint(map: &KrausChannel, carrier: &DensityMatrix, control: &DensityMatrix) -> Result<JointState> {
    let input = JointState::product(carrier, control)?;
    apply_to_joint(map, &input)
}

pub fn apply_to_joint(map: &KrausChannel, state: &JointState) -> Result<JointState> {
    check_same_dim(map.dim(), state.carrier_dim * 2)?;
    JointState::new(state.carrier_dim, map.apply(&state.joint)?)
}

/// Free-function form of [`JointState::control_block`].
pub fn control_block(js: &JointState, row: usize, col: usize) -> ComplexMatrix {
    js.control_block(row, col)
}

/// `|+⟩⟨+|` on the control, the input used by every equivalence check.
pub fn plus_control() -> DensityMatrix {
    DensityMatrix::plus()
}
