use std::f64::consts::FRAC_1_SQRT_2;

use super::KrausChannel;
use crate::error::{Error, Result};
use crate::numerics::gates::{pauli_x, pauli_y, pauli_z};
use crate::numerics::ComplexMatrix;

/// Tolerance for accepting a matrix as unitary.
pub const UNITARY_TOLERANCE: f64 = 1e-12;

fn check_probability(name: &'static str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange { name, value: p })
    }
}

pub fn identity(dim: usize) -> KrausChannel {
    KrausChannel::new(vec![ComplexMatrix::identity(dim)]).expect("identity is CPTP")
}

/// ρ ↦ UρU†.
pub fn unitary_channel(u: ComplexMatrix) -> Result<KrausChannel> {
    let residual = u.unitarity_residual();
    if residual > UNITARY_TOLERANCE {
        return Err(Error::NotUnitary { residual });
    }
    KrausChannel::new(vec![u])
}

/// Qubit depolarizing channel with Kraus set `√(1−3p/4) I, √(p/4) {X, Y, Z}`.
pub fn depolarizing(p: f64) -> Result<KrausChannel> {
    check_probability("p", p)?;
    let a = (1.0 - 0.75 * p).sqrt();
    let b = (p / 4.0).sqrt();
    KrausChannel::new(vec![
        ComplexMatrix::identity(2).scale_real(a),
        pauli_x().scale_real(b),
        pauli_y().scale_real(b),
        pauli_z().scale_real(b),
    ])
}

/// ρ ↦ (1−p)ρ + p ZρZ.
pub fn dephasing(p: f64) -> Result<KrausChannel> {
    check_probability("p", p)?;
    KrausChannel::new(vec![
        ComplexMatrix::identity(2).scale_real((1.0 - p).sqrt()),
        pauli_z().scale_real(p.sqrt()),
    ])
}

/// ρ ↦ (1−p)ρ + p XρX.
pub fn bit_flip(p: f64) -> Result<KrausChannel> {
    check_probability("p", p)?;
    KrausChannel::new(vec![
        ComplexMatrix::identity(2).scale_real((1.0 - p).sqrt()),
        pauli_x().scale_real(p.sqrt()),
    ])
}

/// Entanglement-breaking qubit channel ρ ↦ ½(XρX + ZρZ).
pub fn eb_xz() -> KrausChannel {
    KrausChannel::new(vec![
        pauli_x().scale_real(FRAC_1_SQRT_2),
        pauli_z().scale_real(FRAC_1_SQRT_2),
    ])
    .expect("static")
}
