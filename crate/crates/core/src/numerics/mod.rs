//! Dense complex linear algebra shared by every other module.
//!
//! Tensor products follow a single index convention throughout the crate:
//! the first factor is the slow index, so entry `(i_a * n_b + i_b, j_a * m_b + j_b)`
//! of `a ⊗ b` equals `a[(i_a, j_a)] * b[(i_b, j_b)]`. Joint carrier/control
//! states always put the carrier first.

mod haar;
mod matrix;

pub use haar::{haar_random_unitary, haar_unitary_with, random_density_with, random_pure_with};
pub use matrix::ComplexMatrix;

use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::DensityMatrix;

/// Eigenvalues of density matrices above this negative threshold are treated as zero.
pub const EIGEN_TOLERANCE: f64 = 1e-10;

/// Which tensor factor survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    First,
    Second,
}

/// Kronecker product `a ⊗ b`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = (b.rows(), b.cols());
    ComplexMatrix::from_fn(a.rows() * br, a.cols() * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// Kronecker product of two vectors.
pub fn tensor_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

/// Traces out one factor of a bipartite operator on `dim_a ⊗ dim_b`.
pub fn partial_trace(m: &ComplexMatrix, dim_a: usize, dim_b: usize, keep: Keep) -> Result<ComplexMatrix> {
    check_bipartite(m, dim_a, dim_b)?;
    Ok(match keep {
        Keep::First => ComplexMatrix::from_fn(dim_a, dim_a, |i, j| {
            (0..dim_b).map(|k| m[(i * dim_b + k, j * dim_b + k)]).sum()
        }),
        Keep::Second => ComplexMatrix::from_fn(dim_b, dim_b, |i, j| {
            (0..dim_a).map(|k| m[(k * dim_b + i, k * dim_b + j)]).sum()
        }),
    })
}

/// Transposes the second tensor factor of a bipartite operator.
pub fn partial_transpose_second(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<ComplexMatrix> {
    check_bipartite(m, dim_a, dim_b)?;
    Ok(ComplexMatrix::from_fn(m.rows(), m.cols(), |r, c| {
        let (ia, ib) = (r / dim_b, r % dim_b);
        let (ja, jb) = (c / dim_b, c % dim_b);
        m[(ia * dim_b + jb, ja * dim_b + ib)]
    }))
}

fn check_bipartite(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<()> {
    let n = m.ensure_square()?;
    if n != dim_a * dim_b {
        return Err(Error::DimensionMismatch {
            expected: dim_a * dim_b,
            found: n,
        });
    }
    Ok(())
}

/// Ascending eigenvalues of a Hermitian matrix.
///
/// Only the lower triangle is read, so the input should be Hermitian up to roundoff.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    m.ensure_square()?;
    if m.rows() == 0 {
        return Ok(Vec::new());
    }
    let eig = SymmetricEigen::new(m.to_nalgebra());
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// ½‖a − b‖₁ for Hermitian operators of equal dimension.
pub fn trace_norm_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let n = a.ensure_square()?;
    if b.rows() != n || b.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.rows(),
        });
    }
    let diff = a - b;
    // symmetrize so the solver sees an exactly Hermitian input
    let herm = (&diff + &diff.adjoint()).scale_real(0.5);
    Ok(0.5 * hermitian_eigenvalues(&herm)?.iter().map(|x| x.abs()).sum::<f64>())
}

/// Trace distance between two density matrices, clamped to [0, 1].
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    trace_norm_distance(a.matrix(), b.matrix()).map(|d| d.clamp(0.0, 1.0))
}

/// Single-qubit gates used across the crate.
pub mod gates {
    use super::ComplexMatrix;
    use num_complex::Complex64;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).expect("static")
    }

    pub fn pauli_y() -> ComplexMatrix {
        ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
            .expect("static")
    }

    pub fn pauli_z() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).expect("static")
    }

    pub fn hadamard() -> ComplexMatrix {
        ComplexMatrix::from_real(
            2,
            2,
            &[FRAC_1_SQRT_2, FRAC_1_SQRT_2, FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
        )
        .expect("static")
    }

    /// |0⟩⟨0| and |1⟩⟨1| on a qubit.
    pub fn projector(bit: usize) -> ComplexMatrix {
        let mut p = ComplexMatrix::zeros(2, 2);
        p[(bit, bit)] = c(1.0, 0.0);
        p
    }

    /// [I, X, Y, Z] with their conventional labels.
    pub fn paulis() -> [(&'static str, ComplexMatrix); 4] {
        [
            ("I", identity()),
            ("X", pauli_x()),
            ("Y", pauli_y()),
            ("Z", pauli_z()),
        ]
    }
}
