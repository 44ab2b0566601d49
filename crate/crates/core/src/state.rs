use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::numerics::{hermitian_eigenvalues, tensor, ComplexMatrix, EIGEN_TOLERANCE};

/// Entrywise tolerance on Hermiticity and trace.
pub const STATE_TOLERANCE: f64 = 1e-10;

/// A validated density matrix: Hermitian, PSD and unit trace, all within
/// [`STATE_TOLERANCE`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ComplexMatrix", into = "ComplexMatrix")]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dim = matrix.ensure_square()?;
        if dim == 0 {
            return Err(Error::InvalidDensity("empty matrix".into()));
        }
        if !matrix.is_hermitian(STATE_TOLERANCE) {
            return Err(Error::InvalidDensity("not Hermitian".into()));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > STATE_TOLERANCE {
            return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
        }
        let min_eig = hermitian_eigenvalues(&matrix)?[0];
        if min_eig < -EIGEN_TOLERANCE {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min_eig:e}")));
        }
        Ok(Self { matrix })
    }

    /// |ψ⟩⟨ψ| for a normalized ket.
    pub fn from_ket(ket: &[Complex64]) -> Result<Self> {
        Self::new(ComplexMatrix::outer(ket, ket))
    }

    /// Computational basis state |index⟩⟨index|.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, len: dim });
        }
        let mut m = ComplexMatrix::zeros(dim, dim);
        m[(index, index)] = Complex64::new(1.0, 0.0);
        Ok(Self { matrix: m })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        assert!(dim >= 1);
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    pub fn zero() -> Self {
        Self::basis(2, 0).expect("static")
    }

    pub fn one() -> Self {
        Self::basis(2, 1).expect("static")
    }

    pub fn plus() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self::from_ket(&[h, h]).expect("static")
    }

    pub fn minus() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self::from_ket(&[h, -h]).expect("static")
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// `self ⊗ other`, self as the slow index.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        Self {
            matrix: tensor(&self.matrix, &other.matrix),
        }
    }

    /// U ρ U†, for a unitary `u`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<DensityMatrix> {
        if u.rows() != self.dim() || u.cols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.rows(),
            });
        }
        Self::new(&(u * &self.matrix) * &u.adjoint())
    }
}

impl TryFrom<ComplexMatrix> for DensityMatrix {
    type Error = Error;

    fn try_from(m: ComplexMatrix) -> Result<Self> {
        Self::new(m)
    }
}

impl From<DensityMatrix> for ComplexMatrix {
    fn from(d: DensityMatrix) -> Self {
        d.matrix
    }
}
