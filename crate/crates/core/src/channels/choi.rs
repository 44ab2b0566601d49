use num_complex::Complex64;

use super::KrausChannel;
use crate::error::{Error, Result};
use crate::numerics::{hermitian_eigenvalues, partial_transpose_second, ComplexMatrix, EIGEN_TOLERANCE};

/// Choi matrix `Σ_ij |i⟩⟨j| ⊗ ch(|i⟩⟨j|)`: reference system first, channel output second.
/// Unnormalized, so its partial trace over the output is the identity.
pub fn choi(ch: &KrausChannel) -> ComplexMatrix {
    let d = ch.dim();
    let mut out = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            let mut unit = ComplexMatrix::zeros(d, d);
            unit[(i, j)] = Complex64::new(1.0, 0.0);
            let block = ch.apply_operator(&unit).expect("dimension matches");
            for r in 0..d {
                for c in 0..d {
                    out[(i * d + r, j * d + c)] = block[(r, c)];
                }
            }
        }
    }
    out
}

/// PPT test on the Choi matrix. Decisive only for qubit (and trivial 1-dim) channels,
/// where PPT is equivalent to separability; larger dimensions return [`Error::Undecided`].
pub fn is_entanglement_breaking(ch: &KrausChannel) -> Result<bool> {
    let d = ch.dim();
    if d > 2 {
        return Err(Error::Undecided { dim: d });
    }
    let pt = partial_transpose_second(&choi(ch), d, d)?;
    let min = hermitian_eigenvalues(&pt)?[0];
    Ok(min >= -EIGEN_TOLERANCE)
}
