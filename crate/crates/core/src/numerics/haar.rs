//! Seeded random unitaries and states.
//!
//! Haar unitaries are drawn by the Ginibre/QR method: fill a matrix with i.i.d.
//! standard complex Gaussians, take its Householder QR factorization, and
//! multiply each column of Q by the phase of the matching diagonal entry of R.
//! The phase fix makes the distribution exactly Haar rather than biased by the
//! QR sign convention.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::ComplexMatrix;
use crate::state::DensityMatrix;

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-distributed `dim × dim` unitary drawn from `rng`.
pub fn haar_unitary_with<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    assert!(dim >= 1, "unitary dimension must be at least 1");
    let g = ginibre(dim, dim, rng).to_nalgebra();
    let qr = g.qr();
    let (q, r): (DMatrix<Complex64>, DMatrix<Complex64>) = (qr.q(), qr.r());
    let mut q = ComplexMatrix::from_nalgebra(&q);
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Haar-distributed unitary, deterministic in `seed`.
pub fn haar_random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    haar_unitary_with(dim, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Uniformly random pure state (first column of a Haar unitary).
pub fn random_pure_with<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    let u = haar_unitary_with(dim, rng);
    let ket: Vec<Complex64> = (0..dim).map(|i| u[(i, 0)]).collect();
    DensityMatrix::from_ket(&ket).expect("haar column is normalized")
}

/// Hilbert-Schmidt random mixed state `G G† / tr(G G†)`.
pub fn random_density_with<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    let g = ginibre(dim, dim, rng);
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    let m = m.scale_real(1.0 / tr);
    // exact hermitization before validation
    let m = (&m + &m.adjoint()).scale_real(0.5);
    DensityMatrix::new(m).expect("G G† is a valid state")
}
