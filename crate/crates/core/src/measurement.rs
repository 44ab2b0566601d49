//! Projective measurement of the control qubit and heralded correction of the carrier.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::channels::DensityMatrix;
use crate::error::{Error, Result};
use crate::numerics::gates::paulis;
use crate::numerics::{trace_distance, ComplexMatrix};
use crate::supermaps::JointState;

/// Outcomes at or below this probability carry no post-measurement state.
pub const ZERO_PROBABILITY: f64 = 1e-12;

const BASIS_TOLERANCE: f64 = 1e-12;
const CORRECTION_UNITARY_TOLERANCE: f64 = 1e-10;

/// Orthonormal basis of the control qubit with a label per vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlBasis {
    vectors: [[Complex64; 2]; 2],
    labels: [String; 2],
}

impl ControlBasis {
    pub fn new(vectors: [[Complex64; 2]; 2], labels: [String; 2]) -> Result<Self> {
        let mut residual = 0.0_f64;
        for a in 0..2 {
            for b in 0..2 {
                let ip: Complex64 = (0..2).map(|k| vectors[a][k].conj() * vectors[b][k]).sum();
                let expected = if a == b { 1.0 } else { 0.0 };
                residual = residual.max((ip - expected).norm());
            }
        }
        if !(residual <= BASIS_TOLERANCE) {
            return Err(Error::NonOrthonormalBasis { residual });
        }
        Ok(Self { vectors, labels })
    }

    pub fn computational() -> Self {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self {
            vectors: [[one, zero], [zero, one]],
            labels: ["0".into(), "1".into()],
        }
    }

    /// `{|+⟩, |−⟩}` labelled `"+"` and `"-"`.
    pub fn plus_minus() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self {
            vectors: [[h, h], [h, -h]],
            labels: ["+".into(), "-".into()],
        }
    }

    pub fn labels(&self) -> &[String; 2] {
        &self.labels
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementOutcome {
    pub label: String,
    pub probability: f64,
    /// Carrier state after the outcome; `None` for zero-probability outcomes.
    pub post_state: Option<DensityMatrix>,
}

/// Measures the control of `js` in `basis`.
pub fn measure_control(js: &JointState, basis: &ControlBasis) -> Vec<MeasurementOutcome> {
    basis
        .vectors
        .iter()
        .zip(&basis.labels)
        .map(|(b, label)| {
            // ⟨b| js |b⟩ contracted on the control
            let d = js.carrier_dim();
            let mut m = ComplexMatrix::zeros(d, d);
            for r in 0..2 {
                for c in 0..2 {
                    let w = b[r].conj() * b[c];
                    if w != Complex64::new(0.0, 0.0) {
                        m = &m + &js.control_block(r, c).scale(w);
                    }
                }
            }
            let probability = m.trace().re.clamp(0.0, 1.0);
            let post_state = (probability > ZERO_PROBABILITY).then(|| {
                let m = m.scale_real(1.0 / probability);
                DensityMatrix::new((&m + &m.adjoint()).scale_real(0.5))
                    .expect("projected state is a state")
            });
            MeasurementOutcome {
                label: label.clone(),
                probability,
                post_state,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrectedOutcome {
    pub label: String,
    pub probability: f64,
    /// Trace distance to the target after correction; `None` when the outcome never occurs.
    pub distance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeraldReport {
    pub outcomes: Vec<CorrectedOutcome>,
    pub worst_case: f64,
}

/// Applies the correction paired with each outcome label and measures how far
/// the corrected post-state is from `target`.
pub fn heralded_correction_check(
    outcomes: &[MeasurementOutcome],
    target: &DensityMatrix,
    corrections: &[(String, ComplexMatrix)],
) -> Result<HeraldReport> {
    let mut report = Vec::with_capacity(outcomes.len());
    let mut worst_case = 0.0_f64;
    for outcome in outcomes {
        let distance = match &outcome.post_state {
            None => None,
            Some(post) => {
                let (_, u) = corrections
                    .iter()
                    .find(|(label, _)| *label == outcome.label)
                    .ok_or_else(|| Error::MissingCorrection(outcome.label.clone()))?;
                let residual = u.unitarity_residual();
                if residual > CORRECTION_UNITARY_TOLERANCE {
                    return Err(Error::NotUnitary { residual });
                }
                let dist = trace_distance(&post.conjugate_by(u)?, target)?;
                worst_case = worst_case.max(dist);
                Some(dist)
            }
        };
        report.push(CorrectedOutcome {
            label: outcome.label.clone(),
            probability: outcome.probability,
            distance,
        });
    }
    Ok(HeraldReport {
        outcomes: report,
        worst_case,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PauliSearch {
    /// Chosen Pauli per outcome label.
    pub choices: Vec<(String, String)>,
    pub report: HeraldReport,
}

/// Picks, per outcome, the Pauli in `{I, X, Y, Z}` that brings the post-state
/// closest to `target`. Qubit carriers only.
pub fn search_pauli_corrections(outcomes: &[MeasurementOutcome], target: &DensityMatrix) -> Result<PauliSearch> {
    if target.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: target.dim(),
        });
    }
    let mut corrections = Vec::new();
    let mut choices = Vec::new();
    for outcome in outcomes {
        let Some(post) = &outcome.post_state else { continue };
        let mut best: Option<(f64, &'static str, ComplexMatrix)> = None;
        for (name, p) in paulis() {
            let d = trace_distance(&post.conjugate_by(&p)?, target)?;
            if best.as_ref().is_none_or(|(bd, _, _)| d < *bd - 1e-12) {
                best = Some((d, name, p));
            }
        }
        let (_, name, p) = best.expect("four candidates");
        choices.push((outcome.label.clone(), name.to_string()));
        corrections.push((outcome.label.clone(), p));
    }
    let report = heralded_correction_check(outcomes, target, &corrections)?;
    Ok(PauliSearch { choices, report })
}
