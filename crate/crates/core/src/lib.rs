//! Simulation of quantum-channel superpositions.
//!
//! - [`numerics`]: dense complex matrices, tensor products, partial traces,
//!   trace distance and seeded Haar sampling.
//! - [`channels`]: validated Kraus channels, a standard channel library and
//!   Choi-matrix diagnostics.
//! - [`vacuum`]: channels paired with vacuum amplitudes.
//! - [`supermaps`]: spatial superposition and the quantum switch as Kraus
//!   channels on carrier ⊗ control.
//! - [`walk_hybrid`]: the coin-tossed hop channel and its comparison with the switch.
//! - [`dtqw`]: a reference 1-D discrete-time quantum walk.
//! - [`measurement`]: control measurement and heralded correction.

pub mod channels;
pub mod dtqw;
pub mod error;
pub mod measurement;
pub mod numerics;
pub mod state;
pub mod supermaps;
pub mod vacuum;
pub mod walk_hybrid;

pub use channels::KrausChannel;
pub use error::{Error, Result};
pub use numerics::ComplexMatrix;
pub use state::DensityMatrix;
pub use supermaps::JointState;
pub use vacuum::VacuumExtendedChannel;
pub use walk_hybrid::{CoinOperator, EquivalenceReport};
