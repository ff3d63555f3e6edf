//! Entanglement between a qubit clock and a spin-1/2 Gaussian wavepacket
//! whose spin is Wigner-rotated by a Lorentz boost.
//!
//! The clock records "before" and "after" the boost; the clock-system state
//! is then fixed by the fidelity between the two wavepacket states, which is
//! computed by a 3D product quadrature ([`quadrature`]) and cross-checked by a
//! Monte-Carlo oracle. [`measures`] turns the fidelity into entropies and
//! [`sweep`] runs grids over rapidity and `w/m`.

pub mod error;
pub mod kinematics;
pub mod measures;
pub mod quadrature;
pub mod sweep;
pub mod wavepacket;

pub use error::{Error, Result};
pub use kinematics::{MomentumPoint, PhysicalParams, Rapidity, WignerMatrix};
pub use measures::{BlochVector, Fidelity, MeasureSet, RenyiOrder, SchmidtWeights};
pub use quadrature::{OracleSpec, QuadratureSpec};
pub use sweep::{MeasureKind, SweepResult, SweepRow, SweepSpec};
pub use wavepacket::{SpinorAmplitude, WavepacketSpec};
