//! Polarization-resolved field propagation through the interferometer network.

mod elements;
mod field;
mod network;

pub use elements::{apply_bs, apply_hwp45, apply_pbs, intensity, phase_from_path, phase_shift};
pub use field::{
    canonical_phase, phase_distance, phases_equivalent, ComplexAmplitude, FieldState, PathGeometry,
    PhaseConfig, PolarizationMode,
};
pub use network::{build_party_state, party_outputs, FransonNetwork, NetworkOutputs};
