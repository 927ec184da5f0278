//! The full two-party interferometer assembled from the elements.
//!
//! ```text
//! laser (V) ─ attenuator ─ HWP45 ─ BS ─┬─ Alice: PBS ─[φ on V]─ BS ─┬─ A  ─┐
//!                                      │                            └─ A′ ─┼─ BS(α′, β′)
//!                                      └─ η ─ Bob: PBS ─[ψ on V]─ BS ─┬─ B  ─ ξ ─ BS(α, β)
//!                                                                      └─ B′ ─ ξ ─┘
//! ```
//!
//! A and B are joined on the final beam splitter as α = (A + i·e^{iξ}B)/√2 and
//! β = (i·A + e^{iξ}B)/√2; the conjugate ports A′ and B′ are joined the same way.

use num_complex::Complex64;

use super::{apply_bs, apply_hwp45, apply_pbs, intensity, phase_shift, FieldState, PhaseConfig};
use crate::error::{require_positive, Result};

/// One party's PBS-BS interferometer. Returns `(primary, conjugate)` outputs.
///
/// H is transmitted, V is reflected and picks up `party_phase`, and the two arms
/// recombine on a non-polarizing beam splitter. Because the arms are orthogonally
/// polarized each output carries half the input intensity whatever the phase.
pub fn party_outputs(party_phase: f64, input: FieldState) -> (FieldState, FieldState) {
    let (transmitted, reflected) = apply_pbs(input);
    let delayed = phase_shift(reflected, party_phase);
    apply_bs(delayed, transmitted)
}

/// Primary output of a party's interferometer.
///
/// For an input with equal, in-phase H and V amplitudes this is
/// ∝ (|H⟩ + e^{iφ}|V⟩)/√2.
pub fn build_party_state(party_phase: f64, input: FieldState) -> FieldState {
    party_outputs(party_phase, input).0
}

/// Every detected port of the network for one phase setting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkOutputs {
    pub alice: FieldState,
    pub bob: FieldState,
    pub alice_conjugate: FieldState,
    pub bob_conjugate: FieldState,
    pub alpha: FieldState,
    pub beta: FieldState,
    pub alpha_conjugate: FieldState,
    pub beta_conjugate: FieldState,
}

impl NetworkOutputs {
    pub fn intensity_alpha(&self) -> f64 {
        intensity(&self.alpha)
    }

    pub fn intensity_beta(&self) -> f64 {
        intensity(&self.beta)
    }

    pub fn intensity_alpha_conjugate(&self) -> f64 {
        intensity(&self.alpha_conjugate)
    }

    pub fn intensity_beta_conjugate(&self) -> f64 {
        intensity(&self.beta_conjugate)
    }

    /// Joint detection of A and B with the final beam splitter removed.
    ///
    /// Only polarization-matched paths (HH, VV) are indistinguishable, so the
    /// pair amplitude is the overlap ⟨B|A⟩ and the rate is its squared modulus.
    pub fn coincidence(&self) -> f64 {
        self.alice.inner(&self.bob).norm_sqr()
    }

    /// Coincidence normalized by the single-party intensities, in [0, 1].
    pub fn coincidence_probability(&self) -> f64 {
        let singles = intensity(&self.alice) * intensity(&self.bob);
        if singles == 0.0 {
            0.0
        } else {
            self.coincidence() / singles
        }
    }
}

/// Source scaling and element selection for the two-party network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FransonNetwork {
    i0: f64,
    superposition: bool,
}

impl FransonNetwork {
    /// Network whose laser power delivers `i0` to each party's primary output.
    pub fn new(i0: f64) -> Result<Self> {
        Ok(FransonNetwork {
            i0: require_positive("i0", i0)?,
            superposition: true,
        })
    }

    /// The same network with the 45° half-wave plate removed: every photon
    /// stays V and the parties see no polarization-basis superposition.
    pub fn without_superposition(self) -> Self {
        FransonNetwork {
            superposition: false,
            ..self
        }
    }

    pub fn i0(&self) -> f64 {
        self.i0
    }

    pub fn has_superposition(&self) -> bool {
        self.superposition
    }

    /// V-polarized laser field after the attenuator.
    ///
    /// The source splitter and each party's recombining splitter each halve the
    /// power on the way to a primary port, so the source carries 4·I₀.
    pub fn source(&self) -> FieldState {
        FieldState::vertical(Complex64::new(2.0 * self.i0.sqrt(), 0.0))
    }

    pub fn propagate(&self, phases: &PhaseConfig) -> NetworkOutputs {
        let mut field = self.source();
        if self.superposition {
            field = apply_hwp45(field);
        }
        let (to_alice, to_bob) = apply_bs(field, FieldState::VACUUM);
        let to_bob = phase_shift(to_bob, phases.eta);

        let (alice, alice_conjugate) = party_outputs(phases.phi, to_alice);
        let (bob, bob_conjugate) = party_outputs(phases.psi, to_bob);

        let (alpha, beta) = apply_bs(alice, phase_shift(bob, phases.xi));
        let (alpha_conjugate, beta_conjugate) =
            apply_bs(alice_conjugate, phase_shift(bob_conjugate, phases.xi));

        NetworkOutputs {
            alice,
            bob,
            alice_conjugate,
            bob_conjugate,
            alpha,
            beta,
            alpha_conjugate,
            beta_conjugate,
        }
    }
}
