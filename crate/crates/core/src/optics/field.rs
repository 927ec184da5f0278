use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::error::{require_positive, Result};

/// Complex field amplitude in units of E₀.
pub type ComplexAmplitude = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolarizationMode {
    H,
    V,
}

/// Polarization-resolved field in a single spatial mode.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldState {
    pub h: ComplexAmplitude,
    pub v: ComplexAmplitude,
}

impl FieldState {
    pub const VACUUM: FieldState = FieldState {
        h: Complex64::new(0.0, 0.0),
        v: Complex64::new(0.0, 0.0),
    };

    pub fn new(h: ComplexAmplitude, v: ComplexAmplitude) -> Self {
        FieldState { h, v }
    }

    pub fn real(h: f64, v: f64) -> Self {
        FieldState::new(Complex64::new(h, 0.0), Complex64::new(v, 0.0))
    }

    pub fn horizontal(amplitude: ComplexAmplitude) -> Self {
        FieldState::new(amplitude, Complex64::new(0.0, 0.0))
    }

    pub fn vertical(amplitude: ComplexAmplitude) -> Self {
        FieldState::new(Complex64::new(0.0, 0.0), amplitude)
    }

    pub fn component(&self, mode: PolarizationMode) -> ComplexAmplitude {
        match mode {
            PolarizationMode::H => self.h,
            PolarizationMode::V => self.v,
        }
    }

    pub fn scale(&self, factor: ComplexAmplitude) -> Self {
        FieldState::new(self.h * factor, self.v * factor)
    }

    /// ⟨other|self⟩, summed over polarization.
    pub fn inner(&self, other: &FieldState) -> ComplexAmplitude {
        other.h.conj() * self.h + other.v.conj() * self.v
    }

    pub fn is_finite(&self) -> bool {
        self.h.is_finite() && self.v.is_finite()
    }

    /// Phase of the V component relative to H, as a unit phasor.
    ///
    /// `None` when either component vanishes.
    pub fn relative_phase(&self) -> Option<ComplexAmplitude> {
        if self.h.norm() == 0.0 || self.v.norm() == 0.0 {
            return None;
        }
        let ratio = self.v / self.h;
        Some(ratio / ratio.norm())
    }

    /// Equality up to a global phase: |⟨a|b⟩|² = I(a)·I(b) and I(a) = I(b).
    pub fn same_ray(&self, other: &FieldState, tol: f64) -> bool {
        let ia = super::intensity(self);
        let ib = super::intensity(other);
        (ia - ib).abs() <= tol && (self.inner(other).norm_sqr() - ia * ib).abs() <= tol
    }
}

impl std::ops::Add for FieldState {
    type Output = FieldState;

    fn add(self, rhs: FieldState) -> FieldState {
        FieldState::new(self.h + rhs.h, self.v + rhs.v)
    }
}

/// Interferometer phases in radians. θ = η + ξ is always derived.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhaseConfig {
    /// Alice's internal MZI phase φ.
    pub phi: f64,
    /// Bob's internal MZI phase ψ.
    pub psi: f64,
    /// Bob's path phase ahead of his MZI.
    pub eta: f64,
    /// Bob's path phase at the final beam splitter.
    pub xi: f64,
}

impl PhaseConfig {
    pub fn new(phi: f64, psi: f64, eta: f64, xi: f64) -> Self {
        PhaseConfig { phi, psi, eta, xi }
    }

    /// Places the whole of θ on η.
    pub fn with_theta(phi: f64, psi: f64, theta: f64) -> Self {
        PhaseConfig::new(phi, psi, theta, 0.0)
    }

    pub fn from_geometry(geometry: &PathGeometry, eta: f64, xi: f64) -> Result<Self> {
        Ok(PhaseConfig::new(
            super::phase_from_path(geometry.delta_x, geometry.lambda)?,
            super::phase_from_path(geometry.delta_y, geometry.lambda)?,
            eta,
            xi,
        ))
    }

    pub fn theta(&self) -> f64 {
        self.eta + self.xi
    }

    /// Returns a copy with θ moved to `theta`, keeping ξ fixed.
    pub fn set_theta(self, theta: f64) -> Self {
        PhaseConfig {
            eta: theta - self.xi,
            ..self
        }
    }
}

impl fmt::Display for PhaseConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "phi={:.6} psi={:.6} theta={:.6} (eta={:.6}, xi={:.6})",
            canonical_phase(self.phi),
            canonical_phase(self.psi),
            canonical_phase(self.theta()),
            canonical_phase(self.eta),
            canonical_phase(self.xi),
        )
    }
}

/// Path-length origin of the MZI phases, in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathGeometry {
    pub delta_x: f64,
    pub delta_y: f64,
    pub lambda: f64,
}

impl PathGeometry {
    pub fn new(delta_x: f64, delta_y: f64, lambda: f64) -> Result<Self> {
        require_positive("lambda", lambda)?;
        Ok(PathGeometry {
            delta_x,
            delta_y,
            lambda,
        })
    }
}

/// Reduces a phase to [0, 2π). Display only.
pub fn canonical_phase(angle: f64) -> f64 {
    let r = angle.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Smallest distance between two phases on the circle, in [0, π].
pub fn phase_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Modular phase equality at the given tolerance.
pub fn phases_equivalent(a: f64, b: f64, tol: f64) -> bool {
    phase_distance(a, b) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn theta_is_sum_of_eta_and_xi() {
        let p = PhaseConfig::new(0.1, 0.2, 0.3, 0.4);
        assert_eq!(p.theta(), 0.3 + 0.4);
        let q = p.set_theta(1.5);
        assert!((q.theta() - 1.5).abs() < 1e-15);
        assert_eq!(q.xi, 0.4);
    }

    #[test]
    fn phase_distance_wraps() {
        assert!(phase_distance(-PI, PI) < 1e-12);
        assert!((phase_distance(0.1, TAU - 0.1) - 0.2).abs() < 1e-12);
        assert!(phases_equivalent(5.0 * PI, PI, 1e-9));
        assert!(!phases_equivalent(0.0, PI, 1e-9));
    }

    #[test]
    fn canonical_branch_for_display() {
        assert_eq!(canonical_phase(-1e-300), 0.0);
        assert!((canonical_phase(-PI / 2.0) - 1.5 * PI).abs() < 1e-12);
        let shown = PhaseConfig::with_theta(3.0 * PI, 0.0, 0.0).to_string();
        assert!(shown.starts_with("phi=3.141593"), "{shown}");
    }

    #[test]
    fn geometry_rejects_bad_wavelength() {
        assert!(PathGeometry::new(0.0, 0.0, 0.0).is_err());
        assert!(PathGeometry::new(0.0, 0.0, -1.0).is_err());
        let g = PathGeometry::new(3.875e-7, 0.0, 1.55e-6).unwrap();
        let p = PhaseConfig::from_geometry(&g, 0.0, 0.0).unwrap();
        assert!((p.phi - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn same_ray_ignores_global_phase() {
        let a = FieldState::new(Complex64::new(0.3, 0.1), Complex64::new(0.0, 0.4));
        let b = a.scale(Complex64::from_polar(1.0, 2.1));
        assert!(a.same_ray(&b, 1e-12));
        let c = FieldState::new(a.h, -a.v);
        assert!(!a.same_ray(&c, 1e-12));
    }
}
