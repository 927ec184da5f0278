//! Closed-form coincidence and output-intensity laws, plus the fringe
//! diagnostics built on them (visibility, CHSH, extremum conditions).

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use nalgebra::{Matrix3, Vector3};

use crate::error::{require_positive, Error, Result};
use crate::optics::phases_equivalent;

/// Visibility above which a sinusoidal two-party fringe violates a Bell inequality.
pub const BELL_VISIBILITY_THRESHOLD: f64 = FRAC_1_SQRT_2;

/// Tsirelson bound, 2√2.
pub const TSIRELSON_BOUND: f64 = 2.0 * SQRT_2;

/// Tolerance for modular phase comparisons.
pub const PHASE_TOLERANCE: f64 = 1e-9;

/// A sampled observable with the phases that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationPoint {
    pub phi: f64,
    pub psi: f64,
    pub theta: f64,
    pub value: f64,
}

/// Two-party coincidence rate R_AB = (I₀²/2)(1 + cos(φ − ψ)).
///
/// Independent of θ: a phase common to all of Bob's paths cancels in the
/// pair amplitude.
pub fn coincidence_rate(phi: f64, psi: f64, i0: f64) -> Result<f64> {
    let i0 = require_positive("i0", i0)?;
    Ok(0.5 * i0 * i0 * (1.0 + (phi - psi).cos()))
}

/// I_α = (I₀/2)[2 − cos θ − cos(φ − ψ − θ)].
pub fn intensity_alpha(phi: f64, psi: f64, theta: f64, i0: f64) -> Result<f64> {
    let i0 = require_positive("i0", i0)?;
    Ok(0.5 * i0 * (2.0 - theta.cos() - (phi - psi - theta).cos()))
}

/// I_β = (I₀/2)[2 + cos θ + cos(φ − ψ − θ)].
pub fn intensity_beta(phi: f64, psi: f64, theta: f64, i0: f64) -> Result<f64> {
    let i0 = require_positive("i0", i0)?;
    Ok(0.5 * i0 * (2.0 + theta.cos() + (phi - psi - theta).cos()))
}

/// Coincidence rate without polarization-basis superposition: a flat I₀².
pub fn coincidence_no_superposition(i0: f64) -> Result<f64> {
    let i0 = require_positive("i0", i0)?;
    Ok(i0 * i0)
}

/// I_α·I_β, the anticorrelation diagnostic.
pub fn intensity_product(phi: f64, psi: f64, theta: f64, i0: f64) -> Result<f64> {
    Ok(intensity_alpha(phi, psi, theta, i0)? * intensity_beta(phi, psi, theta, i0)?)
}

/// θ at which I_α·I_β is minimal, modulo π.
///
/// The product is (I₀²/4)(4 − c²) with c = 2cos(Δ/2)cos(θ − Δ/2), Δ = φ − ψ,
/// so minima sit at θ = Δ/2 + nπ with depth I₀²·sin²(Δ/2). Returns `None`
/// when Δ ≡ π and the product is flat in θ.
pub fn product_minimum_theta(phi: f64, psi: f64) -> Option<f64> {
    let delta = phi - psi;
    if (0.5 * delta).cos().abs() <= PHASE_TOLERANCE {
        None
    } else {
        Some(0.5 * delta)
    }
}

/// Minimum over θ of I_α·I_β.
pub fn product_minimum_value(phi: f64, psi: f64, i0: f64) -> Result<f64> {
    let i0 = require_positive("i0", i0)?;
    Ok(i0 * i0 * (0.5 * (phi - psi)).sin().powi(2))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisibilityReport {
    pub v: f64,
    pub max: f64,
    pub min: f64,
    pub bell_violating: bool,
}

impl VisibilityReport {
    fn from_extrema(max: f64, min: f64) -> Self {
        let v = (max - min) / (max + min);
        VisibilityReport {
            v,
            max,
            min,
            bell_violating: v > BELL_VISIBILITY_THRESHOLD,
        }
    }
}

fn check_samples(samples: &[(f64, f64)], minimum: usize) -> Result<()> {
    if samples.len() < minimum {
        return Err(Error::Domain {
            name: "sample count",
            requirement: if minimum == 2 { "at least 2" } else { "at least 3" },
            value: samples.len() as f64,
        });
    }
    for &(_, value) in samples {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(Error::Domain {
                name: "sample value",
                requirement: "finite and non-negative",
                value,
            });
        }
    }
    if samples.iter().all(|&(_, value)| value == 0.0) {
        return Err(Error::Domain {
            name: "sample values",
            requirement: "not all zero",
            value: 0.0,
        });
    }
    Ok(())
}

/// Fringe visibility (max − min)/(max + min) from sampled `(angle, value)` pairs.
///
/// Uses the sample extrema, so the caller must sample densely enough to hit
/// the true peak and trough.
pub fn visibility(samples: &[(f64, f64)]) -> Result<VisibilityReport> {
    check_samples(samples, 2)?;
    let (max, min) = samples
        .iter()
        .fold((f64::NEG_INFINITY, f64::INFINITY), |(hi, lo), &(_, y)| {
            (hi.max(y), lo.min(y))
        });
    Ok(VisibilityReport::from_extrema(max, min))
}

/// Least-squares fit y ≈ offset + amplitude·cos(angle − phase).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FringeFit {
    pub offset: f64,
    pub amplitude: f64,
    pub phase: f64,
}

impl FringeFit {
    /// amplitude/offset, clamped to [0, 1].
    pub fn visibility(&self) -> f64 {
        (self.amplitude / self.offset).clamp(0.0, 1.0)
    }

    pub fn bell_violating(&self) -> bool {
        self.visibility() > BELL_VISIBILITY_THRESHOLD
    }

    pub fn eval(&self, angle: f64) -> f64 {
        self.offset + self.amplitude * (angle - self.phase).cos()
    }
}

/// Fits a sinusoid of unit angular frequency to noisy fringe samples.
pub fn fit_fringe(samples: &[(f64, f64)]) -> Result<FringeFit> {
    check_samples(samples, 3)?;
    let mut normal = Matrix3::<f64>::zeros();
    let mut rhs = Vector3::<f64>::zeros();
    for &(angle, y) in samples {
        let basis = Vector3::new(1.0, angle.cos(), angle.sin());
        normal += basis * basis.transpose();
        rhs += basis * y;
    }
    let coef = normal.lu().solve(&rhs).ok_or_else(|| {
        Error::Numeric("fringe fit is singular: sample angles do not resolve a sinusoid".into())
    })?;
    let (c, s) = (coef[1], coef[2]);
    Ok(FringeFit {
        offset: coef[0],
        amplitude: c.hypot(s),
        phase: s.atan2(c),
    })
}

/// Analyzer settings for one CHSH test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyzerAngles {
    pub a: f64,
    pub a_prime: f64,
    pub b: f64,
    pub b_prime: f64,
}

impl AnalyzerAngles {
    pub fn new(a: f64, a_prime: f64, b: f64, b_prime: f64) -> Self {
        AnalyzerAngles {
            a,
            a_prime,
            b,
            b_prime,
        }
    }

    /// Settings that saturate the Tsirelson bound for a cos(x − y) correlation.
    pub fn canonical() -> Self {
        AnalyzerAngles::new(0.0, PI / 2.0, PI / 4.0, -PI / 4.0)
    }
}

/// ±1 correlation of the coincidence fringe: 2·R_AB/I₀² − 1 = cos(x − y).
pub fn fringe_correlation(x: f64, y: f64) -> f64 {
    (x - y).cos()
}

/// CHSH combination S = E(a,b) + E(a,b′) + E(a′,b) − E(a′,b′) over the
/// coincidence-fringe correlation.
///
/// Test harness on top of the fringe law; the physical Bell criterion used
/// elsewhere is the visibility threshold.
pub fn chsh_s(angles: AnalyzerAngles) -> f64 {
    let e = fringe_correlation;
    let AnalyzerAngles {
        a,
        a_prime,
        b,
        b_prime,
    } = angles;
    e(a, b) + e(a, b_prime) + e(a_prime, b) - e(a_prime, b_prime)
}

/// True when φ − ψ − θ ≡ π: the ψ-sweep maximum of I_α at fixed θ.
pub fn alpha_maxima_condition(phi: f64, psi: f64, theta: f64) -> bool {
    phases_equivalent(phi - psi - theta, PI, PHASE_TOLERANCE)
}

/// True when ψ + θ ≡ φ: the ψ-sweep maximum of I_β at fixed θ.
pub fn beta_maxima_condition(phi: f64, psi: f64, theta: f64) -> bool {
    phases_equivalent(psi + theta, phi, PHASE_TOLERANCE)
}
