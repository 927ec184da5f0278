//! Transfer functions of the individual optical elements.
//!
//! Conventions, fixed project-wide:
//!
//! * beam splitter: symmetric 50:50, factor `i` on every reflection;
//! * polarizing beam splitter: H transmits unchanged, V reflects with factor `i`;
//! * half-wave plate at 45°: the real rotation taking V to (H + V)/√2.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;

use super::FieldState;
use crate::error::{require_positive, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Phase accumulated over a path difference, 2π·delta/λ. Not reduced.
pub fn phase_from_path(delta: f64, lambda: f64) -> Result<f64> {
    let lambda = require_positive("lambda", lambda)?;
    Ok(TAU * delta / lambda)
}

/// Half-wave plate with its fast axis at 22.5°, i.e. a 45° polarization rotation.
pub fn apply_hwp45(input: FieldState) -> FieldState {
    FieldState::new(
        (input.h + input.v) * FRAC_1_SQRT_2,
        (input.v - input.h) * FRAC_1_SQRT_2,
    )
}

/// Returns `(transmitted, reflected)`.
pub fn apply_pbs(input: FieldState) -> (FieldState, FieldState) {
    (
        FieldState::horizontal(input.h),
        FieldState::vertical(I * input.v),
    )
}

/// Lossless 50:50 beam splitter acting on each polarization independently.
///
/// `out1 = (in1 + i·in2)/√2`, `out2 = (i·in1 + in2)/√2`.
pub fn apply_bs(in1: FieldState, in2: FieldState) -> (FieldState, FieldState) {
    let out1 = FieldState::new(
        (in1.h + I * in2.h) * FRAC_1_SQRT_2,
        (in1.v + I * in2.v) * FRAC_1_SQRT_2,
    );
    let out2 = FieldState::new(
        (I * in1.h + in2.h) * FRAC_1_SQRT_2,
        (I * in1.v + in2.v) * FRAC_1_SQRT_2,
    );
    (out1, out2)
}

pub fn phase_shift(input: FieldState, phase: f64) -> FieldState {
    input.scale(Complex64::from_polar(1.0, phase))
}

/// Detected intensity |h|² + |v|². Orthogonal polarizations never beat
/// (Fresnel-Arago), so there is no H·V cross term.
pub fn intensity(field: &FieldState) -> f64 {
    field.h.norm_sqr() + field.v.norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_field_eq(a: FieldState, b: FieldState) {
        assert_abs_diff_eq!(a.h.re, b.h.re, epsilon = 1e-15);
        assert_abs_diff_eq!(a.h.im, b.h.im, epsilon = 1e-15);
        assert_abs_diff_eq!(a.v.re, b.v.re, epsilon = 1e-15);
        assert_abs_diff_eq!(a.v.im, b.v.im, epsilon = 1e-15);
    }

    #[test]
    fn path_phase() {
        assert_eq!(phase_from_path(0.0, 1.55e-6).unwrap(), 0.0);
        assert_abs_diff_eq!(phase_from_path(1.55e-6, 1.55e-6).unwrap(), TAU, epsilon = 1e-12);
        assert_abs_diff_eq!(phase_from_path(3.875e-7, 1.55e-6).unwrap(), PI / 2.0, epsilon = 1e-12);
        // unreduced
        assert_abs_diff_eq!(phase_from_path(3.1e-6, 1.55e-6).unwrap(), 2.0 * TAU, epsilon = 1e-12);
        assert!(phase_from_path(1.0, 0.0).is_err());
        assert!(phase_from_path(1.0, -1.55e-6).is_err());
    }

    #[test]
    fn hwp_superposes_vertical_input() {
        let out = apply_hwp45(FieldState::real(0.0, 1.0));
        assert_field_eq(out, FieldState::real(FRAC_1_SQRT_2, FRAC_1_SQRT_2));
        assert_eq!(apply_hwp45(FieldState::VACUUM), FieldState::VACUUM);
        let input = FieldState::new(c(0.3, 0.0), c(0.0, 0.4));
        assert_abs_diff_eq!(intensity(&input), intensity(&apply_hwp45(input)), epsilon = 1e-15);
    }

    #[test]
    fn pbs_routes_by_polarization() {
        let (t, r) = apply_pbs(FieldState::real(1.0, 0.0));
        assert_eq!(t, FieldState::real(1.0, 0.0));
        assert_eq!(r, FieldState::VACUUM);

        let (t, r) = apply_pbs(FieldState::real(0.0, 1.0));
        assert_eq!(t, FieldState::VACUUM);
        assert_eq!(r, FieldState::vertical(c(0.0, 1.0)));

        let (t, r) = apply_pbs(FieldState::real(FRAC_1_SQRT_2, FRAC_1_SQRT_2));
        assert_abs_diff_eq!(intensity(&t), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(intensity(&r), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn bs_single_port_and_destructive_interference() {
        let (o1, o2) = apply_bs(FieldState::real(1.0, 0.0), FieldState::VACUUM);
        assert_field_eq(o1, FieldState::real(FRAC_1_SQRT_2, 0.0));
        assert_field_eq(o2, FieldState::horizontal(c(0.0, FRAC_1_SQRT_2)));

        let (o1, o2) = apply_bs(FieldState::real(1.0, 0.0), FieldState::horizontal(c(0.0, 1.0)));
        assert_abs_diff_eq!(o1.h.norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(intensity(&o2), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn phase_shift_examples() {
        assert_eq!(phase_shift(FieldState::real(1.0, 0.0), 0.0), FieldState::real(1.0, 0.0));
        assert_field_eq(phase_shift(FieldState::real(1.0, 0.0), PI), FieldState::real(-1.0, 0.0));
        let input = FieldState::new(c(0.6, 0.0), c(0.0, 0.8));
        assert_abs_diff_eq!(intensity(&phase_shift(input, 0.7321)), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn intensity_examples() {
        assert_eq!(intensity(&FieldState::real(1.0, 0.0)), 1.0);
        let s = FieldState::new(c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2));
        assert_abs_diff_eq!(intensity(&s), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(intensity(&FieldState::real(0.6, 0.8)), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn balanced_mzi_swings_between_ports() {
        // BS, phase on one arm, BS: with zero arm phase everything exits one port,
        // with π it exits the other.
        let input = FieldState::real(1.0, 0.0);
        let mzi = |phase: f64| {
            let (a, b) = apply_bs(input, FieldState::VACUUM);
            apply_bs(phase_shift(a, phase), b)
        };
        let (o1, o2) = mzi(0.0);
        assert_abs_diff_eq!(intensity(&o1), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(intensity(&o2), 1.0, epsilon = 1e-15);
        let (o1, o2) = mzi(PI);
        assert_abs_diff_eq!(intensity(&o1), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(intensity(&o2), 0.0, epsilon = 1e-15);
    }

    fn amplitude() -> impl Strategy<Value = Complex64> {
        (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| Complex64::new(re, im))
    }

    fn field() -> impl Strategy<Value = FieldState> {
        (amplitude(), amplitude()).prop_map(|(h, v)| FieldState::new(h, v))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn every_element_conserves_energy(a in field(), b in field(), phase in -20.0..20.0f64) {
            let tol = 1e-12;
            let hwp = apply_hwp45(a);
            prop_assert!((intensity(&hwp) - intensity(&a)).abs() <= tol);

            let (t, r) = apply_pbs(a);
            prop_assert!((intensity(&t) + intensity(&r) - intensity(&a)).abs() <= tol);

            let (o1, o2) = apply_bs(a, b);
            prop_assert!((intensity(&o1) + intensity(&o2) - intensity(&a) - intensity(&b)).abs() <= tol);

            let shifted = phase_shift(a, phase);
            prop_assert!((intensity(&shifted) - intensity(&a)).abs() <= tol);
            prop_assert!(hwp.is_finite() && o1.is_finite() && o2.is_finite() && shifted.is_finite());
        }

        #[test]
        fn intensity_blind_to_relative_hv_phase(a in field(), rel in -20.0..20.0f64) {
            let rotated = FieldState::new(a.h, a.v * Complex64::from_polar(1.0, rel));
            prop_assert!((intensity(&rotated) - intensity(&a)).abs() <= 1e-12);
        }
    }
}
