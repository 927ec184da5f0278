//! Simulation and analysis of polarization-basis Franson interferometry with
//! attenuated laser light.
//!
//! * [`optics`] propagates polarization-resolved fields through the
//!   two-party network element by element.
//! * [`analytic`] evaluates the closed-form coincidence and output-intensity laws.
//! * [`montecarlo`] counts coincidences pulse by pulse for a Poisson source.
//! * [`experiment`] runs parameter sweeps, the figure presets and the
//!   network-versus-formula cross checks.
//! * [`cli`] holds the command-line configuration and the CSV/SVG writers.

pub mod analytic;
pub mod cli;
pub mod error;
pub mod experiment;
pub mod montecarlo;
pub mod optics;

pub use error::{Error, Result};
