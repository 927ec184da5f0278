//! Parameter sweeps, the figure presets, and the checks that tie the
//! closed-form laws to the element-by-element network.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::fmt;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

use crate::analytic;
use crate::error::{Error, Result};
use crate::montecarlo::{estimate_coincidence, point_seed, SourceConfig};
use crate::optics::{FransonNetwork, PhaseConfig};

/// Grid density used by the presets: 0.5° resolution.
pub const POINTS_PER_TURN: usize = 361;

/// Agreement required between network propagation and the closed forms.
pub const NETWORK_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    /// R_AB from the closed form.
    CoincidenceRate,
    IntensityAlpha,
    IntensityBeta,
    /// I_α·I_β
    IntensityProduct,
    /// Normalized R_AB estimated by pulse-level Monte Carlo.
    CoincidenceMonteCarlo,
}

impl Observable {
    pub const ALL: [Observable; 5] = [
        Observable::CoincidenceRate,
        Observable::IntensityAlpha,
        Observable::IntensityBeta,
        Observable::IntensityProduct,
        Observable::CoincidenceMonteCarlo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Observable::CoincidenceRate => "R_AB",
            Observable::IntensityAlpha => "I_alpha",
            Observable::IntensityBeta => "I_beta",
            Observable::IntensityProduct => "product",
            Observable::CoincidenceMonteCarlo => "R_AB_montecarlo",
        }
    }

    pub fn is_stochastic(self) -> bool {
        self == Observable::CoincidenceMonteCarlo
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Observable::ALL
            .into_iter()
            .find(|o| o.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::config(
                    "observable",
                    s,
                    "expected one of R_AB, I_alpha, I_beta, product, R_AB_montecarlo",
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweptPhase {
    Phi,
    Psi,
    Theta,
}

impl SweptPhase {
    pub fn name(self) -> &'static str {
        match self {
            SweptPhase::Phi => "phi",
            SweptPhase::Psi => "psi",
            SweptPhase::Theta => "theta",
        }
    }

    /// `fixed` with this phase set to `value`. θ moves through η, keeping ξ.
    pub fn apply(self, fixed: PhaseConfig, value: f64) -> PhaseConfig {
        match self {
            SweptPhase::Phi => PhaseConfig { phi: value, ..fixed },
            SweptPhase::Psi => PhaseConfig { psi: value, ..fixed },
            SweptPhase::Theta => fixed.set_theta(value),
        }
    }
}

impl fmt::Display for SweptPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweptPhase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "phi" => Ok(SweptPhase::Phi),
            "psi" => Ok(SweptPhase::Psi),
            "theta" => Ok(SweptPhase::Theta),
            _ => Err(Error::config("sweep", s, "expected phi, psi or theta")),
        }
    }
}

/// Inclusive, evenly spaced grid from `start` to `end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl SweepRange {
    pub fn new(start: f64, end: f64, steps: usize) -> Self {
        SweepRange { start, end, steps }
    }

    /// One full turn at the preset resolution.
    pub fn full_turn() -> Self {
        SweepRange::new(0.0, TAU, POINTS_PER_TURN)
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::config("steps", self.steps.to_string(), "a sweep needs at least 2 points"));
        }
        if !self.start.is_finite() {
            return Err(Error::config("start", self.start.to_string(), "must be finite"));
        }
        if !self.end.is_finite() {
            return Err(Error::config("end", self.end.to_string(), "must be finite"));
        }
        if self.start >= self.end {
            return Err(Error::config(
                "end",
                self.end.to_string(),
                format!("must exceed start ({})", self.start),
            ));
        }
        Ok(())
    }

    pub fn value(&self, index: usize) -> f64 {
        if index + 1 == self.steps {
            self.end
        } else {
            self.start + (self.end - self.start) * index as f64 / (self.steps - 1) as f64
        }
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.steps).map(|i| self.value(i))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub observable: Observable,
    pub swept: SweptPhase,
    pub range: SweepRange,
    pub fixed: PhaseConfig,
    pub i0: f64,
    /// Required for, and only for, the Monte Carlo observable.
    pub source: Option<SourceConfig>,
}

impl SweepSpec {
    pub fn analytic(observable: Observable, swept: SweptPhase, range: SweepRange, fixed: PhaseConfig) -> Self {
        SweepSpec {
            observable,
            swept,
            range,
            fixed,
            i0: 1.0,
            source: None,
        }
    }

    pub fn monte_carlo(swept: SweptPhase, range: SweepRange, fixed: PhaseConfig, source: SourceConfig) -> Self {
        SweepSpec {
            observable: Observable::CoincidenceMonteCarlo,
            swept,
            range,
            fixed,
            i0: source.i0,
            source: Some(source),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.range.validate()?;
        if !(self.i0 > 0.0 && self.i0.is_finite()) {
            return Err(Error::config("i0", self.i0.to_string(), "must be positive and finite"));
        }
        for (key, value) in [
            ("phi", self.fixed.phi),
            ("psi", self.fixed.psi),
            ("eta", self.fixed.eta),
            ("xi", self.fixed.xi),
        ] {
            if !value.is_finite() {
                return Err(Error::config(key, value.to_string(), "must be finite"));
            }
        }
        match (self.observable.is_stochastic(), &self.source) {
            (true, None) => Err(Error::config(
                "source",
                "none",
                "the Monte Carlo observable needs a source configuration",
            )),
            (false, Some(_)) => Err(Error::config(
                "source",
                "set",
                format!("{} is analytic and takes no source configuration", self.observable),
            )),
            (true, Some(source)) => source.validate(),
            (false, None) => Ok(()),
        }
    }

    /// Legend text naming the parameters held fixed, phases in units of π.
    pub fn fixed_parameter_label(&self) -> String {
        let mut parts = Vec::new();
        if self.swept != SweptPhase::Phi {
            parts.push(format!("phi={}", format_pi_multiple(self.fixed.phi)));
        }
        if self.swept != SweptPhase::Psi {
            parts.push(format!("psi={}", format_pi_multiple(self.fixed.psi)));
        }
        if self.swept != SweptPhase::Theta {
            parts.push(format!("theta={}", format_pi_multiple(self.fixed.theta())));
        }
        parts.join(", ")
    }

    fn evaluate_analytic(&self, phases: &PhaseConfig) -> Result<f64> {
        let PhaseConfig { phi, psi, .. } = *phases;
        let theta = phases.theta();
        match self.observable {
            Observable::CoincidenceRate => analytic::coincidence_rate(phi, psi, self.i0),
            Observable::IntensityAlpha => analytic::intensity_alpha(phi, psi, theta, self.i0),
            Observable::IntensityBeta => analytic::intensity_beta(phi, psi, theta, self.i0),
            Observable::IntensityProduct => analytic::intensity_product(phi, psi, theta, self.i0),
            Observable::CoincidenceMonteCarlo => unreachable!("stochastic observable"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub swept_value: f64,
    pub value: f64,
    pub std_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    /// Base seed of a Monte Carlo sweep; point `i` uses `seed + i`.
    pub seed: Option<u64>,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub code_version: &'static str,
    pub notes: Vec<String>,
}

impl Provenance {
    fn now(seed: Option<u64>) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Provenance {
            seed,
            timestamp,
            code_version: env!("CARGO_PKG_VERSION"),
            notes: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
    pub provenance: Provenance,
}

impl SweepResult {
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.rows.iter().map(|r| (r.swept_value, r.value)).collect()
    }
}

/// Evaluates the selected observable on every grid point, in grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let range = spec.range;
    let rows = match spec.source {
        None => (0..range.steps)
            .into_par_iter()
            .map(|i| {
                let x = range.value(i);
                let phases = spec.swept.apply(spec.fixed, x);
                Ok(SweepRow {
                    swept_value: x,
                    value: spec.evaluate_analytic(&phases)?,
                    std_error: None,
                })
            })
            .collect::<Result<Vec<_>>>()?,
        Some(source) => {
            // points run in order; each estimate parallelizes internally
            let mut rows = Vec::with_capacity(range.steps);
            for i in 0..range.steps {
                let x = range.value(i);
                let phases = spec.swept.apply(spec.fixed, x);
                let estimate = estimate_coincidence(&phases, &source.with_seed(point_seed(source.seed, i)))?;
                let (value, std_error) = estimate.rate().map_err(|_| {
                    Error::Numeric(format!(
                        "no two-photon pulses at {}={x}; raise trials or mean photon number",
                        spec.swept
                    ))
                })?;
                rows.push(SweepRow {
                    swept_value: x,
                    value,
                    std_error: Some(std_error),
                });
            }
            rows
        }
    };
    Ok(SweepResult {
        spec: spec.clone(),
        rows,
        provenance: Provenance::now(spec.source.map(|s| s.seed)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Panel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
}

impl Panel {
    pub const ALL: [Panel; 8] = [
        Panel::A,
        Panel::B,
        Panel::C,
        Panel::D,
        Panel::E,
        Panel::F,
        Panel::G,
        Panel::H,
    ];

    pub fn letter(self) -> char {
        match self {
            Panel::A => 'a',
            Panel::B => 'b',
            Panel::C => 'c',
            Panel::D => 'd',
            Panel::E => 'e',
            Panel::F => 'f',
            Panel::G => 'g',
            Panel::H => 'h',
        }
    }
}

impl FromStr for Panel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        match (chars.next().map(|c| c.to_ascii_lowercase()), chars.next()) {
            (Some(c), None) => Panel::ALL
                .into_iter()
                .find(|p| p.letter() == c)
                .ok_or_else(|| Error::config("panel", s, "expected a letter from a to h")),
            _ => Err(Error::config("panel", s, "expected a letter from a to h")),
        }
    }
}

/// φ values drawn in the coincidence and θ = 0 intensity panels.
pub const PHI_FAMILY: [f64; 4] = [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2];

const PHI_FAMILY_NOTE: &str =
    "curves use the representative phase family {0, pi/2, pi, 3pi/2} for the fixed phase";

/// The preset sweeps behind one panel of the figure, one result per curve.
pub fn figure2_panel(panel: Panel) -> Result<Vec<SweepResult>> {
    use Observable::*;
    use SweptPhase::*;

    let turn = SweepRange::full_turn();
    let two_turns = SweepRange::new(0.0, 2.0 * TAU, 2 * POINTS_PER_TURN - 1);
    let mut note = None;

    let specs: Vec<SweepSpec> = match panel {
        Panel::A | Panel::C | Panel::D => {
            let observable = match panel {
                Panel::A => CoincidenceRate,
                Panel::C => IntensityAlpha,
                _ => IntensityBeta,
            };
            note = Some(PHI_FAMILY_NOTE);
            PHI_FAMILY
                .iter()
                .map(|&phi| SweepSpec::analytic(observable, Psi, turn, PhaseConfig::with_theta(phi, 0.0, 0.0)))
                .collect()
        }
        Panel::B => {
            note = Some(PHI_FAMILY_NOTE);
            PHI_FAMILY
                .iter()
                .map(|&psi| SweepSpec::analytic(CoincidenceRate, Phi, turn, PhaseConfig::with_theta(0.0, psi, 0.0)))
                .collect()
        }
        Panel::E | Panel::F => {
            let observable = if panel == Panel::E { IntensityAlpha } else { IntensityBeta };
            [0.0, FRAC_PI_2, PI]
                .iter()
                .map(|&theta| SweepSpec::analytic(observable, Phi, turn, PhaseConfig::with_theta(0.0, 0.0, theta)))
                .collect()
        }
        Panel::G => [0.0, FRAC_PI_4, FRAC_PI_2, PI]
            .iter()
            .map(|&psi| SweepSpec::analytic(IntensityProduct, Theta, two_turns, PhaseConfig::with_theta(0.0, psi, 0.0)))
            .collect(),
        Panel::H => [
            0.0,
            FRAC_PI_2,
            3.0 * FRAC_PI_4,
            PI,
            5.0 * FRAC_PI_4,
            3.0 * FRAC_PI_2,
        ]
        .iter()
        .map(|&phi| SweepSpec::analytic(IntensityAlpha, Theta, two_turns, PhaseConfig::with_theta(phi, 0.0, 0.0)))
        .collect(),
    };

    specs
        .iter()
        .map(|spec| {
            let mut result = run_sweep(spec)?;
            result.provenance.notes.push(format!("panel {}", panel.letter()));
            if let Some(note) = note {
                result.provenance.notes.push(note.to_string());
            }
            Ok(result)
        })
        .collect()
}

/// Maximum deviations found by one consistency check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: &'static str,
    pub points: usize,
    pub tolerance: f64,
    pub deviations: Vec<(&'static str, f64)>,
}

impl CheckReport {
    pub fn max_deviation(&self) -> f64 {
        self.deviations.iter().map(|&(_, d)| d).fold(0.0, f64::max)
    }

    pub fn deviation(&self, label: &str) -> Option<f64> {
        self.deviations.iter().find(|(l, _)| *l == label).map(|&(_, d)| d)
    }

    pub fn passed(&self) -> bool {
        self.deviations.iter().all(|&(_, d)| d <= self.tolerance)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "[{}] {} ({} points, tolerance {:e})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.points,
            self.tolerance
        )?;
        for (label, d) in &self.deviations {
            writeln!(f, "    max |{label}| = {d:.3e}")?;
        }
        Ok(())
    }
}

/// Inclusive grid over [0, 2π]³ with `steps` points per axis.
///
/// θ is split unevenly between η and ξ so both placements are exercised.
pub fn phase_grid(steps: usize) -> Result<Vec<PhaseConfig>> {
    let axis = SweepRange::new(0.0, TAU, steps);
    axis.validate()?;
    let values: Vec<f64> = axis.values().collect();
    let mut grid = Vec::with_capacity(steps.pow(3));
    for &phi in &values {
        for &psi in &values {
            for &theta in &values {
                grid.push(PhaseConfig::new(phi, psi, 0.3 * theta, 0.7 * theta));
            }
        }
    }
    Ok(grid)
}

fn max_over<F>(points: &[PhaseConfig], labels: &[&'static str], f: F) -> Vec<(&'static str, f64)>
where
    F: Fn(&PhaseConfig) -> Vec<f64> + Sync,
{
    let maxima = points
        .par_iter()
        .map(|p| f(p))
        .reduce(
            || vec![0.0; labels.len()],
            |a, b| a.iter().zip(&b).map(|(x, y)| x.max(*y)).collect(),
        );
    labels.iter().copied().zip(maxima).collect()
}

/// Network-propagated α/β intensities and pair coincidences against the
/// closed forms, over arbitrary phase points.
pub fn cross_validate_points(points: &[PhaseConfig], i0: f64) -> Result<CheckReport> {
    let network = FransonNetwork::new(i0)?;
    let deviations = max_over(
        points,
        &["I_alpha network - formula", "I_beta network - formula", "I_alpha + I_beta - 2 I0", "R_AB network - formula"],
        |p| {
            let out = network.propagate(p);
            let theta = p.theta();
            let alpha = analytic::intensity_alpha(p.phi, p.psi, theta, i0).expect("i0 validated");
            let beta = analytic::intensity_beta(p.phi, p.psi, theta, i0).expect("i0 validated");
            let rate = analytic::coincidence_rate(p.phi, p.psi, i0).expect("i0 validated");
            vec![
                (out.intensity_alpha() - alpha).abs(),
                (out.intensity_beta() - beta).abs(),
                (out.intensity_alpha() + out.intensity_beta() - 2.0 * i0).abs(),
                (out.coincidence() - rate).abs(),
            ]
        },
    );
    Ok(CheckReport {
        name: "network propagation vs closed-form intensities",
        points: points.len(),
        tolerance: NETWORK_TOLERANCE,
        deviations,
    })
}

/// [`cross_validate_points`] on a `steps`³ grid at unit I₀.
pub fn cross_validate_network(steps: usize) -> Result<CheckReport> {
    cross_validate_points(&phase_grid(steps)?, 1.0)
}

/// The conjugate output pair (α′, β′) against (α, β).
pub fn check_conjugate_points(points: &[PhaseConfig], i0: f64) -> Result<CheckReport> {
    let network = FransonNetwork::new(i0)?;
    let deviations = max_over(points, &["I_alpha' - I_alpha", "I_beta' - I_beta"], |p| {
        let out = network.propagate(p);
        vec![
            (out.intensity_alpha_conjugate() - out.intensity_alpha()).abs(),
            (out.intensity_beta_conjugate() - out.intensity_beta()).abs(),
        ]
    });
    Ok(CheckReport {
        name: "conjugate outputs match primary outputs",
        points: points.len(),
        tolerance: NETWORK_TOLERANCE,
        deviations,
    })
}

pub fn check_conjugate_outputs(steps: usize) -> Result<CheckReport> {
    check_conjugate_points(&phase_grid(steps)?, 1.0)
}

/// With the half-wave plate removed the network coincidence must sit at the
/// flat baseline I₀² at every phase.
pub fn check_no_superposition_baseline(steps: usize, i0: f64) -> Result<CheckReport> {
    let network = FransonNetwork::new(i0)?.without_superposition();
    let baseline = analytic::coincidence_no_superposition(i0)?;
    let points = phase_grid(steps)?;
    let deviations = max_over(&points, &["R_AB - I0^2"], |p| {
        vec![(network.propagate(p).coincidence() - baseline).abs()]
    });
    Ok(CheckReport {
        name: "no-superposition coincidence baseline",
        points: points.len(),
        tolerance: NETWORK_TOLERANCE,
        deviations,
    })
}

/// Formats a phase as a multiple of π for legends: `0`, `pi/2`, `3pi/4`, `1.2345pi`.
pub fn format_pi_multiple(angle: f64) -> String {
    let m = angle / PI;
    for den in [1i64, 2, 3, 4, 6, 8, 12] {
        let num = (m * den as f64).round();
        if (m * den as f64 - num).abs() < 1e-9 {
            let num = num as i64;
            let g = num_integer::gcd(num, den);
            let (num, den) = (num / g, den / g);
            let head = match num {
                0 => return "0".to_string(),
                1 => "pi".to_string(),
                -1 => "-pi".to_string(),
                n => format!("{n}pi"),
            };
            return if den == 1 { head } else { format!("{head}/{den}") };
        }
    }
    format!("{m:.4}pi")
}
