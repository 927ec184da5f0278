//! Pulse-by-pulse simulation of the attenuated laser feeding both parties,
//! and the coincidence estimator built on it.
//!
//! Each pulse carries k ~ Poisson(⟨n⟩) photons. Vacuum and single-photon
//! pulses never give a coincidence; pulses with three or more photons are
//! discarded and counted separately. A two-photon pulse sends one photon to
//! each party and fires a coincidence with the pair probability read off the
//! propagated party states (the normalized coincidence fringe).

mod source;
mod streams;

use std::ops::{Add, AddAssign};

use rand::{Rng, RngCore};
use rayon::prelude::*;

pub use source::{poisson_pmf, sample_photon_number, PhotonNumberSampler, SourceConfig};
pub use streams::{point_seed, unit_interval, TrialStreams};

use crate::error::{Error, Result};
use crate::optics::{FransonNetwork, PhaseConfig, PolarizationMode};

/// Pulses per work unit. Fixed, so partitioning never depends on the worker count.
pub const BLOCK_TRIALS: u64 = 1 << 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialRecord {
    pub photon_count: u64,
    pub alice_click: bool,
    pub bob_click: bool,
    pub coincidence: bool,
}

impl TrialRecord {
    fn dark(photon_count: u64) -> Self {
        TrialRecord {
            photon_count,
            alice_click: false,
            bob_click: false,
            coincidence: false,
        }
    }
}

/// Random H or V with equal probability (the 45° plate's basis choice).
pub fn sample_polarization<R: Rng + ?Sized>(rng: &mut R) -> PolarizationMode {
    if rng.random_bool(0.5) {
        PolarizationMode::H
    } else {
        PolarizationMode::V
    }
}

/// Probability that a photon pair registers a coincidence at these phases.
///
/// Computed from the propagated party states, |⟨B|A⟩|²/(I_A·I_B).
pub fn pair_coincidence_probability(phases: &PhaseConfig) -> f64 {
    let network = FransonNetwork::new(1.0).expect("unit scale is valid");
    network
        .propagate(phases)
        .coincidence_probability()
        .clamp(0.0, 1.0)
}

fn resolve_trial<R: Rng + ?Sized>(photon_count: u64, pair_probability: f64, rng: &mut R) -> TrialRecord {
    match photon_count {
        0 => TrialRecord::dark(0),
        1 => {
            let to_alice = rng.random_bool(0.5);
            TrialRecord {
                photon_count: 1,
                alice_click: to_alice,
                bob_click: !to_alice,
                coincidence: false,
            }
        }
        2 => TrialRecord {
            photon_count: 2,
            alice_click: true,
            bob_click: true,
            coincidence: rng.random_bool(pair_probability),
        },
        k => TrialRecord::dark(k),
    }
}

/// Simulates one pulse drawing all randomness from `rng`.
pub fn run_trial<R: Rng + ?Sized>(phases: &PhaseConfig, mean_photon_number: f64, rng: &mut R) -> Result<TrialRecord> {
    let k = sample_photon_number(mean_photon_number, rng)?;
    Ok(resolve_trial(k, pair_coincidence_probability(phases), rng))
}

/// Reconstructs pulse `trial` of a counter-addressed run.
///
/// Agrees pulse for pulse with what [`estimate_coincidence`] counts.
pub fn trial_record(streams: &TrialStreams, sampler: &PhotonNumberSampler, pair_probability: f64, trial: u64) -> TrialRecord {
    let u = unit_interval(streams.photon_numbers_from(trial).next_u64());
    let k = sampler.sample_uniform(u);
    resolve_trial(k, pair_probability, &mut streams.detection(trial))
}

/// Pulse tallies. Addition is the aggregation monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TrialCounts {
    pub trials: u64,
    pub vacuum: u64,
    pub singles: u64,
    pub pairs: u64,
    pub coincidences: u64,
    /// Pulses with three or more photons, discarded.
    pub multi: u64,
}

impl TrialCounts {
    pub fn record(&mut self, record: &TrialRecord) {
        self.trials += 1;
        match record.photon_count {
            0 => self.vacuum += 1,
            1 => self.singles += 1,
            2 => self.pairs += 1,
            _ => self.multi += 1,
        }
        if record.coincidence {
            self.coincidences += 1;
        }
    }
}

impl Add for TrialCounts {
    type Output = TrialCounts;

    fn add(self, rhs: TrialCounts) -> TrialCounts {
        TrialCounts {
            trials: self.trials + rhs.trials,
            vacuum: self.vacuum + rhs.vacuum,
            singles: self.singles + rhs.singles,
            pairs: self.pairs + rhs.pairs,
            coincidences: self.coincidences + rhs.coincidences,
            multi: self.multi + rhs.multi,
        }
    }
}

impl AddAssign for TrialCounts {
    fn add_assign(&mut self, rhs: TrialCounts) {
        *self = *self + rhs;
    }
}

/// Binomial estimate of the normalized coincidence rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoincidenceEstimate {
    /// coincidences / pair pulses; `None` if no pair pulse occurred.
    pub normalized_rate: Option<f64>,
    /// √(p(1 − p)/pairs); `None` alongside the rate.
    pub std_error: Option<f64>,
    pub raw_coincidences: u64,
    pub raw_pairs: u64,
    pub counts: TrialCounts,
}

impl CoincidenceEstimate {
    pub fn from_counts(counts: TrialCounts) -> Self {
        let (normalized_rate, std_error) = if counts.pairs == 0 {
            (None, None)
        } else {
            let n = counts.pairs as f64;
            let p = counts.coincidences as f64 / n;
            (Some(p), Some((p * (1.0 - p) / n).sqrt()))
        };
        CoincidenceEstimate {
            normalized_rate,
            std_error,
            raw_coincidences: counts.coincidences,
            raw_pairs: counts.pairs,
            counts,
        }
    }

    /// Rate and standard error, or a numeric error when no pair was seen.
    pub fn rate(&self) -> Result<(f64, f64)> {
        match (self.normalized_rate, self.std_error) {
            (Some(p), Some(s)) => Ok((p, s)),
            _ => Err(Error::Numeric(format!(
                "no two-photon pulses in {} trials; coincidence rate undefined",
                self.counts.trials
            ))),
        }
    }

    /// Fraction of pulses discarded for carrying three or more photons.
    pub fn multi_photon_fraction(&self) -> f64 {
        self.counts.multi as f64 / self.counts.trials as f64
    }
}

fn count_block(streams: &TrialStreams, sampler: &PhotonNumberSampler, pair_probability: f64, start: u64, end: u64) -> TrialCounts {
    let mut counts = TrialCounts {
        trials: end - start,
        ..TrialCounts::default()
    };
    let mut photon_words = streams.photon_numbers_from(start);
    for trial in start..end {
        let k = sampler.sample_uniform(unit_interval(photon_words.next_u64()));
        match k {
            0 => counts.vacuum += 1,
            // which party a lone photon reaches never affects the tallies
            1 => counts.singles += 1,
            2 => {
                counts.pairs += 1;
                if streams.detection(trial).random_bool(pair_probability) {
                    counts.coincidences += 1;
                }
            }
            _ => counts.multi += 1,
        }
    }
    counts
}

/// Runs `config.trials` pulses on the current rayon pool.
///
/// The result is bit-identical for a given `(seed, trials)` whatever the
/// number of worker threads.
pub fn estimate_coincidence(phases: &PhaseConfig, config: &SourceConfig) -> Result<CoincidenceEstimate> {
    config.validate()?;
    let sampler = PhotonNumberSampler::new(config.mean_photon_number)?;
    let pair_probability = pair_coincidence_probability(phases);
    let streams = TrialStreams::new(config.seed);
    let blocks = config.trials.div_ceil(BLOCK_TRIALS);
    let counts = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let start = b * BLOCK_TRIALS;
            let end = (start + BLOCK_TRIALS).min(config.trials);
            count_block(&streams, &sampler, pair_probability, start, end)
        })
        .reduce(TrialCounts::default, Add::add);
    Ok(CoincidenceEstimate::from_counts(counts))
}

/// [`estimate_coincidence`] on a dedicated pool of `workers` threads.
pub fn estimate_coincidence_with_workers(phases: &PhaseConfig, config: &SourceConfig, workers: usize) -> Result<CoincidenceEstimate> {
    let pool = worker_pool(workers)?;
    pool.install(|| estimate_coincidence(phases, config))
}

pub(crate) fn worker_pool(workers: usize) -> Result<rayon::ThreadPool> {
    if workers == 0 {
        return Err(Error::config("workers", "0", "at least one worker is required"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Numeric(format!("cannot start worker pool: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn polarization_is_fair() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let n = 1_000_000;
        let h = (0..n)
            .filter(|_| sample_polarization(&mut rng) == PolarizationMode::H)
            .count();
        let frac = h as f64 / n as f64;
        assert!((0.4985..=0.5015).contains(&frac), "{frac}");
    }

    #[test]
    fn polarization_sequence_is_seeded() {
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..64).map(|_| sample_polarization(&mut rng)).collect::<Vec<_>>()
        };
        assert_eq!(draw(99), draw(99));
        assert_ne!(draw(99), draw(100));
    }

    #[test]
    fn alice_and_bob_bases_uncorrelated() {
        let streams = TrialStreams::new(4);
        let mut alice = streams.detection(0);
        let mut bob = streams.detection(1);
        let n = 1_000_000;
        let (mut sa, mut sb, mut sab) = (0.0, 0.0, 0.0);
        for _ in 0..n {
            let a = if sample_polarization(&mut alice) == PolarizationMode::H { 1.0 } else { -1.0 };
            let b = if sample_polarization(&mut bob) == PolarizationMode::H { 1.0 } else { -1.0 };
            sa += a;
            sb += b;
            sab += a * b;
        }
        let n = n as f64;
        let cov = sab / n - (sa / n) * (sb / n);
        let var_a = 1.0 - (sa / n).powi(2);
        let var_b = 1.0 - (sb / n).powi(2);
        let corr = cov / (var_a * var_b).sqrt();
        assert!(corr.abs() < 0.005, "{corr}");
    }

    #[test]
    fn pair_probability_follows_fringe() {
        for (phi, psi, theta, expected) in [
            (0.0, 0.0, 0.3, 1.0),
            (PI, 0.0, 0.0, 0.0),
            (FRAC_PI_2, 0.0, 1.234, 0.5),
            (1.0, 0.4, -2.0, 0.5 * (1.0 + 0.6f64.cos())),
        ] {
            let p = pair_coincidence_probability(&PhaseConfig::with_theta(phi, psi, theta));
            assert!((p - expected).abs() < 1e-12, "{phi} {psi}: {p}");
        }
    }

    #[test]
    fn trial_outcomes_by_photon_number() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..1000 {
            let r = resolve_trial(2, 1.0, &mut rng);
            assert!(r.coincidence && r.alice_click && r.bob_click);
            let r = resolve_trial(2, 0.0, &mut rng);
            assert!(!r.coincidence);
            let r = resolve_trial(1, 1.0, &mut rng);
            assert!(!r.coincidence);
            assert!(r.alice_click ^ r.bob_click);
            assert_eq!(resolve_trial(0, 1.0, &mut rng), TrialRecord::dark(0));
            assert_eq!(resolve_trial(3, 1.0, &mut rng), TrialRecord::dark(3));
        }
    }

    #[test]
    fn run_trial_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let phases = PhaseConfig::with_theta(0.2, 0.2, 0.9);
        let mut pairs = 0;
        for _ in 0..50_000 {
            let r = run_trial(&phases, 0.3, &mut rng).unwrap();
            if r.coincidence {
                assert!(r.alice_click && r.bob_click);
            }
            if r.photon_count <= 1 {
                assert!(!r.coincidence);
            }
            if r.photon_count == 2 {
                pairs += 1;
                // φ = ψ: every pair coincides
                assert!(r.coincidence);
            }
        }
        assert!(pairs > 0);
        assert!(run_trial(&phases, 0.0, &mut rng).is_err());
    }

    #[test]
    fn estimator_counts_match_trial_records() {
        let phases = PhaseConfig::with_theta(FRAC_PI_2, 0.0, 0.0);
        let config = SourceConfig::new(0.4, 20_000, 77, 1.0).unwrap();
        let est = estimate_coincidence(&phases, &config).unwrap();

        let streams = TrialStreams::new(config.seed);
        let sampler = PhotonNumberSampler::new(config.mean_photon_number).unwrap();
        let p = pair_coincidence_probability(&phases);
        let mut counts = TrialCounts::default();
        for j in 0..config.trials {
            counts.record(&trial_record(&streams, &sampler, p, j));
        }
        assert_eq!(est.counts, counts);
        assert_eq!(est.raw_pairs, counts.pairs);
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let phases = PhaseConfig::with_theta(1.0, 0.2, 0.5);
        // not a multiple of the block size
        let config = SourceConfig::new(0.05, 3 * BLOCK_TRIALS + 12_345, 5, 1.0).unwrap();
        let one = estimate_coincidence_with_workers(&phases, &config, 1).unwrap();
        let four = estimate_coincidence_with_workers(&phases, &config, 4).unwrap();
        let seven = estimate_coincidence_with_workers(&phases, &config, 7).unwrap();
        assert_eq!(one, four);
        assert_eq!(one, seven);
        assert!(estimate_coincidence_with_workers(&phases, &config, 0).is_err());
    }

    #[test]
    fn no_pairs_is_flagged_not_nan() {
        let config = SourceConfig::new(1e-9, 10, 1, 1.0).unwrap();
        let est = estimate_coincidence(&PhaseConfig::default(), &config).unwrap();
        assert_eq!(est.raw_pairs, 0);
        assert_eq!(est.normalized_rate, None);
        assert_eq!(est.std_error, None);
        assert!(est.rate().is_err());
    }

    #[test]
    fn std_error_is_binomial() {
        let counts = TrialCounts {
            trials: 1000,
            pairs: 400,
            coincidences: 100,
            ..TrialCounts::default()
        };
        let est = CoincidenceEstimate::from_counts(counts);
        let (p, s) = est.rate().unwrap();
        assert_eq!(p, 0.25);
        assert!((s - (0.25f64 * 0.75 / 400.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn multi_photon_pulses_are_reported() {
        let config = SourceConfig::new(0.5, 200_000, 3, 1.0).unwrap();
        let est = estimate_coincidence(&PhaseConfig::default(), &config).unwrap();
        let p3 = 1.0 - (0..3).map(|k| poisson_pmf(k, 0.5)).sum::<f64>();
        let n = config.trials as f64;
        let sigma = (n * p3 * (1.0 - p3)).sqrt();
        assert!((est.counts.multi as f64 - n * p3).abs() <= 5.0 * sigma);
        assert!((est.multi_photon_fraction() - p3).abs() <= 5.0 * sigma / n);
    }
}
