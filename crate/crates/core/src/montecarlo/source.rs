use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{require_positive, Error, Result};

/// Attenuated-laser source and run length for a Monte Carlo estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceConfig {
    /// Mean photon number per pulse, ⟨n⟩.
    pub mean_photon_number: f64,
    /// Number of laser pulses.
    pub trials: u64,
    pub seed: u64,
    pub i0: f64,
}

impl SourceConfig {
    pub fn new(mean_photon_number: f64, trials: u64, seed: u64, i0: f64) -> Result<Self> {
        let config = SourceConfig {
            mean_photon_number,
            trials,
            seed,
            i0,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("mean photon number", self.mean_photon_number)?;
        require_positive("i0", self.i0)?;
        if self.trials == 0 {
            return Err(Error::config("trials", "0", "at least one pulse is required"));
        }
        Ok(())
    }

    pub fn with_seed(self, seed: u64) -> Self {
        SourceConfig { seed, ..self }
    }

    /// Expected number of two-photon pulses, trials·P(2).
    pub fn expected_pairs(&self) -> f64 {
        self.trials as f64 * poisson_pmf(2, self.mean_photon_number)
    }
}

/// P(k) = e^{−⟨n⟩}⟨n⟩^k / k!, evaluated in log space.
pub fn poisson_pmf(k: u64, mean: f64) -> f64 {
    if k == 0 {
        return (-mean).exp();
    }
    let log_factorial: f64 = (1..=k).map(|j| (j as f64).ln()).sum();
    (k as f64 * mean.ln() - mean - log_factorial).exp()
}

/// Means up to this use the tabulated inverse CDF; larger ones fall back to
/// `rand_distr::Poisson`.
const TABLE_MAX_MEAN: f64 = 64.0;

/// Inverse-CDF photon-number sampler: one uniform in, one count out.
///
/// Consuming exactly one uniform per pulse keeps every pulse addressable by
/// its index in a counter-based stream.
#[derive(Debug, Clone)]
pub struct PhotonNumberSampler {
    mean: f64,
    cdf: Vec<f64>,
}

impl PhotonNumberSampler {
    pub fn new(mean: f64) -> Result<Self> {
        let mean = require_positive("mean photon number", mean)?;
        if mean > TABLE_MAX_MEAN {
            return Err(Error::Domain {
                name: "mean photon number",
                requirement: "at most 64 for the tabulated sampler",
                value: mean,
            });
        }
        let mut cdf = Vec::new();
        let mut pmf = (-mean).exp();
        let mut total = 0.0;
        let mut k = 0u64;
        loop {
            total += pmf;
            cdf.push(total);
            k += 1;
            pmf *= mean / k as f64;
            // stop once the remaining tail is below f64 resolution of a uniform
            if (k as f64) > mean && (1.0 - total < f64::EPSILON || pmf < 1e-300) {
                break;
            }
        }
        Ok(PhotonNumberSampler { mean, cdf })
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Maps a uniform in [0, 1) to a photon number.
    #[inline]
    pub fn sample_uniform(&self, u: f64) -> u64 {
        // Vacuum dominates at low ⟨n⟩; test it before the search.
        if u < self.cdf[0] {
            0
        } else {
            self.cdf.partition_point(|&c| c <= u) as u64
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        self.sample_uniform(rng.random::<f64>())
    }
}

/// Draws a pulse photon number k ~ Poisson(mean).
pub fn sample_photon_number<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> Result<u64> {
    let mean = require_positive("mean photon number", mean)?;
    if mean <= TABLE_MAX_MEAN {
        Ok(PhotonNumberSampler::new(mean)?.sample(rng))
    } else {
        let poisson = Poisson::new(mean).map_err(|e| Error::Numeric(e.to_string()))?;
        Ok(poisson.sample(rng) as u64)
    }
}
