use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Counter-addressed random streams for a run.
///
/// Pulse `j` reads its photon-number uniform from the `j`-th 64-bit word of
/// stream 0 and any further randomness from its own stream `j + 1`. Every
/// pulse outcome is therefore a pure function of `(seed, j)`, independent of
/// how pulses are split across workers.
#[derive(Debug, Clone)]
pub struct TrialStreams {
    base: ChaCha8Rng,
}

impl TrialStreams {
    pub fn new(seed: u64) -> Self {
        TrialStreams {
            base: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Generator positioned at pulse `first`'s photon-number word. Successive
    /// `next_u64` calls serve pulses `first`, `first + 1`, ...
    pub fn photon_numbers_from(&self, first: u64) -> ChaCha8Rng {
        let mut rng = self.base.clone();
        rng.set_stream(0);
        // two 32-bit words per u64
        rng.set_word_pos(u128::from(first) * 2);
        rng
    }

    /// Private generator for the detection randomness of pulse `trial`.
    pub fn detection(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = self.base.clone();
        rng.set_stream(trial.wrapping_add(1));
        rng.set_word_pos(0);
        rng
    }
}

/// Uniform in [0, 1) from the top 53 bits, matching `rand`'s `f64` sampling.
#[inline]
pub fn unit_interval(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Per-point seed for the `index`-th point of a sweep.
pub fn point_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_add(index as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, RngCore};

    #[test]
    fn photon_words_are_random_access() {
        let streams = TrialStreams::new(17);
        let mut sequential = streams.photon_numbers_from(0);
        let words: Vec<u64> = (0..100).map(|_| sequential.next_u64()).collect();
        for j in [0u64, 1, 7, 63, 64, 99] {
            assert_eq!(streams.photon_numbers_from(j).next_u64(), words[j as usize]);
        }
    }

    #[test]
    fn detection_streams_are_distinct() {
        let streams = TrialStreams::new(17);
        let a = streams.detection(5).next_u64();
        let b = streams.detection(6).next_u64();
        let photon = streams.photon_numbers_from(0).next_u64();
        assert_ne!(a, b);
        assert_ne!(a, photon);
        assert_eq!(a, streams.detection(5).next_u64());
    }

    #[test]
    fn unit_interval_matches_rand() {
        let mut a = TrialStreams::new(3).photon_numbers_from(0);
        let mut b = a.clone();
        for _ in 0..1000 {
            assert_eq!(unit_interval(a.next_u64()), b.random::<f64>());
        }
        assert!(unit_interval(u64::MAX) < 1.0);
        assert_eq!(unit_interval(0), 0.0);
    }
}
