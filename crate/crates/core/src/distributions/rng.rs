use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::normal::normal_quantile;

/// Seeded, counter-based random source.
///
/// `(seed, stream)` fully determines the output sequence on every platform.
/// Simulation replicate `j` draws from stream `j`, so results do not depend
/// on how replicates are scheduled across workers.
#[derive(Clone, Debug)]
pub struct Rng {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl Rng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self {
            seed,
            stream,
            inner,
        }
    }

    /// Fresh generator on another stream of the same seed.
    pub fn substream(&self, stream: u64) -> Self {
        Self::new(self.seed, stream)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    pub fn uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// One standard normal draw by inversion.
    pub fn normal(&mut self) -> f64 {
        normal_quantile(self.uniform())
    }
}

/// `n` independent standard normal draws.
pub fn sample_normal(rng: &mut Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.normal()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_draw() {
        assert!(sample_normal(&mut Rng::new(1, 0), 0).is_empty());
    }

    #[test]
    fn same_seed_and_stream_repeat() {
        let a = sample_normal(&mut Rng::new(42, 7), 100);
        let b = sample_normal(&mut Rng::new(42, 7), 100);
        assert_eq!(a, b);
        let c = sample_normal(&mut Rng::new(42, 8), 100);
        assert_ne!(a, c);
    }

    #[test]
    fn substream_matches_direct_construction() {
        let base = Rng::new(9, 0);
        let mut s = base.substream(3);
        let mut d = Rng::new(9, 3);
        for _ in 0..10 {
            assert_eq!(s.next_u64(), d.next_u64());
        }
    }

    #[test]
    fn uniform_stays_open() {
        let mut r = Rng::new(0, 0);
        for _ in 0..10_000 {
            let u = r.uniform();
            assert!(u > 0.0 && u < 1.0);
        }
    }

    #[test]
    fn pinned_first_draws() {
        // Frozen so that a change of generator or sampler is noticed.
        let mut r = Rng::new(2024, 0);
        assert_eq!(r.next_u64(), 3_080_959_604_347_521_991);
        assert_eq!(r.normal(), 2.107_758_926_165_117_5);
    }
}
