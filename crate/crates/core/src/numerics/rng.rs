use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A reproducible random stream identified by `(seed, stream_index)`.
///
/// Backed by ChaCha8, a counter-based generator: every stream index selects an
/// independent keystream for the same key, so per-shard substreams cost
/// nothing to create and never overlap.
#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    stream_index: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream_index);
        Self { seed, stream_index, inner }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// A fresh stream with the same seed and a different index.
    pub fn substream(&self, stream_index: u64) -> Self {
        Self::new(self.seed, stream_index)
    }

    /// Uniform variate on the open interval (0, 1).
    pub fn open01(&mut self) -> f64 {
        // 52 random mantissa bits, offset by half an ulp
        ((self.inner.next_u64() >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}
