//! SplitMix64, used for reproducible sampling.
//!
//! The state advances by the golden-ratio increment `0x9E3779B97F4A7C15`
//! and each output is finalized with the multipliers `0xBF58476D1CE4E5B9`
//! and `0x94D049BB133111EB` (shifts 30, 27, 31). Sample `i` of a run seeded
//! with `s` draws from its own stream, seeded with `mix(s + (i+1)·γ)`, so any
//! sample can be generated without producing the ones before it.

pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
pub fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// The independent stream for sample `index` of a run seeded with `seed`.
    pub fn for_sample(seed: u64, index: u64) -> Self {
        Self::new(mix(
            seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA))
        ))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix(self.state)
    }

    /// Uniform in `[0, n)` by rejection.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }
}
