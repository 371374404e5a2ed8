//! Counter-based SplitMix64 stream.
//!
//! The `k`-th output (k = 1, 2, ...) of stream `(seed, stream_id)` is
//!
//! ```text
//! base   = mix(seed) ^ mix(stream_id ^ 0x6A09E667F3BCC909)
//! output = mix(base + k · 0x9E3779B97F4A7C15)        (wrapping u64 arithmetic)
//!
//! mix(z): z = (z ^ (z >> 30)) · 0xBF58476D1CE4E5B9
//!         z = (z ^ (z >> 27)) · 0x94D049BB133111EB
//!         z ^ (z >> 31)
//! ```
//!
//! Uniforms on the open interval (0, 1) are `((output >> 11) + 0.5) · 2⁻⁵³`.

use serde::Serialize;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const STREAM_SALT: u64 = 0x6A09_E667_F3BC_C909;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RngState {
    seed: u64,
    stream_id: u64,
    counter: u64,
    #[serde(skip)]
    base: u64,
}

impl RngState {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        RngState {
            seed,
            stream_id,
            counter: 0,
            base: mix(seed) ^ mix(stream_id ^ STREAM_SALT),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Number of 64-bit words drawn so far.
    pub fn counter(&self) -> u64 {
        self.counter
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix(self
            .base
            .wrapping_add(self.counter.wrapping_mul(GOLDEN_GAMMA)))
    }

    /// Uniform draw on the open interval (0, 1).
    pub fn next_open01(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }
}
