//! A small, fully specified, splittable pseudo-random generator, so that
//! simulation results are reproducible bit for bit from a seed across
//! machines and language ports.
//!
//! The generator is SplitMix64 (Vigna's 64-bit finalizer over a Weyl
//! sequence). State and output are `u64`; all arithmetic is mod 2^64:
//!
//! ```text
//! next_u64():
//!     state <- state + 0x9E3779B97F4A7C15
//!     z <- state
//!     z <- (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9
//!     z <- (z XOR (z >> 27)) * 0x94D049BB133111EB
//!     return z XOR (z >> 31)
//! ```
//!
//! Uniform doubles use the 53-bit mantissa convention:
//! `next_f64() = (next_u64() >> 11) * 2^-53`, uniform on `[0, 1)`.
//!
//! Parallel work uses independent substreams keyed on `(seed, worker)`:
//! the substream's initial state is `mix(seed XOR (worker + 1) * 0x9E3779B97F4A7C15)`
//! where `mix` is the finalizer above without the Weyl increment. Distinct
//! workers therefore start from well-separated states regardless of seed.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A source of uniform variates on `[0, 1)`.
pub trait RandomStream {
    fn next_uniform(&mut self) -> f64;
}

/// SplitMix64 state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// A stream seeded directly with `seed`.
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// The independent substream for `(seed, worker)`.
    pub fn substream(seed: u64, worker: u64) -> Self {
        SplitMix64 {
            state: mix(seed ^ worker.wrapping_add(1).wrapping_mul(GOLDEN)),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix(self.state)
    }

    /// Uniform on `[0, 1)` with 53 random mantissa bits.
    pub fn next_f64(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        (self.next_u64() >> 11) as f64 * SCALE
    }
}

impl RandomStream for SplitMix64 {
    fn next_uniform(&mut self) -> f64 {
        self.next_f64()
    }
}
