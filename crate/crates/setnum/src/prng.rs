//! Seeded deterministic PRNG so every generated instance is bit-identical
//! across runs and platforms.

use num_traits::One;

use crate::numeric::{nat, Nat};

/// SplitMix64: 64-bit state advanced by a fixed odd constant, output mixed
/// by two xor-shift-multiply rounds. Chosen for its tiny, well-known spec.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
    // buffered bits for the bit-stream view, most significant first
    bit_buf: u64,
    bit_count: u32,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 {
            state: seed,
            bit_buf: 0,
            bit_count: 0,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, bound) by rejection from the top bits of the stream.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        if bound.is_power_of_two() {
            return self.next_u64() & (bound - 1);
        }
        // zone rejection: accept only the largest multiple of bound
        let zone = u64::MAX - (u64::MAX % bound + 1) % bound;
        loop {
            let v = self.next_u64();
            if v <= zone {
                return v % bound;
            }
        }
    }

    /// Next bit of the stream, most significant bit of each word first.
    pub fn next_bit(&mut self) -> bool {
        if self.bit_count == 0 {
            self.bit_buf = self.next_u64();
            self.bit_count = 64;
        }
        self.bit_count -= 1;
        (self.bit_buf >> self.bit_count) & 1 == 1
    }

    /// Uniform Nat in [0, bound), drawing bits(bound) bits and rejecting
    /// values that overshoot.
    pub fn below_nat(&mut self, bound: &Nat) -> Nat {
        assert!(bound > &Nat::from(0u32));
        let bits = bound.bits();
        loop {
            let mut v = Nat::from(0u32);
            for _ in 0..bits {
                v <<= 1u32;
                if self.next_bit() {
                    v += 1u32;
                }
            }
            if &v < bound {
                return v;
            }
        }
    }

    /// Uniform Nat in the inclusive interval [0, 2^i].
    pub fn in_scale_interval(&mut self, i: u64) -> Nat {
        let bound = (Nat::one() << i) + 1u32;
        self.below_nat(&bound)
    }

    /// Random Nat with exactly `bits` binary digits (leading bit forced).
    pub fn nat_with_bits(&mut self, bits: u64) -> Nat {
        assert!(bits >= 1);
        let mut v = Nat::one();
        for _ in 1..bits {
            v <<= 1u32;
            if self.next_bit() {
                v += 1u32;
            }
        }
        v
    }
}

/// Uniform f64 in [0,1) — used only by Monte Carlo estimators.
pub fn unit_f64(rng: &mut SplitMix64) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[allow(unused)]
pub fn nat_below(rng: &mut SplitMix64, bound: u64) -> Nat {
    nat(rng.below(bound))
}
