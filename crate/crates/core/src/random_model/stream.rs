//! Counter-based sign streams keyed by `(seed, draw)`.
//!
//! The sign of the prime `q` in draw `d` is bit `q` of the ChaCha8 keystream
//! for `(seed, stream 2d)`; the sign at -1 is bit 0 of stream `2d + 1`. Any
//! single sign can be read without generating the ones before it, so a sign
//! never depends on how many primes were requested.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StreamKey {
    pub seed: u64,
    pub draw: u64,
}

impl StreamKey {
    pub fn new(seed: u64, draw: u64) -> Self {
        Self { seed, draw }
    }

    fn rng(self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    /// Keystream words covering bits `0..=max_bit` of the prime-sign stream.
    pub fn prime_words(self, max_bit: u64) -> Vec<u32> {
        let words = (max_bit / 32 + 1) as usize;
        let mut rng = self.rng(2 * self.draw);
        (0..words).map(|_| rng.next_u32()).collect()
    }

    /// Sign of a single prime `q`.
    pub fn prime_sign(self, q: u64) -> i8 {
        let mut rng = self.rng(2 * self.draw);
        rng.set_word_pos((q / 32) as u128);
        bit_to_sign(rng.next_u32() >> (q % 32))
    }

    pub fn minus_one_sign(self) -> i8 {
        bit_to_sign(self.rng(2 * self.draw + 1).next_u32())
    }
}

#[inline]
pub(crate) fn bit_to_sign(word: u32) -> i8 {
    if word & 1 == 1 {
        1
    } else {
        -1
    }
}

#[inline]
pub(crate) fn sign_from_words(words: &[u32], q: u64) -> i8 {
    bit_to_sign(words[(q / 32) as usize] >> (q % 32))
}
