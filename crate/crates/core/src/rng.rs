//! Fixed 64-bit linear congruential generator for reproducible sampling.
//!
//! `state ← state · 6364136223846793005 + 1442695040888963407 (mod 2^64)`,
//! output is the high 32 bits of the new state. The seed is the initial
//! state. Reports record the seed, and any implementation following these
//! three lines replays the same samples.

#[derive(Clone, Debug)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        (self.state >> 32) as u32
    }

    /// Value in `[0, n)` by multiply-shift; `n` must fit in 32 bits.
    pub fn below(&mut self, n: usize) -> usize {
        ((self.next_u32() as u64 * n as u64) >> 32) as usize
    }
}
