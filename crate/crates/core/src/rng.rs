//! Seeded random streams.
//!
//! Every randomized routine in the crate draws from a [`SearchRng`]. Streams
//! are split deterministically so that work fanned out to threads sees the
//! same numbers it would see when run sequentially.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer. Used to derive child seeds from `(seed, index)`.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the `index`-th child of `seed`. Independent of evaluation order.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    mix64(mix64(seed) ^ mix64(index.wrapping_add(0x5851_f42d_4c95_7f2d)))
}

#[derive(Debug, Clone)]
pub struct SearchRng {
    inner: ChaCha8Rng,
}

impl SearchRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Child stream seeded from the next draw of this one.
    pub fn split(&mut self) -> SearchRng {
        let seed = self.inner.next_u64();
        SearchRng::new(mix64(seed))
    }

    /// Uniform index in `0..len`. `len` must be nonzero.
    pub fn index(&mut self, len: usize) -> usize {
        self.inner.random_range(0..len)
    }
}

impl RngCore for SearchRng {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = SearchRng::new(7);
        let mut b = SearchRng::new(7);
        for _ in 0..16 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn split_children_differ() {
        let mut r = SearchRng::new(1);
        let mut c1 = r.split();
        let mut c2 = r.split();
        assert_ne!(c1.next_u64(), c2.next_u64());
    }

    #[test]
    fn derived_seeds_are_distinct() {
        let seeds: std::collections::HashSet<_> = (0..1000).map(|i| derive_seed(42, i)).collect();
        assert_eq!(seeds.len(), 1000);
        assert_ne!(derive_seed(1, 0), derive_seed(0, 1));
    }
}
