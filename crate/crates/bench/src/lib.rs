//! Fixed inputs shared by the benchmarks.

use dsrecon_core::recon::SimRng;
use dsrecon_core::verify::random_pair_at_distance;
use dsrecon_core::Word;
use rand::SeedableRng;

/// `count` seeded pairs at Hamming distance `d`.
pub fn pairs(q: u8, n: usize, d: usize, count: usize) -> Vec<(Word, Word)> {
    let mut rng = SimRng::seed_from_u64(0x5eed ^ (q as u64) << 8 ^ n as u64);
    (0..count).map(|_| random_pair_at_distance(&mut rng, q, n, d)).collect()
}
