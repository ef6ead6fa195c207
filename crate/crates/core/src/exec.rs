//! Seeding and the data-parallel map used by Monte Carlo and seed sweeps.
//!
//! Every random stream is a ChaCha8 generator seeded through `seed_from_u64`.
//! Work is split into a fixed number of independently seeded chunks, so a
//! result depends only on `(seed, trials)` and never on the thread count or
//! on whether the `parallel` feature is enabled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type StdRng = ChaCha8Rng;

/// Number of independent sub-streams a Monte Carlo run is split into.
pub const MC_CHUNKS: u64 = 64;

pub fn rng(seed: u64) -> StdRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives the seed of sub-stream `stream` (SplitMix64 finalizer).
pub fn sub_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform index in `0..n`, drawn through `u64` so it is the same on every platform.
#[inline]
pub fn below<R: Rng + ?Sized>(rng: &mut R, n: usize) -> usize {
    rng.gen_range(0..n as u64) as usize
}

/// How a batch of independent jobs is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is on, sequential otherwise.
    Parallel,
}

impl Default for Exec {
    fn default() -> Exec {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            _ => items.into_iter().map(f).collect(),
        }
    }
}

/// Splits `trials` over [`MC_CHUNKS`] seeded chunks and sums the per-chunk counts.
pub fn count_successes<F>(trials: u64, seed: u64, exec: Exec, f: F) -> u64
where
    F: Fn(&mut StdRng, u64) -> u64 + Sync + Send,
{
    let chunks: Vec<(u64, u64)> = (0..MC_CHUNKS)
        .map(|c| {
            let size = trials / MC_CHUNKS + u64::from(c < trials % MC_CHUNKS);
            (c, size)
        })
        .filter(|&(_, size)| size > 0)
        .collect();
    exec.map(chunks, |(c, size)| {
        let mut r = rng(sub_seed(seed, c));
        f(&mut r, size)
    })
    .into_iter()
    .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunking_is_exec_independent() {
        let f = |r: &mut StdRng, k: u64| (0..k).filter(|_| r.gen_bool(0.3)).count() as u64;
        let a = count_successes(10_007, 5, Exec::Sequential, f);
        let b = count_successes(10_007, 5, Exec::Parallel, f);
        assert_eq!(a, b);
        assert_ne!(a, count_successes(10_007, 6, Exec::Sequential, f));
    }

    #[test]
    fn sub_seeds_differ() {
        assert_ne!(sub_seed(1, 0), sub_seed(1, 1));
        assert_ne!(sub_seed(1, 0), sub_seed(2, 0));
    }
}
