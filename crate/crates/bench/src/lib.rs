//! Fixed inputs shared by the benchmarks.

use tourney_core::generate::{gen_eps_random, gen_planted_long};
use tourney_core::Tournament;

pub fn noisy(n: usize, eps: f64) -> Tournament {
    gen_eps_random(n, eps, 0x5eed).expect("valid parameters")
}

/// A near-transitive tournament with 60 long backward edges.
pub fn planted(n: usize) -> Tournament {
    gen_planted_long(n, 60, n / 16, 0x5eed).expect("valid parameters")
}
