//! Equilibrium solvers: Lemke-Howson, support enumeration, and the
//! k-player approximation scheme. Random game generators used by tests,
//! benches and the CLI live here too.

mod approx;
pub mod field;
mod lemke_howson;
pub mod linalg;
mod support;

pub use approx::{approx_nash, approx_nash_seeded, approx_nash_with};
pub use lemke_howson::{is_nondegenerate, lemke_howson, lemke_howson_with, LhOutcome};
pub use support::{
    solve_support, support_enumeration, support_enumeration_threads, SupportPair, SupportSolution,
    SUPPORT_ENUM_MAX,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::games::{rat, BimatrixGame, NormalFormGame};

/// Integer payoffs drawn uniformly from `lo..=hi`.
pub fn random_bimatrix(rows: usize, cols: usize, lo: i64, hi: i64, seed: u64) -> Result<BimatrixGame> {
    if lo > hi {
        return Err(Error::Invalid(format!("empty payoff range {lo}..={hi}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || -> Vec<Vec<i64>> {
        (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(lo..=hi)).collect()).collect()
    };
    let r = draw();
    let c = draw();
    BimatrixGame::from_ints(&r, &c)
}

/// First game in the seeded stream `seed, seed+1, ..` passing
/// [`is_nondegenerate`], with its seed.
pub fn random_nondegenerate_bimatrix(rows: usize, cols: usize, lo: i64, hi: i64, seed: u64) -> Result<(BimatrixGame, u64)> {
    for s in seed..seed.saturating_add(1000) {
        let g = random_bimatrix(rows, cols, lo, hi, s)?;
        if is_nondegenerate(&g) {
            return Ok((g, s));
        }
    }
    Err(Error::Degenerate(format!("no nondegenerate {rows}x{cols} game in 1000 seeds from {seed}")))
}

pub fn random_normal_form(action_counts: &[usize], lo: i64, hi: i64, seed: u64) -> Result<NormalFormGame> {
    if lo > hi {
        return Err(Error::Invalid(format!("empty payoff range {lo}..={hi}")));
    }
    let size = action_counts
        .iter()
        .try_fold(1usize, |acc, &n| acc.checked_mul(n))
        .ok_or_else(|| Error::CapExceeded("payoff tensor size overflows".into()))?;
    if size.saturating_mul(action_counts.len()) > crate::games::MAX_PAYOFF_ENTRIES {
        return Err(Error::CapExceeded("payoff tensor too large".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let payoffs = action_counts
        .iter()
        .map(|_| (0..size).map(|_| rat(rng.gen_range(lo..=hi))).collect())
        .collect();
    NormalFormGame::new(action_counts.to_vec(), payoffs)
}
