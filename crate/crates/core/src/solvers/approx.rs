use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::games::{argmax_set, deviation_payoffs_weighted, ratio, MixedProfile, NormalFormGame, Rational};

/// The `k`-player approximation scheme, with every committing player using
/// action 0. Returns the profile and the guarantee `1 - 1/k`: on the
/// `[0,1]`-rescaled game no player gains more than that by deviating (see
/// [`verify_regret`](crate::games::verify_regret)). Supported actions can
/// still be further than `1 - 1/k` from a best reply, so the pure-deviation
/// test of [`verify_nash`](crate::games::verify_nash) may reject.
pub fn approx_nash(g: &NormalFormGame) -> Result<(MixedProfile, Rational)> {
    approx_nash_with(g, &vec![0; g.num_players().saturating_sub(1)])
}

/// As [`approx_nash`] with the committed actions drawn uniformly from `seed`.
pub fn approx_nash_seeded(g: &NormalFormGame, seed: u64) -> Result<(MixedProfile, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = g.num_players();
    let committed: Vec<usize> = g.action_counts()[..k - 1].iter().map(|&n| rng.gen_range(0..n)).collect();
    approx_nash_with(g, &committed)
}

/// `committed[i]` is the action player `i` (0-based, `i < k - 1`) puts
/// `1 - 1/(k - i)` on before anyone best-responds. Players then fill their
/// remaining mass, last player first, each best-responding (lowest index on
/// ties) to everything allocated so far.
pub fn approx_nash_with(g: &NormalFormGame, committed: &[usize]) -> Result<(MixedProfile, Rational)> {
    let k = g.num_players();
    if committed.len() != k - 1 {
        return Err(Error::Shape(format!("expected {} committed actions, got {}", k - 1, committed.len())));
    }
    if let Some(i) = (0..k - 1).find(|&i| committed[i] >= g.action_counts()[i]) {
        return Err(Error::Shape(format!("committed action of player {i} out of range")));
    }
    let h = g.rescaled_unit();
    let mut weights: Vec<Vec<Rational>> = h.action_counts().iter().map(|&n| vec![Rational::zero(); n]).collect();
    for (i, &a) in committed.iter().enumerate() {
        // 1-based player i+1 commits 1 - 1/(k + 1 - (i + 1))
        weights[i][a] = Rational::one() - ratio(1, (k - i) as i64);
    }
    for i in (0..k).rev() {
        let dev = deviation_payoffs_weighted(&h, &weights, i);
        let best = *argmax_set(&dev).iter().next().expect("non-empty");
        let placed: Rational = weights[i].iter().sum();
        weights[i][best] += Rational::one() - placed;
    }
    let guarantee = Rational::one() - ratio(1, k as i64);
    Ok((MixedProfile::new(weights)?, guarantee))
}
