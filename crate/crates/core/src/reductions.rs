//! The symmetric-game construction `G' = [[0, G], [G^T, 0]]`, equilibrium
//! recovery from `G'` back to `G`, and the classic small games.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::games::{rat, verify_nash, BimatrixGame, MixedProfile, Rational};

/// What [`recover_equilibrium`] needs to undo [`symmetrize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrizationCertificate {
    /// Added to every payoff of `G` before embedding.
    pub shift: Rational,
    /// Side length `n` of the embedded `n x n` game.
    pub n: usize,
}

impl SymmetrizationCertificate {
    pub fn block_dims(&self) -> (usize, usize) {
        (self.n, self.n)
    }
}

/// Which half of `G'` each player's recovered strategy was read from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `p > 0` and `1 - q > 0`: player 1's first half plays rows of `G`.
    RowFirst,
    /// `1 - p > 0` and `q > 0`: player 2's first half plays rows of `G`.
    ColumnFirst,
}

/// Smallest shift keeping every payoff strictly positive: zero when that
/// already holds, else `floor(-min) + 1`.
pub fn positive_shift(g: &BimatrixGame) -> Rational {
    let min = g.min_payoff();
    if min.is_positive() {
        Rational::zero()
    } else {
        (-min).floor() + Rational::one()
    }
}

pub fn symmetrize(g: &BimatrixGame) -> Result<(BimatrixGame, SymmetrizationCertificate)> {
    if g.rows() != g.cols() {
        return Err(Error::Shape(format!(
            "symmetrization needs a square game, got {}x{}",
            g.rows(),
            g.cols()
        )));
    }
    let n = g.rows();
    let shift = positive_shift(g);
    let (r, c) = (g.row_payoffs(), g.col_payoffs());
    let mut big_r = vec![vec![Rational::zero(); 2 * n]; 2 * n];
    let mut big_c = big_r.clone();
    for a in 0..n {
        for b in 0..n {
            big_r[a][b + n] = &r[a][b] + &shift;
            big_c[a][b + n] = &c[a][b] + &shift;
            big_r[b + n][a] = &c[a][b] + &shift;
            big_c[b + n][a] = &r[a][b] + &shift;
        }
    }
    let sym = BimatrixGame::new(big_r, big_c)?;
    Ok((sym, SymmetrizationCertificate { shift, n }))
}

fn normalised(part: &[Rational], mass: &Rational) -> Vec<Rational> {
    part.iter().map(|p| p / mass).collect()
}

/// Reads an equilibrium of `g` off an equilibrium of `symmetrize(g)`.
pub fn recover_equilibrium(
    g: &BimatrixGame,
    cert: &SymmetrizationCertificate,
    prof: &MixedProfile,
) -> Result<(MixedProfile, Orientation)> {
    let n = cert.n;
    if g.rows() != n || g.cols() != n {
        return Err(Error::Shape("certificate does not match the game".into()));
    }
    if prof.strategies().len() != 2 || prof.strategies().iter().any(|x| x.len() != 2 * n) {
        return Err(Error::Shape(format!("expected a profile of G' with {} actions each", 2 * n)));
    }
    let (sym, _) = symmetrize(g)?;
    let verdict = verify_nash(&sym.to_normal_form(), prof, &rat(0))?;
    if !verdict.accepted {
        return Err(Error::Invalid(format!(
            "profile is not an equilibrium of the symmetrized game (violation {})",
            verdict.max_violation
        )));
    }
    let (x1, x2) = (prof.strategy(0), prof.strategy(1));
    let p: Rational = x1[..n].iter().sum();
    let q: Rational = x2[..n].iter().sum();
    let one = Rational::one();
    let (strategies, orientation) = if p.is_positive() && (&one - &q).is_positive() {
        (
            vec![normalised(&x1[..n], &p), normalised(&x2[n..], &(&one - &q))],
            Orientation::RowFirst,
        )
    } else if (&one - &p).is_positive() && q.is_positive() {
        (
            vec![normalised(&x2[..n], &q), normalised(&x1[n..], &(&one - &p))],
            Orientation::ColumnFirst,
        )
    } else {
        return Err(Error::Invalid(format!(
            "degenerate split p={p}, q={q} cannot come from an equilibrium"
        )));
    };
    Ok((MixedProfile::new(strategies)?, orientation))
}

/// Rock, paper, scissors; winner gets 1, loser -1.
pub fn fixture_rps() -> BimatrixGame {
    let r = vec![vec![0, -1, 1], vec![1, 0, -1], vec![-1, 1, 0]];
    let c: Vec<Vec<i64>> = r.iter().map(|row| row.iter().map(|v| -v).collect()).collect();
    BimatrixGame::from_ints(&r, &c).expect("valid fixture")
}

/// Action 0 is stag, action 1 is hare.
pub fn fixture_stag_hunt() -> BimatrixGame {
    BimatrixGame::from_pairs(&[vec![(8, 8), (0, 1)], vec![(1, 0), (1, 1)]]).expect("valid fixture")
}

/// `(1, -1)` on the diagonal, `(0, 0)` elsewhere.
pub fn fixture_gmp(n: usize) -> Result<BimatrixGame> {
    if n < 2 {
        return Err(Error::Shape(format!("generalised matching pennies needs n >= 2, got {n}")));
    }
    let entries: Vec<Vec<(i64, i64)>> = (0..n)
        .map(|a| (0..n).map(|b| if a == b { (1, -1) } else { (0, 0) }).collect())
        .collect();
    BimatrixGame::from_pairs(&entries)
}

pub fn fixture_matching_pennies() -> BimatrixGame {
    BimatrixGame::from_pairs(&[vec![(1, -1), (-1, 1)], vec![(-1, 1), (1, -1)]]).expect("valid fixture")
}

pub const FIXTURE_NAMES: [&str; 4] = ["rps", "stag-hunt", "gmp<n>", "matching-pennies"];

/// Looks a fixture up by name; `gmp3` is generalised matching pennies with
/// `n = 3`.
pub fn fixture(name: &str) -> Result<BimatrixGame> {
    match name {
        "rps" => Ok(fixture_rps()),
        "stag-hunt" | "stag_hunt" => Ok(fixture_stag_hunt()),
        "matching-pennies" | "matching_pennies" => Ok(fixture_matching_pennies()),
        _ => match name.strip_prefix("gmp").map(str::parse::<usize>) {
            Some(Ok(n)) => fixture_gmp(n),
            _ => Err(Error::Invalid(format!(
                "unknown fixture {name:?}; known: {}",
                FIXTURE_NAMES.join(", ")
            ))),
        },
    }
}
