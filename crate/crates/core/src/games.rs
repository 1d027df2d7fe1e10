//! Normal-form games with exact rational payoffs, mixed profiles, and the
//! Nash / epsilon-Nash conditions.
//!
//! The verification condition is the pure-deviation form: for every player
//! `i` and actions `j`, `j'`, if playing `j` earns more than playing `j'`
//! (plus `eps`) against the others' mixed play, then `j'` must have
//! probability zero.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{format_err, Error, Result};

/// Exact rational number.
pub type Rational = BigRational;

/// Cap on `k * prod(action_counts)` payoff entries.
pub const MAX_PAYOFF_ENTRIES: usize = 1_000_000;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q` or an integer. Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || format_err(0, format!("bad rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(format_err(0, format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

fn parse_rational_at(s: &str, line: usize) -> Result<Rational> {
    parse_rational(s).map_err(|e| match e {
        Error::Format { msg, .. } => Error::Format { line, msg },
        other => other,
    })
}

/// k players, dense payoff tensor; profiles are flattened in
/// lexicographic order with player 0 most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormGame {
    action_counts: Vec<usize>,
    payoffs: Vec<Vec<Rational>>,
}

impl NormalFormGame {
    pub fn new(action_counts: Vec<usize>, payoffs: Vec<Vec<Rational>>) -> Result<Self> {
        let k = action_counts.len();
        if k < 2 {
            return Err(Error::Shape(format!("a game needs at least 2 players, got {k}")));
        }
        if let Some(i) = action_counts.iter().position(|&n| n < 2) {
            return Err(Error::Shape(format!("player {i} needs at least 2 actions")));
        }
        let size = action_counts
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .filter(|s| s.saturating_mul(k) <= MAX_PAYOFF_ENTRIES)
            .ok_or_else(|| {
                Error::CapExceeded(format!("payoff tensor larger than {MAX_PAYOFF_ENTRIES} entries"))
            })?;
        if payoffs.len() != k || payoffs.iter().any(|p| p.len() != size) {
            return Err(Error::Shape(format!(
                "expected {k} payoff tables of {size} entries"
            )));
        }
        Ok(NormalFormGame {
            action_counts,
            payoffs,
        })
    }

    pub fn num_players(&self) -> usize {
        self.action_counts.len()
    }

    pub fn action_counts(&self) -> &[usize] {
        &self.action_counts
    }

    pub fn num_profiles(&self) -> usize {
        self.payoffs[0].len()
    }

    pub fn flat_index(&self, profile: &[usize]) -> usize {
        profile
            .iter()
            .zip(&self.action_counts)
            .fold(0, |acc, (&a, &n)| acc * n + a)
    }

    pub fn profile_of(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.num_players()];
        for (slot, &n) in out.iter_mut().zip(&self.action_counts).rev() {
            *slot = flat % n;
            flat /= n;
        }
        out
    }

    pub fn payoff(&self, player: usize, profile: &[usize]) -> &Rational {
        &self.payoffs[player][self.flat_index(profile)]
    }

    pub fn payoff_table(&self, player: usize) -> &[Rational] {
        &self.payoffs[player]
    }

    /// Adds `c` to every payoff of `player`.
    pub fn shifted(&self, player: usize, c: &Rational) -> Self {
        let mut g = self.clone();
        for u in &mut g.payoffs[player] {
            *u += c;
        }
        g
    }

    /// Maps each player's payoffs affinely onto `[0, 1]`; a player whose
    /// payoffs are all equal gets all zeros.
    pub fn rescaled_unit(&self) -> Self {
        let payoffs = self
            .payoffs
            .iter()
            .map(|table| {
                let lo = table.iter().min().expect("non-empty").clone();
                let hi = table.iter().max().expect("non-empty").clone();
                let span = &hi - &lo;
                table
                    .iter()
                    .map(|u| {
                        if span.is_zero() {
                            Rational::zero()
                        } else {
                            (u - &lo) / &span
                        }
                    })
                    .collect()
            })
            .collect();
        NormalFormGame {
            action_counts: self.action_counts.clone(),
            payoffs,
        }
    }

    /// Text form: `GAME k=..`, `ACTIONS ..`, one `s1 .. sk : u1 .. uk`
    /// line per profile in lexicographic order.
    pub fn to_text(&self) -> String {
        let mut s = format!("GAME k={}\nACTIONS", self.num_players());
        for n in &self.action_counts {
            s.push_str(&format!(" {n}"));
        }
        s.push('\n');
        for flat in 0..self.num_profiles() {
            let prof = self.profile_of(flat);
            let acts: Vec<String> = prof.iter().map(|a| a.to_string()).collect();
            let pays: Vec<String> = self.payoffs.iter().map(|t| t[flat].to_string()).collect();
            s.push_str(&format!("{} : {}\n", acts.join(" "), pays.join(" ")));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| format_err(1, "empty game file"))?;
        let k = crate::total_search::parse_header(header, "GAME", "k", hl)?;
        let (al, actions) = lines
            .next()
            .ok_or_else(|| format_err(hl, "missing ACTIONS line"))?;
        let mut toks = actions.split_whitespace();
        if toks.next() != Some("ACTIONS") {
            return Err(format_err(al, "expected ACTIONS line"));
        }
        let counts = toks
            .map(|t| t.parse::<usize>().map_err(|_| format_err(al, format!("bad action count {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if counts.len() != k {
            return Err(format_err(al, format!("ACTIONS lists {} players, header says {k}", counts.len())));
        }
        if counts.iter().any(|&n| n < 2) {
            return Err(format_err(al, "every player needs at least 2 actions"));
        }
        let size = counts
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .filter(|s| s.saturating_mul(k) <= MAX_PAYOFF_ENTRIES)
            .ok_or_else(|| format_err(al, "payoff tensor too large"))?;
        let mut payoffs: Vec<Vec<Option<Rational>>> = vec![vec![None; size]; k];
        for (ln, line) in lines {
            let (lhs, rhs) = line
                .split_once(':')
                .ok_or_else(|| format_err(ln, "expected `<actions> : <payoffs>`"))?;
            let prof = lhs
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| format_err(ln, format!("bad action {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if prof.len() != k || prof.iter().zip(&counts).any(|(&a, &n)| a >= n) {
                return Err(format_err(ln, "action profile out of range"));
            }
            let pays = rhs
                .split_whitespace()
                .map(|t| parse_rational_at(t, ln))
                .collect::<Result<Vec<_>>>()?;
            if pays.len() != k {
                return Err(format_err(ln, format!("expected {k} payoffs, got {}", pays.len())));
            }
            let flat = prof.iter().zip(&counts).fold(0, |acc, (&a, &n)| acc * n + a);
            for (table, u) in payoffs.iter_mut().zip(pays) {
                if table[flat].replace(u).is_some() {
                    return Err(format_err(ln, "duplicate action profile"));
                }
            }
        }
        let payoffs = payoffs
            .into_iter()
            .map(|t| t.into_iter().collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| format_err(0, "payoff table incomplete"))?;
        Self::new(counts, payoffs)
    }
}

/// Two-player game as a pair of `rows x cols` payoff matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimatrixGame {
    row: Vec<Vec<Rational>>,
    col: Vec<Vec<Rational>>,
}

impl BimatrixGame {
    pub fn new(row: Vec<Vec<Rational>>, col: Vec<Vec<Rational>>) -> Result<Self> {
        let m = row.len();
        let n = row.first().map_or(0, Vec::len);
        if m < 2 || n < 2 {
            return Err(Error::Shape(format!("bimatrix games need at least 2x2, got {m}x{n}")));
        }
        let ok = |mat: &Vec<Vec<Rational>>| mat.len() == m && mat.iter().all(|r| r.len() == n);
        if !ok(&row) || !ok(&col) {
            return Err(Error::Shape("payoff matrices must be rectangular and of equal size".into()));
        }
        Ok(BimatrixGame { row, col })
    }

    /// Builds from integer `(row payoff, column payoff)` pairs.
    pub fn from_pairs(entries: &[Vec<(i64, i64)>]) -> Result<Self> {
        let row = entries.iter().map(|r| r.iter().map(|&(a, _)| rat(a)).collect()).collect();
        let col = entries.iter().map(|r| r.iter().map(|&(_, b)| rat(b)).collect()).collect();
        Self::new(row, col)
    }

    pub fn from_ints(row: &[Vec<i64>], col: &[Vec<i64>]) -> Result<Self> {
        let conv = |m: &[Vec<i64>]| m.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
        Self::new(conv(row), conv(col))
    }

    pub fn rows(&self) -> usize {
        self.row.len()
    }

    pub fn cols(&self) -> usize {
        self.row[0].len()
    }

    pub fn row_payoffs(&self) -> &[Vec<Rational>] {
        &self.row
    }

    pub fn col_payoffs(&self) -> &[Vec<Rational>] {
        &self.col
    }

    pub fn transpose_roles(&self) -> Self {
        let t = |m: &Vec<Vec<Rational>>| {
            (0..self.cols())
                .map(|j| (0..self.rows()).map(|i| m[i][j].clone()).collect())
                .collect()
        };
        BimatrixGame {
            row: t(&self.col),
            col: t(&self.row),
        }
    }

    pub fn min_payoff(&self) -> Rational {
        self.row
            .iter()
            .chain(&self.col)
            .flatten()
            .min()
            .expect("non-empty")
            .clone()
    }

    /// Adds `c` to every payoff of both players.
    pub fn shifted(&self, c: &Rational) -> Self {
        let add = |m: &Vec<Vec<Rational>>| m.iter().map(|r| r.iter().map(|v| v + c).collect()).collect();
        BimatrixGame {
            row: add(&self.row),
            col: add(&self.col),
        }
    }

    pub fn to_normal_form(&self) -> NormalFormGame {
        let flat = |m: &Vec<Vec<Rational>>| m.iter().flatten().cloned().collect();
        NormalFormGame {
            action_counts: vec![self.rows(), self.cols()],
            payoffs: vec![flat(&self.row), flat(&self.col)],
        }
    }

    pub fn from_normal_form(g: &NormalFormGame) -> Result<Self> {
        if g.num_players() != 2 {
            return Err(Error::Shape(format!("expected 2 players, got {}", g.num_players())));
        }
        let n = g.action_counts[1];
        let unflat = |t: &[Rational]| t.chunks(n).map(|c| c.to_vec()).collect();
        Self::new(unflat(&g.payoffs[0]), unflat(&g.payoffs[1]))
    }
}

/// One probability vector per player.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MixedProfile {
    strategies: Vec<Vec<Rational>>,
}

impl MixedProfile {
    pub fn new(strategies: Vec<Vec<Rational>>) -> Result<Self> {
        for (i, x) in strategies.iter().enumerate() {
            if x.is_empty() {
                return Err(Error::Shape(format!("player {i} has an empty strategy")));
            }
            if x.iter().any(|p| p.is_negative()) {
                return Err(Error::Invalid(format!("player {i} has a negative probability")));
            }
            let total: Rational = x.iter().sum();
            if !total.is_one() {
                return Err(Error::Invalid(format!("player {i}'s probabilities sum to {total}")));
            }
        }
        Ok(MixedProfile { strategies })
    }

    pub fn pure(action_counts: &[usize], actions: &[usize]) -> Result<Self> {
        if action_counts.len() != actions.len() {
            return Err(Error::Shape("one action per player".into()));
        }
        let strategies = action_counts
            .iter()
            .zip(actions)
            .map(|(&n, &a)| {
                if a >= n {
                    return Err(Error::Shape(format!("action {a} out of range {n}")));
                }
                Ok((0..n).map(|j| if j == a { Rational::one() } else { Rational::zero() }).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MixedProfile { strategies })
    }

    pub fn uniform(action_counts: &[usize]) -> Self {
        MixedProfile {
            strategies: action_counts
                .iter()
                .map(|&n| vec![ratio(1, n as i64); n])
                .collect(),
        }
    }

    pub fn strategies(&self) -> &[Vec<Rational>] {
        &self.strategies
    }

    pub fn strategy(&self, player: usize) -> &[Rational] {
        &self.strategies[player]
    }

    pub fn support(&self, player: usize) -> Vec<usize> {
        self.strategies[player]
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_positive())
            .map(|(j, _)| j)
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("PROFILE\n");
        for x in &self.strategies {
            let parts: Vec<String> = x.iter().map(|p| p.to_string()).collect();
            s.push_str(&parts.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses a `PROFILE` block. Anything after the `players` strategy lines
    /// is ignored so several profiles can be read from one stream.
    pub fn parse(text: &str, players: usize) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, "PROFILE")) => {}
            Some((ln, _)) => return Err(format_err(ln, "expected PROFILE")),
            None => return Err(format_err(1, "empty profile")),
        }
        let mut strategies = Vec::with_capacity(players);
        for _ in 0..players {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| format_err(0, format!("profile needs {players} strategy lines")))?;
            strategies.push(
                line.split_whitespace()
                    .map(|t| parse_rational_at(t, ln))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Self::new(strategies)
    }

    /// Parses every `PROFILE` block in `text`.
    pub fn parse_many(text: &str, players: usize) -> Result<Vec<Self>> {
        let starts: Vec<usize> = text
            .match_indices("PROFILE")
            .map(|(i, _)| i)
            .collect();
        starts
            .iter()
            .map(|&i| Self::parse(&text[i..], players))
            .collect()
    }
}

impl fmt::Display for MixedProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn check_dims(g: &NormalFormGame, prof: &MixedProfile) -> Result<()> {
    if prof.strategies.len() != g.num_players()
        || prof
            .strategies
            .iter()
            .zip(&g.action_counts)
            .any(|(x, &n)| x.len() != n)
    {
        return Err(Error::Shape(format!(
            "profile shape {:?} does not match action counts {:?}",
            prof.strategies.iter().map(Vec::len).collect::<Vec<_>>(),
            g.action_counts
        )));
    }
    Ok(())
}

fn check_player(g: &NormalFormGame, i: usize) -> Result<()> {
    if i >= g.num_players() {
        return Err(Error::Shape(format!("player {i} out of range")));
    }
    Ok(())
}

/// Visits every pure profile with non-zero weight under `weights`, skipping
/// player `skip`'s factor when given.
fn for_each_weighted(
    g: &NormalFormGame,
    weights: &[Vec<Rational>],
    skip: Option<usize>,
    mut visit: impl FnMut(usize, &[usize], &Rational),
) {
    let k = g.num_players();
    let mut prof = vec![0usize; k];
    for flat in 0..g.num_profiles() {
        if flat > 0 {
            // odometer increment, last player fastest
            for r in (0..k).rev() {
                prof[r] += 1;
                if prof[r] < g.action_counts[r] {
                    break;
                }
                prof[r] = 0;
            }
        }
        let mut w = Rational::one();
        let mut zero = false;
        for r in 0..k {
            if Some(r) == skip {
                continue;
            }
            let p = &weights[r][prof[r]];
            if p.is_zero() {
                zero = true;
                break;
            }
            w *= p;
        }
        if !zero {
            visit(flat, &prof, &w);
        }
    }
}

/// `sum_s u^i_s prod_r x^r_{s_r}`.
pub fn expected_payoff(g: &NormalFormGame, prof: &MixedProfile, i: usize) -> Result<Rational> {
    check_dims(g, prof)?;
    check_player(g, i)?;
    let mut total = Rational::zero();
    for_each_weighted(g, &prof.strategies, None, |flat, _, w| {
        total += &g.payoffs[i][flat] * w;
    });
    Ok(total)
}

/// Payoff to `i` for each pure action against the others' (possibly
/// unnormalised) weights.
pub(crate) fn deviation_payoffs_weighted(
    g: &NormalFormGame,
    weights: &[Vec<Rational>],
    i: usize,
) -> Vec<Rational> {
    let mut dev = vec![Rational::zero(); g.action_counts[i]];
    for_each_weighted(g, weights, Some(i), |flat, prof, w| {
        dev[prof[i]] += &g.payoffs[i][flat] * w;
    });
    dev
}

/// Expected payoff to `i` for every pure action, against the others' mixed play.
pub fn deviation_payoffs(g: &NormalFormGame, prof: &MixedProfile, i: usize) -> Result<Vec<Rational>> {
    check_dims(g, prof)?;
    check_player(g, i)?;
    Ok(deviation_payoffs_weighted(g, &prof.strategies, i))
}

/// `sum_{s in S_-i} u^i_{js} x_s`.
pub fn pure_deviation_payoff(g: &NormalFormGame, prof: &MixedProfile, i: usize, j: usize) -> Result<Rational> {
    let dev = deviation_payoffs(g, prof, i)?;
    dev.get(j)
        .cloned()
        .ok_or_else(|| Error::Shape(format!("action {j} out of range for player {i}")))
}

/// Outcome of [`verify_nash`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NashVerdict {
    pub accepted: bool,
    /// Largest `dev(i,j) - dev(i,j') - eps` over supported `j'`, clamped at 0.
    pub max_violation: Rational,
    /// A witness `(player, better action, supported action)` when rejected.
    pub witness: Option<(usize, usize, usize)>,
}

/// Exact epsilon-Nash check; `eps = 0` is the Nash condition.
pub fn verify_nash(g: &NormalFormGame, prof: &MixedProfile, eps: &Rational) -> Result<NashVerdict> {
    check_dims(g, prof)?;
    if eps.is_negative() {
        return Err(Error::Invalid(format!("eps must be >= 0, got {eps}")));
    }
    let mut max_violation = Rational::zero();
    let mut witness = None;
    for i in 0..g.num_players() {
        let dev = deviation_payoffs_weighted(g, &prof.strategies, i);
        let (best_j, best) = dev
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .expect("at least two actions");
        for (jp, p) in prof.strategies[i].iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let margin = best - &dev[jp] - eps;
            if margin > max_violation {
                max_violation = margin;
                witness = Some((i, best_j, jp));
            }
        }
    }
    Ok(NashVerdict {
        accepted: max_violation.is_zero(),
        max_violation,
        witness,
    })
}

/// Largest gain any player gets by switching from its mixed strategy to its
/// best pure reply: `max_i (max_j dev(i,j) - sum_j x^i_j dev(i,j))`.
pub fn max_regret(g: &NormalFormGame, prof: &MixedProfile) -> Result<Rational> {
    check_dims(g, prof)?;
    let mut worst = Rational::zero();
    for i in 0..g.num_players() {
        let dev = deviation_payoffs_weighted(g, &prof.strategies, i);
        let best = dev.iter().max().expect("at least two actions");
        let expected: Rational = dev.iter().zip(&prof.strategies[i]).map(|(d, p)| d * p).sum();
        let regret = best - expected;
        if regret > worst {
            worst = regret;
        }
    }
    Ok(worst)
}

/// Accepts when no player can gain more than `eps` by any unilateral
/// deviation. This is weaker than [`verify_nash`] at the same `eps`, and
/// the two coincide at `eps = 0`.
pub fn verify_regret(g: &NormalFormGame, prof: &MixedProfile, eps: &Rational) -> Result<NashVerdict> {
    if eps.is_negative() {
        return Err(Error::Invalid(format!("eps must be >= 0, got {eps}")));
    }
    let regret = max_regret(g, prof)?;
    let excess = &regret - eps;
    let max_violation = if excess.is_positive() { excess } else { Rational::zero() };
    Ok(NashVerdict {
        accepted: max_violation.is_zero(),
        max_violation,
        witness: None,
    })
}

/// All pure actions maximising `i`'s payoff against the others.
pub fn best_response_set(g: &NormalFormGame, prof: &MixedProfile, i: usize) -> Result<BTreeSet<usize>> {
    let dev = deviation_payoffs(g, prof, i)?;
    Ok(argmax_set(&dev))
}

pub(crate) fn argmax_set(values: &[Rational]) -> BTreeSet<usize> {
    let best = values.iter().max().expect("non-empty");
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| *v == best)
        .map(|(j, _)| j)
        .collect()
}
