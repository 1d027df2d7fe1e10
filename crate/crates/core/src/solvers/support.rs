//! Exact equilibria by enumerating support pairs.

use std::collections::BTreeSet;


use super::field::{Field, Small};
use super::linalg::{lexmin_nonneg_in, reduce_in, Constraint};
use crate::error::{Error, Result};
use crate::games::{BimatrixGame, MixedProfile, Rational};

/// Largest side accepted by [`support_enumeration`].
pub const SUPPORT_ENUM_MAX: usize = 8;

/// Candidate supports, sorted and non-empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SupportPair {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl SupportPair {
    pub fn new(mut rows: Vec<usize>, mut cols: Vec<usize>) -> Result<Self> {
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::Invalid("supports must be non-empty".into()));
        }
        Ok(SupportPair { rows, cols })
    }

    pub fn full(g: &BimatrixGame) -> Self {
        SupportPair {
            rows: (0..g.rows()).collect(),
            cols: (0..g.cols()).collect(),
        }
    }

    fn from_masks(rows: u32, cols: u32, n1: usize, n2: usize) -> Self {
        let bits = |mask: u32, n: usize| (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        SupportPair {
            rows: bits(rows, n1),
            cols: bits(cols, n2),
        }
    }
}

/// Output of [`solve_support`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSolution {
    pub profile: MixedProfile,
    /// At least one side's system was singular; the profile is the
    /// lexicographically least point of its solution set.
    pub degenerate: bool,
}

/// A point of one side's solution set: the mixed strategy followed by the
/// opponent's equalised payoff.
struct SidePoint<F> {
    point: Vec<F>,
    degenerate: bool,
}

/// Finds `z` over its simplex, with support inside `own`, making every
/// opponent action in `opp` indifferent and optimal. `payoff[a][b]` is the
/// opponent's payoff when it plays `a` and `z` plays `b`. The outer `None`
/// reports overflow of `F`.
fn solve_side<F: Field>(payoff: &[Vec<F>], own_count: usize, own: &[usize], opp: &[usize]) -> Option<Option<SidePoint<F>>> {
    // unknowns: z on `own` in order, then w = v - floor with w >= 0
    let k = own.len();
    let floor = payoff
        .iter()
        .flat_map(|row| own.iter().map(move |&b| &row[b]))
        .min()
        .expect("non-empty supports")
        .clone();
    let value_row = |a: usize| {
        let mut row: Vec<F> = own.iter().map(|&b| payoff[a][b].clone()).collect();
        row.push(F::one().neg().expect("-1 fits"));
        Constraint { a: row, b: floor.clone() }
    };
    let mut sum = vec![F::one(); k + 1];
    sum[k] = F::zero();
    let mut eq = vec![Constraint { a: sum, b: F::one() }];
    eq.extend(opp.iter().map(|&a| value_row(a)));
    let le: Vec<Constraint<F>> = (0..payoff.len()).filter(|a| !opp.contains(a)).map(value_row).collect();

    let aug = eq.iter().map(|c| c.a.iter().cloned().chain([c.b.clone()]).collect()).collect();
    let reduced = reduce_in(aug, k + 1)?;
    if !reduced.consistent {
        return Some(None);
    }
    let degenerate = reduced.rank() < k + 1;
    let w = if degenerate {
        match lexmin_nonneg_in(&eq, &le, k + 1)? {
            Some(w) => w,
            None => return Some(None),
        }
    } else {
        let Some(w) = reduced.unique() else { return Some(None) };
        if w.iter().any(F::is_negative) {
            return Some(None);
        }
        for c in &le {
            if c.lhs(&w)? > c.b {
                return Some(None);
            }
        }
        w
    };
    let mut point = vec![F::zero(); own_count + 1];
    for (&b, p) in own.iter().zip(&w) {
        point[b] = p.clone();
    }
    point[own_count] = w[k].add(&floor)?;
    Some(Some(SidePoint { point, degenerate }))
}

/// Both payoff tables indexed `[opponent action][own action]`.
struct Sides<F> {
    /// Row payoffs seen by the column strategy: `[row][col]`.
    for_cols: Vec<Vec<F>>,
    /// Column payoffs seen by the row strategy: `[col][row]`.
    for_rows: Vec<Vec<F>>,
}

impl<F: Field> Sides<F> {
    fn new(g: &BimatrixGame) -> Option<Self> {
        let conv = |m: &[Vec<Rational>]| -> Option<Vec<Vec<F>>> {
            m.iter().map(|row| row.iter().map(F::from_rational).collect()).collect()
        };
        let c = g.col_payoffs();
        let c_t: Vec<Vec<Rational>> = (0..g.cols()).map(|j| (0..g.rows()).map(|i| c[i][j].clone()).collect()).collect();
        Some(Sides {
            for_cols: conv(g.row_payoffs())?,
            for_rows: conv(&c_t)?,
        })
    }

    fn solve(&self, sp: &SupportPair) -> Option<Option<SupportSolution>> {
        let (n1, n2) = (self.for_cols.len(), self.for_rows.len());
        let row_side = || solve_side(&self.for_rows, n1, &sp.rows, &sp.cols);
        let col_side = || solve_side(&self.for_cols, n2, &sp.cols, &sp.rows);
        // the over-determined side usually fails fast, so try it first
        let (x, y) = if sp.rows.len() >= sp.cols.len() {
            let Some(x) = row_side()? else { return Some(None) };
            let Some(y) = col_side()? else { return Some(None) };
            (x, y)
        } else {
            let Some(y) = col_side()? else { return Some(None) };
            let Some(x) = row_side()? else { return Some(None) };
            (x, y)
        };
        let degenerate = x.degenerate || y.degenerate;
        let strip = |p: Vec<F>| p[..p.len() - 1].iter().map(F::to_rational).collect::<Vec<_>>();
        let profile = MixedProfile::new(vec![strip(x.point), strip(y.point)]).expect("points lie on the simplex");
        Some(Some(SupportSolution { profile, degenerate }))
    }
}

/// Payoff tables in both scalar types; the small one is absent when some
/// payoff does not fit.
struct Solver {
    small: Option<Sides<Small>>,
    exact: Sides<Rational>,
}

impl Solver {
    fn new(g: &BimatrixGame) -> Self {
        Solver {
            small: Sides::new(g),
            exact: Sides::new(g).expect("rationals always convert"),
        }
    }

    fn solve(&self, sp: &SupportPair) -> Option<SupportSolution> {
        if let Some(found) = self.small.as_ref().and_then(|s| s.solve(sp)) {
            return found;
        }
        self.exact.solve(sp).expect("rational arithmetic is exact")
    }
}

/// Solves for an equilibrium whose supports lie inside `sp`, with every
/// action of `sp` a best response.
pub fn solve_support(g: &BimatrixGame, sp: &SupportPair) -> Result<Option<SupportSolution>> {
    if sp.rows.is_empty() || sp.cols.is_empty() {
        return Err(Error::Invalid("supports must be non-empty".into()));
    }
    if sp.rows.iter().any(|&a| a >= g.rows()) || sp.cols.iter().any(|&b| b >= g.cols()) {
        return Err(Error::Shape("support index out of range".into()));
    }
    Ok(Solver::new(g).solve(sp))
}

/// All equilibria found over every support pair, deduplicated, in
/// lexicographic order.
pub fn support_enumeration(g: &BimatrixGame) -> Result<Vec<MixedProfile>> {
    support_enumeration_threads(g, 1)
}

pub fn support_enumeration_threads(g: &BimatrixGame, threads: usize) -> Result<Vec<MixedProfile>> {
    let (n1, n2) = (g.rows(), g.cols());
    if n1 > SUPPORT_ENUM_MAX || n2 > SUPPORT_ENUM_MAX {
        return Err(Error::CapExceeded(format!(
            "support enumeration limited to {SUPPORT_ENUM_MAX}x{SUPPORT_ENUM_MAX}, got {n1}x{n2}"
        )));
    }
    let pairs: Vec<(u32, u32)> = (1..1u32 << n1)
        .flat_map(|rm| (1..1u32 << n2).map(move |cm| (rm, cm)))
        .collect();
    let solver = Solver::new(g);
    let work = |chunk: &[(u32, u32)]| -> Result<BTreeSet<MixedProfile>> {
        let mut found = BTreeSet::new();
        for &(rm, cm) in chunk {
            let sp = SupportPair::from_masks(rm, cm, n1, n2);
            if let Some(sol) = solver.solve(&sp) {
                found.insert(sol.profile);
            }
        }
        Ok(found)
    };
    let threads = threads.clamp(1, pairs.len());
    let mut all = BTreeSet::new();
    if threads == 1 {
        all = work(&pairs)?;
    } else {
        let chunk = pairs.len().div_ceil(threads);
        let parts: Vec<Result<BTreeSet<MixedProfile>>> = std::thread::scope(|s| {
            let handles: Vec<_> = pairs.chunks(chunk).map(|c| s.spawn(move || work(c))).collect();
            handles.into_iter().map(|h| h.join().expect("worker thread")).collect()
        });
        for part in parts {
            all.extend(part?);
        }
    }
    Ok(all.into_iter().collect())
}
