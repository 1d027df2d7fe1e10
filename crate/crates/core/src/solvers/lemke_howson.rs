//! Lemke-Howson complementary pivoting on the best-response polytopes
//!
//! `P = {x >= 0 : B^T x <= 1}` and `Q = {y >= 0 : A y <= 1}`
//!
//! where `A`, `B` are the payoffs shifted to be positive. Labels `0..m` are
//! row actions and `m..m+n` column actions. In either tableau the variable
//! numbered `l` is the one whose being zero carries label `l`.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::linalg::subsets;
use super::linalg::solve_unique;
use crate::error::{Error, Result};
use crate::games::{BimatrixGame, MixedProfile, Rational};
use crate::reductions::positive_shift;

#[derive(Clone, Debug)]
struct Tableau {
    /// `rows[r]` holds coefficients for all `m + n` variables, then the rhs.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Variables forming the initial identity basis, in row order.
    slack: Vec<usize>,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        self.rows[r].last().expect("rhs column")
    }

    /// Lexicographic ratio test. With `perturb` off a tie in the plain ratio
    /// is reported as degeneracy.
    fn leaving_row(&self, entering: usize, perturb: bool) -> Result<usize> {
        let mut best: Option<(usize, Vec<Rational>)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            let a = &row[entering];
            if !a.is_positive() {
                continue;
            }
            let mut key = vec![self.rhs(r) / a];
            if perturb {
                key.extend(self.slack.iter().map(|&s| &row[s] / a));
            }
            match &best {
                Some((_, k)) if key > *k => {}
                Some((br, k)) if key == *k => {
                    return Err(Error::Degenerate(format!(
                        "ratio tie between basic variables {} and {} entering {entering} (basis {:?})",
                        self.basis[*br], self.basis[r], self.sorted_basis()
                    )));
                }
                _ => best = Some((r, key)),
            }
        }
        best.map(|(r, _)| r)
            .ok_or_else(|| Error::Internal(format!("variable {entering} is unbounded")))
    }

    fn pivot(&mut self, r: usize, entering: usize) -> usize {
        let inv = self.rows[r][entering].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[entering].is_zero() {
                continue;
            }
            let f = row[entering].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        std::mem::replace(&mut self.basis[r], entering)
    }

    fn sorted_basis(&self) -> Vec<usize> {
        let mut b = self.basis.clone();
        b.sort_unstable();
        b
    }

    /// Values of variables `range`, normalised to sum 1.
    fn strategy(&self, range: std::ops::Range<usize>) -> Result<Vec<Rational>> {
        let mut v = vec![Rational::zero(); range.len()];
        for (r, &b) in self.basis.iter().enumerate() {
            if range.contains(&b) {
                v[b - range.start] = self.rhs(r).clone();
            }
        }
        let total: Rational = v.iter().sum();
        if !total.is_positive() {
            return Err(Error::Internal("pivoting ended at the artificial vertex".into()));
        }
        Ok(v.into_iter().map(|p| p / &total).collect())
    }
}

/// A run of the algorithm.
#[derive(Clone, Debug)]
pub struct LhOutcome {
    pub profile: MixedProfile,
    pub pivots: usize,
    /// Sorted bases of the two tableaux after each pivot, starting with the
    /// artificial vertex.
    pub path: Vec<(Vec<usize>, Vec<usize>)>,
}

impl LhOutcome {
    pub fn path_is_simple(&self) -> bool {
        let set: BTreeSet<_> = self.path.iter().collect();
        set.len() == self.path.len()
    }
}

fn tableaux(g: &BimatrixGame) -> (Tableau, Tableau) {
    let (m, n) = (g.rows(), g.cols());
    let shift = positive_shift(g);
    let vars = m + n;
    // P: B^T x + s = 1, variables x_i = i, s_j = m + j
    let p_rows = (0..n)
        .map(|j| {
            let mut row = vec![Rational::zero(); vars + 1];
            for i in 0..m {
                row[i] = &g.col_payoffs()[i][j] + &shift;
            }
            row[m + j] = Rational::one();
            row[vars] = Rational::one();
            row
        })
        .collect();
    // Q: r + A y = 1, variables r_i = i, y_j = m + j
    let q_rows = (0..m)
        .map(|i| {
            let mut row = vec![Rational::zero(); vars + 1];
            row[i] = Rational::one();
            for j in 0..n {
                row[m + j] = &g.row_payoffs()[i][j] + &shift;
            }
            row[vars] = Rational::one();
            row
        })
        .collect();
    let p = Tableau {
        rows: p_rows,
        basis: (m..m + n).collect(),
        slack: (m..m + n).collect(),
    };
    let q = Tableau {
        rows: q_rows,
        basis: (0..m).collect(),
        slack: (0..m).collect(),
    };
    (p, q)
}

/// Runs Lemke-Howson dropping `label` (0-based, `0..m+n`) with lexicographic
/// perturbation.
pub fn lemke_howson(g: &BimatrixGame, label: usize) -> Result<LhOutcome> {
    lemke_howson_with(g, label, true)
}

pub fn lemke_howson_with(g: &BimatrixGame, label: usize, perturb: bool) -> Result<LhOutcome> {
    let (m, n) = (g.rows(), g.cols());
    if label >= m + n {
        return Err(Error::Invalid(format!("label {label} out of range 0..{}", m + n)));
    }
    let cap = 1u64.checked_shl((m + n) as u32).unwrap_or(u64::MAX);
    let (mut p, mut q) = tableaux(g);
    let mut path = vec![(p.sorted_basis(), q.sorted_basis())];
    let mut entering = label;
    // row labels start in P (x), column labels in Q (y)
    let mut in_p = label < m;
    let mut pivots = 0usize;
    loop {
        if pivots as u64 >= cap {
            return Err(Error::Internal(format!(
                "no equilibrium after {cap} pivots dropping label {label}"
            )));
        }
        let t = if in_p { &mut p } else { &mut q };
        let r = t.leaving_row(entering, perturb)?;
        let left = t.pivot(r, entering);
        pivots += 1;
        path.push((p.sorted_basis(), q.sorted_basis()));
        if left == label {
            break;
        }
        entering = left;
        in_p = !in_p;
    }
    let x = p.strategy(0..m)?;
    let y = q.strategy(m..m + n)?;
    Ok(LhOutcome {
        profile: MixedProfile::new(vec![x, y])?,
        pivots,
        path,
    })
}

/// True when no vertex of `{z >= 0 : M^T z <= 1}` (rows of `mat` index
/// `z`) has more tight constraints than the dimension.
fn polytope_is_simple(mat: &[Vec<Rational>]) -> bool {
    let dim = mat.len();
    let cols = mat[0].len();
    // constraint k < dim: z_k >= 0, else (M^T z)_{k-dim} <= 1
    let constraint = |k: usize| -> (Vec<Rational>, Rational) {
        if k < dim {
            let mut a = vec![Rational::zero(); dim];
            a[k] = Rational::one();
            (a, Rational::zero())
        } else {
            ((0..dim).map(|i| mat[i][k - dim].clone()).collect(), Rational::one())
        }
    };
    let all: Vec<(Vec<Rational>, Rational)> = (0..dim + cols).map(constraint).collect();
    let mut simple = true;
    subsets(dim + cols, dim, 0, &mut Vec::new(), &mut |s| {
        if !simple {
            return;
        }
        let a: Vec<Vec<Rational>> = s.iter().map(|&k| all[k].0.clone()).collect();
        let b: Vec<Rational> = s.iter().map(|&k| all[k].1.clone()).collect();
        let Some(z) = solve_unique(&a, &b) else { return };
        let dot = |k: usize| -> Rational { all[k].0.iter().zip(&z).map(|(c, v)| c * v).sum() };
        let feasible = (0..dim + cols).all(|k| {
            if k < dim {
                !z[k].is_negative()
            } else {
                dot(k) <= Rational::one()
            }
        });
        if !feasible {
            return;
        }
        let tight = (0..dim + cols).filter(|&k| dot(k) == all[k].1).count();
        if tight > dim {
            simple = false;
        }
    });
    simple
}

/// No vertex of either best-response polytope carries more labels than
/// its dimension.
pub fn is_nondegenerate(g: &BimatrixGame) -> bool {
    let shift = positive_shift(g);
    let shifted = |mat: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        mat.iter().map(|r| r.iter().map(|v| v + &shift).collect()).collect()
    };
    // P lives in x-space: rows of B
    let b = shifted(g.col_payoffs());
    // Q lives in y-space: rows of A^T
    let a = shifted(g.row_payoffs());
    let a_t: Vec<Vec<Rational>> = (0..g.cols()).map(|j| (0..g.rows()).map(|i| a[i][j].clone()).collect()).collect();
    polytope_is_simple(&b) && polytope_is_simple(&a_t)
}
