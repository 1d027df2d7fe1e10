//! Small dense exact linear algebra, generic over the checked scalar types
//! of [`field`](super::field). The `_in` variants return `None` when an
//! operation overflows the scalar type; the plain variants work on
//! [`Rational`] and never do.

use super::field::Field;
use crate::games::Rational;

/// Result of Gauss-Jordan elimination on `[A | b]`.
#[derive(Clone, Debug)]
pub struct Reduced<F = Rational> {
    /// Reduced row echelon form, zero rows dropped.
    pub rows: Vec<Vec<F>>,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
    pub consistent: bool,
    pub unknowns: usize,
}

impl<F: Field> Reduced<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The solution when it exists and is unique.
    pub fn unique(&self) -> Option<Vec<F>> {
        if !self.consistent || self.rank() != self.unknowns {
            return None;
        }
        let mut x = vec![F::zero(); self.unknowns];
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            x[p] = row[self.unknowns].clone();
        }
        Some(x)
    }
}

/// `row -= f * pivot`, skipping zero entries of `pivot`.
fn eliminate<F: Field>(row: &mut [F], f: &F, pivot: &[F]) -> Option<()> {
    for (v, p) in row.iter_mut().zip(pivot) {
        if !p.is_zero() {
            *v = v.sub(&f.mul(p)?)?;
        }
    }
    Some(())
}

fn scale<F: Field>(row: &mut [F], col: usize) -> Option<()> {
    let d = row[col].clone();
    for v in row.iter_mut() {
        *v = v.div(&d)?;
    }
    Some(())
}

/// Each row of `aug` is `a_1 .. a_d, b`.
pub fn reduce_in<F: Field>(mut aug: Vec<Vec<F>>, unknowns: usize) -> Option<Reduced<F>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        if r == aug.len() {
            break;
        }
        let Some(p) = (r..aug.len()).find(|&i| !aug[i][col].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        scale(&mut aug[r], col)?;
        let pivot_row = aug[r].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                eliminate(row, &f, &pivot_row)?;
            }
        }
        pivots.push(col);
        r += 1;
    }
    let consistent = aug[r..].iter().all(|row| row[unknowns].is_zero());
    aug.truncate(r);
    Some(Reduced {
        rows: aug,
        pivots,
        consistent,
        unknowns,
    })
}

pub fn reduce(aug: Vec<Vec<Rational>>, unknowns: usize) -> Reduced {
    reduce_in(aug, unknowns).expect("rational arithmetic is exact")
}

/// Unique solution of `A x = b`, if any.
pub fn solve_unique(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let d = a.first().map_or(0, Vec::len);
    let aug = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain([bi.clone()]).collect())
        .collect();
    reduce(aug, d).unique()
}

/// A row `a . x (= or <=) b`.
#[derive(Clone, Debug)]
pub struct Constraint<F = Rational> {
    pub a: Vec<F>,
    pub b: F,
}

impl<F: Field> Constraint<F> {
    pub fn lhs(&self, x: &[F]) -> Option<F> {
        self.a
            .iter()
            .zip(x)
            .try_fold(F::zero(), |acc, (a, v)| acc.add(&a.mul(v)?))
    }
}

struct Simplex<F> {
    /// Constraint rows over all columns, then the rhs.
    rows: Vec<Vec<F>>,
    basis: Vec<usize>,
    /// Reduced-cost rows, compared lexicographically column by column.
    costs: Vec<Vec<F>>,
}

impl<F: Field> Simplex<F> {
    fn pivot(&mut self, r: usize, col: usize) -> Option<()> {
        scale(&mut self.rows[r], col)?;
        let pivot_row = self.rows[r].clone();
        let others = self
            .rows
            .iter_mut()
            .enumerate()
            .filter(|(i, _)| *i != r)
            .map(|(_, row)| row)
            .chain(self.costs.iter_mut());
        for row in others {
            if !row[col].is_zero() {
                let f = row[col].clone();
                eliminate(row, &f, &pivot_row)?;
            }
        }
        self.basis[r] = col;
        Some(())
    }

    fn lex_negative(&self, col: usize) -> bool {
        self.costs
            .iter()
            .map(|c| &c[col])
            .find(|v| !v.is_zero())
            .is_some_and(|v| v.is_negative())
    }

    /// Bland's rule over columns `0..allowed`. Every objective handed in
    /// here is bounded below, so a missing leaving row never happens.
    fn optimise(&mut self, allowed: usize) -> Option<()> {
        let rhs = self.rows.first().map_or(0, |r| r.len() - 1);
        while let Some(col) = (0..allowed).find(|&j| !self.basis.contains(&j) && self.lex_negative(j)) {
            let mut best: Option<(usize, F)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = row[rhs].div(&row[col])?;
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let (r, _) = best.expect("objective bounded below");
            self.pivot(r, col)?;
        }
        Some(())
    }
}

/// Lexicographically least `x >= 0` with `eq` holding with equality and
/// `le` as upper bounds. The inner `None` means no such `x` exists.
pub fn lexmin_nonneg_in<F: Field>(eq: &[Constraint<F>], le: &[Constraint<F>], unknowns: usize) -> Option<Option<Vec<F>>> {
    let (n, l) = (unknowns, le.len());
    let m = eq.len() + l;
    let cols = n + l + m;
    let mut rows = Vec::with_capacity(m);
    for (r, (c, slack)) in eq.iter().map(|c| (c, false)).chain(le.iter().map(|c| (c, true))).enumerate() {
        let mut row = vec![F::zero(); cols + 1];
        row[..n].clone_from_slice(&c.a);
        if slack {
            row[n + r - eq.len()] = F::one();
        }
        row[cols] = c.b.clone();
        if c.b.is_negative() {
            for v in row.iter_mut() {
                *v = v.neg()?;
            }
        }
        row[n + l + r] = F::one();
        rows.push(row);
    }
    // phase one: drive the artificial columns to zero
    let mut phase_one = vec![F::zero(); cols + 1];
    for row in &rows {
        for (j, v) in row.iter().enumerate().take(n + l) {
            phase_one[j] = phase_one[j].sub(v)?;
        }
    }
    let mut sx = Simplex {
        rows,
        basis: (n + l..cols).collect(),
        costs: vec![phase_one],
    };
    sx.optimise(n + l)?;
    let infeasible = sx
        .basis
        .iter()
        .zip(&sx.rows)
        .any(|(&b, row)| b >= n + l && !row[cols].is_zero());
    if infeasible {
        return Some(None);
    }
    for r in 0..m {
        if sx.basis[r] >= n + l {
            if let Some(j) = (0..n + l).find(|&j| !sx.rows[r][j].is_zero()) {
                sx.pivot(r, j)?;
            }
        }
    }
    // phase two: the objectives x_0, x_1, .. in priority order
    let mut costs = Vec::with_capacity(n);
    for k in 0..n {
        let mut c = vec![F::zero(); cols + 1];
        c[k] = F::one();
        if let Some(r) = sx.basis.iter().position(|&b| b == k) {
            for (v, a) in c.iter_mut().zip(&sx.rows[r]) {
                *v = v.sub(a)?;
            }
        }
        costs.push(c);
    }
    sx.costs = costs;
    sx.optimise(n + l)?;
    let mut x = vec![F::zero(); n];
    for (&b, row) in sx.basis.iter().zip(&sx.rows) {
        if b < n {
            x[b] = row[cols].clone();
        }
    }
    Some(Some(x))
}

pub fn lexmin_nonneg(eq: &[Constraint], le: &[Constraint], unknowns: usize) -> Option<Vec<Rational>> {
    lexmin_nonneg_in(eq, le, unknowns).expect("rational arithmetic is exact")
}

/// Calls `visit` on every `size`-subset of `0..n` in lexicographic order.
pub fn subsets(n: usize, size: usize, start: usize, chosen: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if chosen.len() == size {
        visit(chosen);
        return;
    }
    let need = size - chosen.len();
    for k in start..n {
        if n - k < need {
            break;
        }
        chosen.push(k);
        subsets(n, size, k + 1, chosen, visit);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{rat, ratio};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    #[test]
    fn solves_small_systems() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let b = vec![rat(3), rat(5)];
        assert_eq!(solve_unique(&a, &b).unwrap(), vec![ratio(4, 5), ratio(7, 5)]);
        let singular = m(&[&[1, 2], &[2, 4]]);
        assert!(solve_unique(&singular, &b).is_none());
        let r = reduce(vec![vec![rat(1), rat(2), rat(3)], vec![rat(2), rat(4), rat(6)]], 2);
        assert!(r.consistent);
        assert_eq!(r.rank(), 1);
    }

    #[test]
    fn needs_a_row_swap() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(solve_unique(&a, &[rat(7), rat(9)]).unwrap(), vec![rat(9), rat(7)]);
    }

    fn c(a: &[i64], b: i64) -> Constraint {
        Constraint { a: a.iter().map(|&v| rat(v)).collect(), b: rat(b) }
    }

    #[test]
    fn lexmin_on_a_segment() {
        // x + y = 1: lexmin is (0, 1)
        assert_eq!(lexmin_nonneg(&[c(&[1, 1], 1)], &[], 2).unwrap(), vec![rat(0), rat(1)]);
        assert!(lexmin_nonneg(&[c(&[1, 1], 1)], &[c(&[1, 1], 0)], 2).is_none());
        assert!(lexmin_nonneg(&[c(&[1, 1], -1)], &[], 2).is_none());
    }

    #[test]
    fn lexmin_with_bounds_and_redundancy() {
        // x + y + z = 1, x + y + z = 1 again, y <= 1/2 as 2y <= 1, z <= 0
        let eq = [c(&[1, 1, 1], 1), c(&[2, 2, 2], 2)];
        let le = [c(&[0, 2, 0], 1), c(&[0, 0, 1], 0)];
        assert_eq!(lexmin_nonneg(&eq, &le, 3).unwrap(), vec![ratio(1, 2), ratio(1, 2), rat(0)]);
        // x - y = -1 forces y = x + 1
        assert_eq!(lexmin_nonneg(&[c(&[1, -1], -1)], &[], 2).unwrap(), vec![rat(0), rat(1)]);
    }

    #[test]
    fn subset_enumeration_order() {
        let mut seen = Vec::new();
        subsets(4, 2, 0, &mut Vec::new(), &mut |s| seen.push(s.to_vec()));
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }
}
