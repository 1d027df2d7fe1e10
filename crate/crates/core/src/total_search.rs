//! End-of-line instances: verification, line following, and exhaustive
//! oracles.
//!
//! The (S, P)-graph has an arc `v -> w` exactly when `S(v) = w` and
//! `P(w) = v`. Self-loops (`S(v) = P(v) = v`) carry no arc.

use std::fmt;
use std::thread;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{parse_netlist_at, BitString, BooleanCircuit};
use crate::error::{format_err, Error, Result};

/// Largest width the exhaustive solution scan accepts.
pub const BRUTE_FORCE_MAX_N: usize = 20;
/// Largest width the degree-parity scan accepts.
pub const PARITY_MAX_N: usize = 16;
/// Largest width the random generator accepts.
pub const GENERATOR_MAX_N: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SolutionKind {
    /// `P(S(x)) != x`: the line ends at `x`.
    Sink,
    /// `S(P(x)) != x` and `x != 0^n`: a line starts at `x`.
    Source,
}

impl fmt::Display for SolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolutionKind::Sink => "SINK",
            SolutionKind::Source => "SOURCE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EolSolution {
    pub x: BitString,
    pub kind: SolutionKind,
}

impl fmt::Display for EolSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.x)
    }
}

impl EolSolution {
    /// Parses the `SINK 0101` / `SOURCE 0101` form produced by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut toks = text.split_whitespace();
        let kind = match toks.next() {
            Some("SINK") => SolutionKind::Sink,
            Some("SOURCE") => SolutionKind::Source,
            other => return Err(format_err(1, format!("expected SINK or SOURCE, got {other:?}"))),
        };
        let x = toks
            .next()
            .ok_or_else(|| format_err(1, "missing bit string"))?
            .parse()?;
        Ok(EolSolution { x, kind })
    }
}

/// A successor/predecessor circuit pair over n-bit vertices, satisfying
/// `P(0^n) = 0^n != S(0^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndOfLineInstance {
    n: usize,
    successor: BooleanCircuit,
    predecessor: BooleanCircuit,
}

impl EndOfLineInstance {
    pub fn new(successor: BooleanCircuit, predecessor: BooleanCircuit) -> Result<Self> {
        let n = successor.input_width();
        for (name, c) in [("S", &successor), ("P", &predecessor)] {
            if c.input_width() != n || c.output_width() != n {
                return Err(Error::Shape(format!(
                    "{name} must map {n} bits to {n} bits, has {} -> {}",
                    c.input_width(),
                    c.output_width()
                )));
            }
        }
        if n > 64 {
            return Err(Error::CapExceeded(format!("vertex width {n} > 64")));
        }
        let zero = BitString::zeros(n);
        if !predecessor.evaluate(&zero)?.is_zero() {
            return Err(Error::Invalid("P(0^n) != 0^n".into()));
        }
        if successor.evaluate(&zero)?.is_zero() {
            return Err(Error::Invalid("S(0^n) = 0^n".into()));
        }
        Ok(EndOfLineInstance {
            n,
            successor,
            predecessor,
        })
    }

    /// Compiles explicit successor/predecessor tables (indexed by vertex).
    pub fn from_tables(n: usize, successor: &[u64], predecessor: &[u64]) -> Result<Self> {
        let s = BooleanCircuit::from_dense_table(n, n, successor)?;
        let p = BooleanCircuit::from_dense_table(n, n, predecessor)?;
        Self::new(s, p)
    }

    /// Builds an instance from disjoint directed paths given as vertex
    /// indices. Every vertex not on a path is self-fixed.
    pub fn from_paths(n: usize, paths: &[Vec<u64>]) -> Result<Self> {
        if n == 0 || n > GENERATOR_MAX_N {
            return Err(Error::CapExceeded(format!(
                "explicit tables need 1 <= n <= {GENERATOR_MAX_N}, got {n}"
            )));
        }
        let size = 1u64 << n;
        let mut succ: Vec<u64> = (0..size).collect();
        let mut pred: Vec<u64> = (0..size).collect();
        let mut used = vec![false; size as usize];
        for path in paths {
            for &v in path {
                if v >= size {
                    return Err(Error::Invalid(format!("vertex {v} needs more than {n} bits")));
                }
                if std::mem::replace(&mut used[v as usize], true) {
                    return Err(Error::Invalid(format!("vertex {v} appears on two paths")));
                }
            }
            for w in path.windows(2) {
                succ[w[0] as usize] = w[1];
                pred[w[1] as usize] = w[0];
            }
        }
        Self::from_tables(n, &succ, &pred)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn successor(&self) -> &BooleanCircuit {
        &self.successor
    }

    pub fn predecessor(&self) -> &BooleanCircuit {
        &self.predecessor
    }

    pub fn succ(&self, v: u64) -> u64 {
        self.successor.evaluate_index(v)
    }

    pub fn pred(&self, v: u64) -> u64 {
        self.predecessor.evaluate_index(v)
    }

    /// Whether `v -> w` is an arc (mutual agreement, no self-loops).
    pub fn has_arc(&self, v: u64, w: u64) -> bool {
        v != w && self.succ(v) == w && self.pred(w) == v
    }

    /// Full S and P tables, evaluated bit-sliced.
    pub fn tables(&self) -> Result<(Vec<u64>, Vec<u64>)> {
        Ok((self.successor.truth_table()?, self.predecessor.truth_table()?))
    }

    /// File form: `EOL n=<n>`, the S netlist, `---`, the P netlist.
    pub fn to_text(&self) -> String {
        format!(
            "EOL n={}\n{}---\n{}",
            self.n,
            self.successor.to_netlist(),
            self.predecessor.to_netlist()
        )
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (header_idx, header) = lines
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .ok_or_else(|| format_err(1, "empty EOL file"))?;
        let header_line = header_idx + 1;
        let n = parse_header(header, "EOL", "n", header_line)?;
        let rest: Vec<(usize, &str)> = lines.collect();
        let sep = rest
            .iter()
            .position(|(_, l)| l.trim() == "---")
            .ok_or_else(|| format_err(header_line, "missing `---` separator between S and P"))?;
        let join = |part: &[(usize, &str)]| -> (usize, String) {
            let first = part.first().map(|(i, _)| i + 1).unwrap_or(0);
            let body = part.iter().map(|(_, l)| *l).collect::<Vec<_>>().join("\n");
            (first, body)
        };
        let (s_line, s_text) = join(&rest[..sep]);
        let (p_line, p_text) = join(&rest[sep + 1..]);
        let s = parse_netlist_at(&s_text, s_line)?;
        let p = parse_netlist_at(&p_text, p_line)?;
        let inst = Self::new(s, p)?;
        if inst.n != n {
            return Err(format_err(
                header_line,
                format!("header says n={n} but circuits have width {}", inst.n),
            ));
        }
        Ok(inst)
    }
}

/// Parses `<TAG> <key>=<value>`.
pub(crate) fn parse_header(line: &str, tag: &str, key: &str, line_no: usize) -> Result<usize> {
    let mut toks = line.split_whitespace();
    if toks.next() != Some(tag) {
        return Err(format_err(line_no, format!("expected `{tag} {key}=<value>` header")));
    }
    let kv = toks
        .next()
        .ok_or_else(|| format_err(line_no, format!("missing {key}=")))?;
    let value = kv
        .strip_prefix(&format!("{key}="))
        .ok_or_else(|| format_err(line_no, format!("expected {key}=<value>, got {kv:?}")))?;
    value
        .parse()
        .map_err(|_| format_err(line_no, format!("bad {key} value {value:?}")))
}

fn check_width(inst: &EndOfLineInstance, x: &BitString) -> Result<()> {
    if x.width() != inst.n {
        return Err(Error::Shape(format!(
            "vertex has {} bits, instance has n={}",
            x.width(),
            inst.n
        )));
    }
    Ok(())
}

fn classify(x: u64, pred_succ_x: u64, succ_pred_x: u64) -> Option<SolutionKind> {
    if pred_succ_x != x {
        Some(SolutionKind::Sink)
    } else if succ_pred_x != x && x != 0 {
        Some(SolutionKind::Source)
    } else {
        None
    }
}

/// Accepts `x` iff `P(S(x)) != x`, or `S(P(x)) != x` with `x != 0^n`.
/// SINK is reported when both hold.
pub fn verify_eol_solution(inst: &EndOfLineInstance, x: &BitString) -> Result<Option<EolSolution>> {
    check_width(inst, x)?;
    let v = x.to_index();
    let s = inst.succ(v);
    let p = inst.pred(v);
    Ok(classify(v, inst.pred(s), inst.succ(p)).map(|kind| EolSolution { x: x.clone(), kind }))
}

/// Follows arcs from `0^n` until the line ends. The loop guard allows
/// `2^n + 1` steps.
pub fn follow_line(inst: &EndOfLineInstance) -> Result<EolSolution> {
    let budget = if inst.n >= 63 { u64::MAX } else { (1u64 << inst.n) + 1 };
    let mut x = 0u64;
    let mut steps = 0u64;
    loop {
        let y = inst.succ(x);
        if inst.pred(y) != x {
            return Ok(EolSolution {
                x: BitString::from_index(x, inst.n),
                kind: SolutionKind::Sink,
            });
        }
        if steps >= budget {
            return Err(Error::Budget {
                steps,
                msg: "line from 0^n does not terminate".into(),
            });
        }
        x = y;
        steps += 1;
    }
}

/// Every solution, in lexicographic order.
pub fn brute_force_eol(inst: &EndOfLineInstance) -> Result<Vec<EolSolution>> {
    brute_force_eol_threads(inst, 1)
}

/// [`brute_force_eol`] with the vertex range split over `threads` workers.
/// Output order does not depend on the thread count.
pub fn brute_force_eol_threads(inst: &EndOfLineInstance, threads: usize) -> Result<Vec<EolSolution>> {
    if inst.n > BRUTE_FORCE_MAX_N {
        return Err(Error::CapExceeded(format!(
            "brute force needs n <= {BRUTE_FORCE_MAX_N}, got {}",
            inst.n
        )));
    }
    let (succ, pred) = inst.tables()?;
    let size = succ.len();
    let threads = threads.clamp(1, 64);
    let chunk = size.div_ceil(threads);
    let scan = |lo: usize, hi: usize| -> Vec<EolSolution> {
        (lo..hi)
            .filter_map(|v| {
                let s = succ[v];
                let p = pred[v];
                classify(v as u64, pred[s as usize], succ[p as usize]).map(|kind| EolSolution {
                    x: BitString::from_index(v as u64, inst.n),
                    kind,
                })
            })
            .collect()
    };
    if threads == 1 {
        return Ok(scan(0, size));
    }
    let parts: Vec<Vec<EolSolution>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let lo = (t * chunk).min(size);
                let hi = ((t + 1) * chunk).min(size);
                let scan = &scan;
                scope.spawn(move || scan(lo, hi))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
    });
    Ok(parts.into_iter().flatten().collect())
}

/// Per-vertex degrees of the (S, P)-graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub in_degree: Vec<u8>,
    pub out_degree: Vec<u8>,
    /// Vertices whose total degree is odd.
    pub odd_vertices: usize,
}

impl DegreeReport {
    pub fn is_even(&self) -> bool {
        self.odd_vertices % 2 == 0
    }
}

/// Counts odd-degree vertices; the count is even for every digraph.
pub fn degree_parity_check(inst: &EndOfLineInstance) -> Result<DegreeReport> {
    if inst.n > PARITY_MAX_N {
        return Err(Error::CapExceeded(format!(
            "parity check needs n <= {PARITY_MAX_N}, got {}",
            inst.n
        )));
    }
    let (succ, pred) = inst.tables()?;
    let size = succ.len();
    let mut in_degree = vec![0u8; size];
    let mut out_degree = vec![0u8; size];
    for v in 0..size {
        let w = succ[v] as usize;
        if w != v && pred[w] as usize == v {
            out_degree[v] += 1;
            in_degree[w] += 1;
        }
    }
    let odd_vertices = (0..size)
        .filter(|&v| (in_degree[v] + out_degree[v]) % 2 == 1)
        .count();
    Ok(DegreeReport {
        in_degree,
        out_degree,
        odd_vertices,
    })
}

/// Random instance made of `lines` vertex-disjoint paths, the first one
/// starting at `0^n`; each path has between 1 and `n` arcs.
pub fn random_eol_instance(n: usize, lines: usize, seed: u64) -> Result<EndOfLineInstance> {
    random_eol_instance_with(n, lines, n.max(1), seed)
}

/// As [`random_eol_instance`] with an explicit cap on arcs per path.
pub fn random_eol_instance_with(
    n: usize,
    lines: usize,
    max_arcs: usize,
    seed: u64,
) -> Result<EndOfLineInstance> {
    let paths = random_paths(n, lines, max_arcs, seed)?;
    EndOfLineInstance::from_paths(n, &paths)
}

/// The vertex sequences [`random_eol_instance_with`] compiles.
pub fn random_paths(n: usize, lines: usize, max_arcs: usize, seed: u64) -> Result<Vec<Vec<u64>>> {
    if n == 0 || n > GENERATOR_MAX_N {
        return Err(Error::CapExceeded(format!(
            "generator needs 1 <= n <= {GENERATOR_MAX_N}, got {n}"
        )));
    }
    if lines == 0 || max_arcs == 0 {
        return Err(Error::Invalid("need at least one line of at least one arc".into()));
    }
    let size = 1u64 << n;
    if (2 * lines) as u64 > size {
        return Err(Error::Invalid(format!(
            "{lines} disjoint lines need {} vertices, n={n} has {size}",
            2 * lines
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<u64> = (1..size).collect();
    pool.shuffle(&mut rng);
    let mut pool = pool.into_iter();
    let mut remaining = size as usize - 1;
    let mut paths = Vec::with_capacity(lines);
    for line in 0..lines {
        // every later line needs two fresh vertices
        let reserve = 2 * (lines - line - 1);
        let start_cost = usize::from(line != 0);
        let budget = remaining - reserve - start_cost;
        let max_here = max_arcs.min(budget).max(1);
        let arcs = rng.gen_range(1..=max_here);
        let mut path = Vec::with_capacity(arcs + 1);
        if line == 0 {
            path.push(0);
        } else {
            path.push(pool.next().expect("reserved vertex"));
            remaining -= 1;
        }
        for _ in 0..arcs {
            path.push(pool.next().expect("budgeted vertex"));
            remaining -= 1;
        }
        paths.push(path);
    }
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// n=2, line 00 -> 01 -> 10, vertex 11 self-fixed.
    pub(crate) fn e3() -> EndOfLineInstance {
        EndOfLineInstance::from_paths(2, &[vec![0, 1, 2]]).unwrap()
    }

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    /// Oracle straight from the definition, evaluated on raw tables.
    fn solutions_by_definition(succ: &[u64], pred: &[u64]) -> Vec<(u64, SolutionKind)> {
        (0..succ.len() as u64)
            .filter_map(|x| {
                let s = succ[x as usize];
                let p = pred[x as usize];
                if pred[s as usize] != x {
                    Some((x, SolutionKind::Sink))
                } else if succ[p as usize] != x && x != 0 {
                    Some((x, SolutionKind::Source))
                } else {
                    None
                }
            })
            .collect()
    }

    #[test]
    fn e3_verification() {
        let inst = e3();
        let sol = verify_eol_solution(&inst, &bits("10")).unwrap().unwrap();
        assert_eq!(sol.kind, SolutionKind::Sink);
        assert_eq!(verify_eol_solution(&inst, &bits("00")).unwrap(), None);
        assert_eq!(verify_eol_solution(&inst, &bits("11")).unwrap(), None);
        assert_eq!(verify_eol_solution(&inst, &bits("01")).unwrap(), None);
        assert!(matches!(
            verify_eol_solution(&inst, &bits("101")),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn e3_brute_force_and_follow() {
        let inst = e3();
        let all = brute_force_eol(&inst).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].x, bits("10"));
        assert_eq!(follow_line(&inst).unwrap().x, bits("10"));
        assert_eq!(solutions_by_definition(&[1, 2, 2, 3], &[0, 0, 1, 3]), vec![(2, SolutionKind::Sink)]);
    }

    #[test]
    fn e3_degree_parity() {
        let r = degree_parity_check(&e3()).unwrap();
        assert_eq!(r.odd_vertices, 2);
        assert_eq!(r.out_degree, vec![1, 1, 0, 0]);
        assert_eq!(r.in_degree, vec![0, 1, 1, 0]);
    }

    #[test]
    fn single_edge_instance() {
        let inst = EndOfLineInstance::from_paths(3, &[vec![0, 1]]).unwrap();
        assert_eq!(follow_line(&inst).unwrap().x, bits("001"));
        assert_eq!(brute_force_eol(&inst).unwrap().len(), 1);
    }

    #[test]
    fn two_disjoint_lines_have_three_solutions() {
        let inst = EndOfLineInstance::from_paths(3, &[vec![0, 5], vec![2, 7, 3]]).unwrap();
        let sols = brute_force_eol(&inst).unwrap();
        let got: Vec<_> = sols.iter().map(|s| (s.x.to_index(), s.kind)).collect();
        assert_eq!(
            got,
            vec![(2, SolutionKind::Source), (3, SolutionKind::Sink), (5, SolutionKind::Sink)]
        );
        let (s, p) = inst.tables().unwrap();
        assert_eq!(solutions_by_definition(&s, &p), got);
    }

    #[test]
    fn cycle_plus_line_has_even_parity() {
        // 0 -> 1, and the remaining six vertices form one cycle
        let n = 3;
        let mut succ: Vec<u64> = (0..8).collect();
        let mut pred: Vec<u64> = (0..8).collect();
        succ[0] = 1;
        pred[1] = 0;
        let cyc = [2u64, 3, 4, 5, 6, 7];
        for i in 0..cyc.len() {
            let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
            succ[a as usize] = b;
            pred[b as usize] = a;
        }
        let inst = EndOfLineInstance::from_tables(n, &succ, &pred).unwrap();
        let r = degree_parity_check(&inst).unwrap();
        assert_eq!(r.odd_vertices, 2);
        assert!(r.is_even());
    }

    #[test]
    fn validity_promise_is_enforced() {
        // S(0) = 0
        assert!(matches!(
            EndOfLineInstance::from_tables(1, &[0, 1], &[0, 1]),
            Err(Error::Invalid(_))
        ));
        // P(0) != 0
        assert!(matches!(
            EndOfLineInstance::from_tables(1, &[1, 1], &[1, 1]),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn hamiltonian_line_is_followed_to_the_end() {
        let inst = EndOfLineInstance::from_paths(3, &[(0..8).collect()]).unwrap();
        let sol = follow_line(&inst).unwrap();
        assert_eq!(sol.x, bits("111"));
        assert_eq!(brute_force_eol(&inst).unwrap(), vec![sol]);
    }

    #[test]
    fn generator_is_deterministic_and_valid() {
        let a = random_eol_instance(6, 2, 9).unwrap();
        let b = random_eol_instance(6, 2, 9).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        let c = random_eol_instance(2, 1, 0).unwrap();
        assert!(brute_force_eol(&c)
            .unwrap()
            .iter()
            .any(|s| s.kind == SolutionKind::Sink));
        assert!(random_eol_instance(2, 3, 0).is_err());
    }

    #[test]
    fn generator_seed_41_three_lines() {
        let inst = random_eol_instance(8, 3, 41).unwrap();
        let sols = brute_force_eol(&inst).unwrap();
        let sinks = sols.iter().filter(|s| s.kind == SolutionKind::Sink).count();
        let sources = sols.iter().filter(|s| s.kind == SolutionKind::Source).count();
        assert_eq!((sols.len(), sinks, sources), (5, 3, 2));
    }

    #[test]
    fn threaded_scan_matches_serial() {
        let inst = random_eol_instance(10, 4, 3).unwrap();
        let serial = brute_force_eol(&inst).unwrap();
        for t in [2, 3, 7] {
            assert_eq!(brute_force_eol_threads(&inst, t).unwrap(), serial);
        }
    }

    #[test]
    fn text_round_trip() {
        let inst = random_eol_instance(4, 2, 1).unwrap();
        let text = inst.to_text();
        let back = EndOfLineInstance::parse(&text).unwrap();
        assert_eq!(back, inst);
        assert!(EndOfLineInstance::parse("EOL n=3\nINPUT\nOUTPUTS 0\n").is_err());
        let sol = EolSolution::parse("SINK 0110").unwrap();
        assert_eq!(sol.to_string(), "SINK 0110");
    }
}
