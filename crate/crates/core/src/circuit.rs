//! Boolean circuits: the substrate every exponential-size instance is built on.
//!
//! A circuit is a topologically ordered list of gates. Operands always refer
//! to earlier nodes, so evaluation is a single forward sweep.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{format_err, Error, Result};

/// Largest input width accepted by the truth-table compiler.
pub const MAX_TABLE_WIDTH: usize = 20;

/// A non-empty string of bits, most significant bit first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Shape("bit strings must have width >= 1".into()));
        }
        Ok(BitString(bits))
    }

    pub fn zeros(width: usize) -> Self {
        assert!(width >= 1, "bit strings must have width >= 1");
        BitString(vec![false; width])
    }

    /// The `width`-bit big-endian encoding of `value` (high bits beyond
    /// `width` are dropped).
    pub fn from_index(value: u64, width: usize) -> Self {
        assert!((1..=64).contains(&width), "width {width} out of range");
        BitString((0..width).map(|i| (value >> (width - 1 - i)) & 1 == 1).collect())
    }

    pub fn to_index(&self) -> u64 {
        assert!(self.0.len() <= 64, "bit string too wide for an index");
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|b| !b)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format_err(0, format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        BitString::new(bits)
    }
}

/// One node of a circuit. Operands are indices of earlier nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    /// The k-th input bit (k counts INPUT gates in order of appearance).
    Input(usize),
    Const(bool),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Xor(usize, usize),
}

impl Gate {
    fn operands(&self) -> impl Iterator<Item = usize> {
        let (a, b) = match *self {
            Gate::Input(_) | Gate::Const(_) => (None, None),
            Gate::Not(a) => (Some(a), None),
            Gate::And(a, b) | Gate::Or(a, b) | Gate::Xor(a, b) => (Some(a), Some(b)),
        };
        a.into_iter().chain(b)
    }
}

/// An acyclic gate list computing a function `{0,1}^input_width -> {0,1}^output_width`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanCircuit {
    input_width: usize,
    nodes: Vec<Gate>,
    outputs: Vec<usize>,
}

impl BooleanCircuit {
    /// Checks acyclicity, index ranges and that the INPUT gates are
    /// numbered 0, 1, 2, ... in order of appearance.
    pub fn new(nodes: Vec<Gate>, outputs: Vec<usize>) -> Result<Self> {
        let mut input_width = 0;
        for (idx, gate) in nodes.iter().enumerate() {
            if let Gate::Input(k) = *gate {
                if k != input_width {
                    return Err(Error::Invalid(format!(
                        "node {idx}: INPUT {k} out of order (expected {input_width})"
                    )));
                }
                input_width += 1;
            }
            for op in gate.operands() {
                if op >= nodes.len() {
                    return Err(Error::Invalid(format!(
                        "node {idx}: operand {op} out of range ({} nodes)",
                        nodes.len()
                    )));
                }
                if op >= idx {
                    return Err(Error::Cyclic {
                        node: idx,
                        operand: op,
                    });
                }
            }
        }
        if input_width == 0 {
            return Err(Error::Invalid("circuit has no inputs".into()));
        }
        if outputs.is_empty() {
            return Err(Error::Invalid("circuit has no outputs".into()));
        }
        if let Some(&bad) = outputs.iter().find(|&&o| o >= nodes.len()) {
            return Err(Error::Invalid(format!("output {bad} out of range")));
        }
        Ok(BooleanCircuit {
            input_width,
            nodes,
            outputs,
        })
    }

    pub fn input_width(&self) -> usize {
        self.input_width
    }

    pub fn output_width(&self) -> usize {
        self.outputs.len()
    }

    pub fn nodes(&self) -> &[Gate] {
        &self.nodes
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn evaluate(&self, input: &BitString) -> Result<BitString> {
        if input.width() != self.input_width {
            return Err(Error::Shape(format!(
                "circuit expects {} input bits, got {}",
                self.input_width,
                input.width()
            )));
        }
        let mut values: Vec<bool> = Vec::with_capacity(self.nodes.len());
        for gate in &self.nodes {
            let v = match *gate {
                Gate::Input(k) => input.bits()[k],
                Gate::Const(c) => c,
                Gate::Not(a) => !values[a],
                Gate::And(a, b) => values[a] & values[b],
                Gate::Or(a, b) => values[a] | values[b],
                Gate::Xor(a, b) => values[a] ^ values[b],
            };
            values.push(v);
        }
        Ok(BitString(self.outputs.iter().map(|&o| values[o]).collect()))
    }

    /// Index-based convenience wrapper around [`evaluate`](Self::evaluate).
    pub fn evaluate_index(&self, input: u64) -> u64 {
        self.evaluate(&BitString::from_index(input, self.input_width))
            .expect("width matches by construction")
            .to_index()
    }

    /// Bit-sliced evaluation: lane `t` of every word is an independent
    /// evaluation. `inputs[k]` carries input bit `k` for all 64 lanes.
    pub fn evaluate_words(&self, inputs: &[u64]) -> Result<Vec<u64>> {
        if inputs.len() != self.input_width {
            return Err(Error::Shape(format!(
                "circuit expects {} input words, got {}",
                self.input_width,
                inputs.len()
            )));
        }
        let mut values: Vec<u64> = Vec::with_capacity(self.nodes.len());
        for gate in &self.nodes {
            let v = match *gate {
                Gate::Input(k) => inputs[k],
                Gate::Const(c) => {
                    if c {
                        u64::MAX
                    } else {
                        0
                    }
                }
                Gate::Not(a) => !values[a],
                Gate::And(a, b) => values[a] & values[b],
                Gate::Or(a, b) => values[a] | values[b],
                Gate::Xor(a, b) => values[a] ^ values[b],
            };
            values.push(v);
        }
        Ok(self.outputs.iter().map(|&o| values[o]).collect())
    }

    /// Evaluates every input in `0..2^input_width` and returns the outputs
    /// as big-endian indices.
    pub fn truth_table(&self) -> Result<Vec<u64>> {
        let n = self.input_width;
        if n > 24 {
            return Err(Error::CapExceeded(format!(
                "truth table of a {n}-input circuit"
            )));
        }
        if self.output_width() > 64 {
            return Err(Error::CapExceeded("more than 64 outputs".into()));
        }
        let size = 1usize << n;
        let mut table = vec![0u64; size];
        let mut words = vec![0u64; n];
        for base in (0..size).step_by(64) {
            for (k, word) in words.iter_mut().enumerate() {
                let shift = n - 1 - k;
                *word = if shift < 6 {
                    // bit `shift` of lane index t
                    LANE_PATTERNS[shift]
                } else if (base >> shift) & 1 == 1 {
                    u64::MAX
                } else {
                    0
                };
            }
            let out = self.evaluate_words(&words)?;
            let lanes = (size - base).min(64);
            for (t, slot) in table[base..base + lanes].iter_mut().enumerate() {
                *slot = out
                    .iter()
                    .fold(0u64, |acc, w| (acc << 1) | ((w >> t) & 1));
            }
        }
        Ok(table)
    }

    /// Compiles an explicit table. Inputs missing from `table` map to all
    /// zeros.
    pub fn from_truth_table(table: &BTreeMap<BitString, BitString>) -> Result<Self> {
        let mut entries = table.iter();
        let (first_in, first_out) = entries
            .next()
            .ok_or_else(|| format_err(0, "empty truth table"))?;
        let (n, w) = (first_in.width(), first_out.width());
        if table.iter().any(|(k, v)| k.width() != n || v.width() != w) {
            return Err(format_err(0, "truth table keys or values have mixed widths"));
        }
        if w > 64 {
            return Err(Error::CapExceeded("more than 64 outputs".into()));
        }
        if n > MAX_TABLE_WIDTH {
            return Err(Error::CapExceeded(format!(
                "truth table input width {n} > {MAX_TABLE_WIDTH}"
            )));
        }
        let mut dense = vec![0u64; 1 << n];
        for (k, v) in table {
            dense[k.to_index() as usize] = v.to_index();
        }
        Self::from_dense_table(n, w, &dense)
    }

    /// Compiles `f` given as a dense table: `table[x]` holds the big-endian
    /// output index for input index `x`.
    ///
    /// Each output bit becomes a multiplexer tree selecting on the input
    /// bits, least significant first. Identical sub-trees are shared, so
    /// tables with lots of repetition compile to small circuits.
    pub fn from_dense_table(input_width: usize, output_width: usize, table: &[u64]) -> Result<Self> {
        if input_width == 0 || input_width > MAX_TABLE_WIDTH {
            return Err(Error::CapExceeded(format!(
                "truth table input width {input_width} not in 1..={MAX_TABLE_WIDTH}"
            )));
        }
        if output_width == 0 || output_width > 64 {
            return Err(Error::Shape(format!("output width {output_width} not in 1..=64")));
        }
        if table.len() != 1 << input_width {
            return Err(Error::Shape(format!(
                "dense table has {} rows, expected {}",
                table.len(),
                1usize << input_width
            )));
        }
        let mut b = CircuitBuilder::new(input_width);
        let zero = b.constant(false);
        let one = b.constant(true);
        let mut outputs = Vec::with_capacity(output_width);
        let mut level: Vec<usize> = Vec::with_capacity(table.len());
        for bit in 0..output_width {
            let shift = output_width - 1 - bit;
            level.clear();
            level.extend(
                table
                    .iter()
                    .map(|&row| if (row >> shift) & 1 == 1 { one } else { zero }),
            );
            for depth in 0..input_width {
                let select = b.input(input_width - 1 - depth);
                let next: Vec<usize> = level
                    .chunks(2)
                    .map(|pair| b.mux(select, pair[0], pair[1]))
                    .collect();
                level = next;
            }
            outputs.push(level[0]);
        }
        b.finish(outputs)
    }

    /// Canonical netlist text: one gate per line, no comments, final
    /// `OUTPUTS` line.
    pub fn to_netlist(&self) -> String {
        let mut s = String::new();
        for gate in &self.nodes {
            match *gate {
                Gate::Input(_) => s.push_str("INPUT\n"),
                Gate::Const(c) => s.push_str(if c { "CONST 1\n" } else { "CONST 0\n" }),
                Gate::Not(a) => s.push_str(&format!("NOT {a}\n")),
                Gate::And(a, b) => s.push_str(&format!("AND {a} {b}\n")),
                Gate::Or(a, b) => s.push_str(&format!("OR {a} {b}\n")),
                Gate::Xor(a, b) => s.push_str(&format!("XOR {a} {b}\n")),
            }
        }
        s.push_str("OUTPUTS");
        for o in &self.outputs {
            s.push_str(&format!(" {o}"));
        }
        s.push('\n');
        s
    }

    /// Parses the netlist format. Line numbers in errors are relative to
    /// `text`; use [`parse_netlist_at`] when `text` is embedded in a larger file.
    pub fn parse_netlist(text: &str) -> Result<Self> {
        parse_netlist_at(text, 1)
    }
}

/// `LANE_PATTERNS[j]` has bit `t` set iff bit `j` of `t` is set.
const LANE_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Parses a netlist whose first line is line `first_line` of some file.
pub fn parse_netlist_at(text: &str, first_line: usize) -> Result<BooleanCircuit> {
    let mut nodes: Vec<(usize, Gate)> = Vec::new();
    let mut outputs: Option<(usize, Vec<usize>)> = None;
    let mut inputs = 0;
    for (offset, raw) in text.lines().enumerate() {
        let line_no = first_line + offset;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if outputs.is_some() {
            return Err(format_err(line_no, "content after OUTPUTS line"));
        }
        let mut toks = line.split_whitespace();
        let op = toks.next().expect("non-empty line");
        let args = toks
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| format_err(line_no, format!("bad operand {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let arity = |want: usize| -> Result<()> {
            if args.len() == want {
                Ok(())
            } else {
                Err(format_err(
                    line_no,
                    format!("{op} takes {want} operand(s), got {}", args.len()),
                ))
            }
        };
        let gate = match op {
            "INPUT" => {
                arity(0)?;
                inputs += 1;
                Gate::Input(inputs - 1)
            }
            "CONST" => {
                arity(1)?;
                match args[0] {
                    0 => Gate::Const(false),
                    1 => Gate::Const(true),
                    v => return Err(format_err(line_no, format!("CONST takes 0 or 1, got {v}"))),
                }
            }
            "NOT" => {
                arity(1)?;
                Gate::Not(args[0])
            }
            "AND" => {
                arity(2)?;
                Gate::And(args[0], args[1])
            }
            "OR" => {
                arity(2)?;
                Gate::Or(args[0], args[1])
            }
            "XOR" => {
                arity(2)?;
                Gate::Xor(args[0], args[1])
            }
            "OUTPUTS" => {
                if args.is_empty() {
                    return Err(format_err(line_no, "OUTPUTS needs at least one node"));
                }
                outputs = Some((line_no, args));
                continue;
            }
            other => return Err(format_err(line_no, format!("unknown gate {other:?}"))),
        };
        nodes.push((line_no, gate));
    }
    let (out_line, outputs) =
        outputs.ok_or_else(|| format_err(first_line, "missing OUTPUTS line"))?;
    let count = nodes.len();
    for (idx, (line_no, gate)) in nodes.iter().enumerate() {
        for op in gate.operands() {
            if op >= count {
                return Err(format_err(
                    *line_no,
                    format!("node {idx} references node {op}, but only {count} nodes exist"),
                ));
            }
            if op >= idx {
                return Err(Error::Cyclic {
                    node: idx,
                    operand: op,
                });
            }
        }
    }
    if let Some(bad) = outputs.iter().find(|&&o| o >= count) {
        return Err(format_err(
            out_line,
            format!("output references node {bad}, but only {count} nodes exist"),
        ));
    }
    if inputs == 0 {
        return Err(format_err(first_line, "netlist declares no INPUT gates"));
    }
    BooleanCircuit::new(nodes.into_iter().map(|(_, g)| g).collect(), outputs)
}

/// Incremental construction with structural hashing: asking for the same
/// gate twice returns the existing node.
#[derive(Debug)]
pub struct CircuitBuilder {
    nodes: Vec<Gate>,
    memo: HashMap<Gate, usize>,
    input_width: usize,
}

impl CircuitBuilder {
    /// Starts a circuit whose first `input_width` nodes are its inputs.
    pub fn new(input_width: usize) -> Self {
        let nodes: Vec<Gate> = (0..input_width).map(Gate::Input).collect();
        let memo = nodes.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        CircuitBuilder {
            nodes,
            memo,
            input_width,
        }
    }

    pub fn input(&self, k: usize) -> usize {
        assert!(k < self.input_width, "input {k} out of range");
        k
    }

    fn push(&mut self, gate: Gate) -> usize {
        if let Some(&idx) = self.memo.get(&gate) {
            return idx;
        }
        let idx = self.nodes.len();
        self.nodes.push(gate);
        self.memo.insert(gate, idx);
        idx
    }

    pub fn constant(&mut self, value: bool) -> usize {
        self.push(Gate::Const(value))
    }

    pub fn not(&mut self, a: usize) -> usize {
        self.push(Gate::Not(a))
    }

    pub fn and(&mut self, a: usize, b: usize) -> usize {
        self.push(Gate::And(a.min(b), a.max(b)))
    }

    pub fn or(&mut self, a: usize, b: usize) -> usize {
        self.push(Gate::Or(a.min(b), a.max(b)))
    }

    pub fn xor(&mut self, a: usize, b: usize) -> usize {
        self.push(Gate::Xor(a.min(b), a.max(b)))
    }

    fn const_value(&self, node: usize) -> Option<bool> {
        match self.nodes[node] {
            Gate::Const(c) => Some(c),
            _ => None,
        }
    }

    /// `select ? hi : lo`, folding constant operands.
    pub fn mux(&mut self, select: usize, lo: usize, hi: usize) -> usize {
        if lo == hi {
            return lo;
        }
        match (self.const_value(lo), self.const_value(hi)) {
            (Some(false), Some(true)) => select,
            (Some(true), Some(false)) => self.not(select),
            (Some(false), _) => self.and(select, hi),
            (_, Some(false)) => {
                let ns = self.not(select);
                self.and(ns, lo)
            }
            (Some(true), _) => {
                let ns = self.not(select);
                self.or(ns, hi)
            }
            (_, Some(true)) => self.or(select, lo),
            _ => {
                let diff = self.xor(lo, hi);
                let pick = self.and(select, diff);
                self.xor(lo, pick)
            }
        }
    }

    pub fn finish(self, outputs: Vec<usize>) -> Result<BooleanCircuit> {
        BooleanCircuit::new(self.nodes, outputs)
    }
}
