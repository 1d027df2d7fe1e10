//! Sperner colourings of a triangulated `N x N` vertex grid, `N = 2^m + 1`.
//!
//! Every unit cell with lower-left corner `(x, y)` is split along the
//! diagonal from `(x, y)` to `(x+1, y+1)` into a LOWER and an UPPER
//! triangle. Boundary vertices carry a forced colour; interior vertices are
//! coloured by a circuit reading `x` then `y`, `m` bits each.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{parse_netlist_at, BitString, BooleanCircuit, MAX_TABLE_WIDTH};
use crate::error::{format_err, Error, Result};
use crate::total_search::{parse_header, EndOfLineInstance, EolSolution};

/// Largest `m` for which rasters, brute force and rendering are allowed.
pub const RASTER_MAX_M: u32 = 10;
/// Largest `m` accepted by [`sperner_to_eol`]; its vertex labels need
/// `2m + 2` bits.
pub const REDUCTION_MAX_M: u32 = ((MAX_TABLE_WIDTH - 2) / 2) as u32;
const MAX_M: u32 = 31;
const SAMPLED_BOUNDARY_POINTS: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Colour {
    Red = 0,
    Yellow = 1,
    Black = 2,
}

impl Colour {
    /// Maps a 2-bit circuit output to a colour; the unused code 3 is black.
    pub fn from_code(code: u64) -> Colour {
        match code {
            0 => Colour::Red,
            1 => Colour::Yellow,
            _ => Colour::Black,
        }
    }

    pub fn code(self) -> u64 {
        self as u64
    }

    pub fn rgb(self) -> [u8; 3] {
        match self {
            Colour::Red => [255, 0, 0],
            Colour::Yellow => [255, 255, 0],
            Colour::Black => [0, 0, 0],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Half {
    Lower,
    Upper,
}

/// A triangle of the grid, named by its cell and half.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TriangleRef {
    pub x: u64,
    pub y: u64,
    pub half: Half,
}

impl TriangleRef {
    pub fn lower(x: u64, y: u64) -> Self {
        TriangleRef { x, y, half: Half::Lower }
    }

    pub fn upper(x: u64, y: u64) -> Self {
        TriangleRef { x, y, half: Half::Upper }
    }

    /// Corners in counter-clockwise order.
    pub fn vertices(&self) -> [(u64, u64); 3] {
        let (x, y) = (self.x, self.y);
        match self.half {
            Half::Lower => [(x, y), (x + 1, y), (x + 1, y + 1)],
            Half::Upper => [(x, y), (x + 1, y + 1), (x, y + 1)],
        }
    }

    /// The triangle across edge `k` (from corner `k` to corner `k+1`), or
    /// `None` when that edge is on the outer boundary.
    fn neighbour(&self, k: usize, side: u64) -> Option<TriangleRef> {
        let (x, y) = (self.x, self.y);
        let cells = side - 1;
        match (self.half, k) {
            (Half::Lower, 0) => y.checked_sub(1).map(|y| TriangleRef::upper(x, y)),
            (Half::Lower, 1) => (x + 1 < cells).then(|| TriangleRef::upper(x + 1, y)),
            (Half::Lower, _) => Some(TriangleRef::upper(x, y)),
            (Half::Upper, 0) => Some(TriangleRef::lower(x, y)),
            (Half::Upper, 1) => (y + 1 < cells).then(|| TriangleRef::lower(x, y + 1)),
            (Half::Upper, _) => x.checked_sub(1).map(|x| TriangleRef::lower(x, y)),
        }
    }

    /// Position in row-major order (by `y`, then `x`, LOWER before UPPER).
    pub fn index(&self, side: u64) -> u64 {
        2 * (self.y * (side - 1) + self.x) + u64::from(self.half == Half::Upper)
    }

    pub fn from_index(index: u64, side: u64) -> TriangleRef {
        let cell = index / 2;
        let (x, y) = (cell % (side - 1), cell / (side - 1));
        if index % 2 == 0 {
            TriangleRef::lower(x, y)
        } else {
            TriangleRef::upper(x, y)
        }
    }
}

impl Ord for TriangleRef {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.y, self.x, self.half).cmp(&(other.y, other.x, other.half))
    }
}

impl PartialOrd for TriangleRef {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TriangleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let half = match self.half {
            Half::Lower => "LOWER",
            Half::Upper => "UPPER",
        };
        write!(f, "{half}({},{})", self.x, self.y)
    }
}

impl FromStr for TriangleRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || format_err(0, format!("bad triangle {s:?}, expected e.g. LOWER(3,0)"));
        let (half, rest) = s.trim().split_once('(').ok_or_else(bad)?;
        let (x, y) = rest
            .strip_suffix(')')
            .and_then(|r| r.split_once(','))
            .ok_or_else(bad)?;
        let x = x.trim().parse().map_err(|_| bad())?;
        let y = y.trim().parse().map_err(|_| bad())?;
        match half {
            "LOWER" => Ok(TriangleRef::lower(x, y)),
            "UPPER" => Ok(TriangleRef::upper(x, y)),
            _ => Err(bad()),
        }
    }
}

/// The colour forced on a boundary vertex, `None` for interior vertices.
pub fn boundary_colour(x: u64, y: u64, side: u64) -> Option<Colour> {
    if x == 0 {
        Some(Colour::Red)
    } else if y == 0 {
        Some(Colour::Yellow)
    } else if x == side - 1 || y == side - 1 {
        Some(Colour::Black)
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpernerInstance {
    m: u32,
    circuit: BooleanCircuit,
    masked: bool,
}

impl SpernerInstance {
    pub fn new(m: u32, circuit: BooleanCircuit) -> Result<Self> {
        if m == 0 || m > MAX_M {
            return Err(Error::Shape(format!("m must be in 1..={MAX_M}, got {m}")));
        }
        if circuit.input_width() != 2 * m as usize || circuit.output_width() != 2 {
            return Err(Error::Shape(format!(
                "colour circuit must map {} bits to 2, got {} -> {}",
                2 * m,
                circuit.input_width(),
                circuit.output_width()
            )));
        }
        Ok(SpernerInstance {
            m,
            circuit,
            masked: true,
        })
    }

    /// An instance whose circuit also colours the boundary vertices it can
    /// address. Only useful for exercising [`validate_boundary`].
    pub fn unmasked(m: u32, circuit: BooleanCircuit) -> Result<Self> {
        let mut inst = Self::new(m, circuit)?;
        inst.masked = false;
        Ok(inst)
    }

    /// Compiles `colour(x, y)` for `x, y < 2^m` into a circuit.
    pub fn from_fn(m: u32, colour: impl Fn(u64, u64) -> Colour) -> Result<Self> {
        if m == 0 || 2 * m as usize > MAX_TABLE_WIDTH {
            return Err(Error::CapExceeded(format!(
                "cannot tabulate a colouring with m={m}"
            )));
        }
        let span = 1u64 << m;
        let table: Vec<u64> = (0..span * span)
            .map(|i| colour(i >> m, i & (span - 1)).code())
            .collect();
        let circuit = BooleanCircuit::from_dense_table(2 * m as usize, 2, &table)?;
        Self::new(m, circuit)
    }

    pub fn uniform_interior(m: u32, colour: Colour) -> Result<Self> {
        Self::from_fn(m, |_, _| colour)
    }

    /// Independent uniform colours on the interior.
    pub fn random(m: u32, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let span = 1u64 << m.min(RASTER_MAX_M);
        let cells: Vec<u64> = (0..span * span).map(|_| rng.gen_range(0..3)).collect();
        Self::from_fn(m, |x, y| Colour::from_code(cells[(x * span + y) as usize]))
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Vertices per side, `2^m + 1`.
    pub fn side(&self) -> u64 {
        (1u64 << self.m) + 1
    }

    pub fn circuit(&self) -> &BooleanCircuit {
        &self.circuit
    }

    pub fn is_masked(&self) -> bool {
        self.masked
    }

    fn circuit_colour(&self, x: u64, y: u64) -> Colour {
        Colour::from_code(self.circuit.evaluate_index((x << self.m) | y))
    }

    pub fn colour_of(&self, x: u64, y: u64) -> Result<Colour> {
        let side = self.side();
        if x >= side || y >= side {
            return Err(Error::Shape(format!(
                "vertex ({x},{y}) outside the {side}x{side} grid"
            )));
        }
        let forced = boundary_colour(x, y, side);
        let addressable = x < side - 1 && y < side - 1;
        Ok(match forced {
            Some(c) if self.masked || !addressable => c,
            _ => self.circuit_colour(x, y),
        })
    }

    /// All vertex colours, row `y` at offset `y * side`.
    pub fn raster(&self) -> Result<Vec<Colour>> {
        if self.m > RASTER_MAX_M {
            return Err(Error::CapExceeded(format!(
                "raster of a grid with m={} > {RASTER_MAX_M}",
                self.m
            )));
        }
        let side = self.side();
        let span = side - 1;
        let table = self.circuit.truth_table()?;
        let mut out = Vec::with_capacity((side * side) as usize);
        for y in 0..side {
            for x in 0..side {
                let forced = boundary_colour(x, y, side);
                let addressable = x < span && y < span;
                out.push(match forced {
                    Some(c) if self.masked || !addressable => c,
                    _ => Colour::from_code(table[((x << self.m) | y) as usize]),
                });
            }
        }
        Ok(out)
    }

    /// Whether the three corners of `t` carry three different colours.
    pub fn is_trichromatic(&self, t: &TriangleRef) -> Result<bool> {
        let mut c = [Colour::Black; 3];
        for (k, (x, y)) in t.vertices().into_iter().enumerate() {
            c[k] = self.colour_of(x, y)?;
        }
        Ok(is_trichromatic(&c))
    }

    pub fn to_text(&self) -> String {
        format!("SPERNER m={}\n{}", self.m, self.circuit.to_netlist())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (idx, header) = lines
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .ok_or_else(|| format_err(1, "empty SPERNER file"))?;
        let m = parse_header(header, "SPERNER", "m", idx + 1)?;
        let m = u32::try_from(m).map_err(|_| format_err(idx + 1, "m too large"))?;
        let body = lines.map(|(_, l)| l).collect::<Vec<_>>().join("\n");
        let circuit = parse_netlist_at(&body, idx + 2)?;
        Self::new(m, circuit)
    }

    /// Binary PPM (P6) with `y = side - 1` as the top row.
    pub fn render_ppm(&self) -> Result<Vec<u8>> {
        render_ppm(&self.raster()?, self.side() as usize)
    }
}

pub(crate) fn render_ppm(raster: &[Colour], side: usize) -> Result<Vec<u8>> {
    if side > (1 << RASTER_MAX_M) + 1 {
        return Err(Error::CapExceeded(format!("render of {side}x{side} grid")));
    }
    let mut out = format!("P6\n{side} {side}\n255\n").into_bytes();
    for row in raster.chunks(side).rev() {
        for c in row {
            out.extend_from_slice(&c.rgb());
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryVerdict {
    pub checked: u64,
    pub violations: Vec<(u64, u64)>,
}

impl BoundaryVerdict {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the boundary rule on every boundary vertex, or on a fixed sample
/// of each side when the grid is larger than `2^12`.
pub fn validate_boundary(inst: &SpernerInstance) -> BoundaryVerdict {
    let side = inst.side();
    let last = side - 1;
    let positions: Vec<u64> = if side <= (1 << 12) {
        (0..side).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut p: Vec<u64> = (0..SAMPLED_BOUNDARY_POINTS)
            .map(|_| rng.gen_range(0..side))
            .chain([0, 1, last - 1, last])
            .collect();
        p.sort_unstable();
        p.dedup();
        p
    };
    let mut points: Vec<(u64, u64)> = Vec::new();
    for &t in &positions {
        points.extend([(t, 0), (t, last), (0, t), (last, t)]);
    }
    points.sort_unstable_by_key(|&(x, y)| (y, x));
    points.dedup();
    let violations = points
        .iter()
        .filter(|&&(x, y)| {
            let want = boundary_colour(x, y, side).expect("boundary vertex");
            inst.colour_of(x, y).ok() != Some(want)
        })
        .copied()
        .collect();
    BoundaryVerdict {
        checked: points.len() as u64,
        violations,
    }
}

fn triangle_colours(colour: &impl Fn(u64, u64) -> Colour, t: &TriangleRef) -> [Colour; 3] {
    t.vertices().map(|(x, y)| colour(x, y))
}

fn is_trichromatic(c: &[Colour; 3]) -> bool {
    c[0] != c[1] && c[1] != c[2] && c[0] != c[2]
}

/// Edge `k` is crossed inward with red on the left.
fn entry_edge(c: &[Colour; 3]) -> Option<usize> {
    (0..3).find(|&k| c[k] == Colour::Red && c[(k + 1) % 3] == Colour::Yellow)
}

/// Edge `k` is crossed outward with red on the left.
fn exit_edge(c: &[Colour; 3]) -> Option<usize> {
    (0..3).find(|&k| c[k] == Colour::Yellow && c[(k + 1) % 3] == Colour::Red)
}

/// Walks from the bottom-left red/yellow boundary edge through red/yellow
/// edges, red on the left, until a trichromatic triangle.
pub fn find_trichromatic_walk(inst: &SpernerInstance) -> Result<TriangleRef> {
    let side = inst.side();
    let colour = |x, y| inst.colour_of(x, y).expect("walk stays on the grid");
    let budget = 2 * (side - 1) * (side - 1);
    let mut current = TriangleRef::lower(0, 0);
    let start = triangle_colours(&colour, &current);
    if entry_edge(&start) != Some(0) {
        return Err(Error::Invalid(
            "bottom-left boundary edge is not red/yellow; boundary rule violated".into(),
        ));
    }
    for _ in 0..budget {
        let c = triangle_colours(&colour, &current);
        match exit_edge(&c) {
            None if is_trichromatic(&c) => return Ok(current),
            None => {
                return Err(Error::Invalid(format!(
                    "walk stuck in {current}, which has no exit edge and is not trichromatic"
                )))
            }
            Some(k) => {
                current = current.neighbour(k, side).ok_or_else(|| {
                    Error::Invalid(format!("walk left the grid from {current}"))
                })?;
            }
        }
    }
    Err(Error::Budget {
        steps: budget,
        msg: "Sperner walk did not terminate; instance is corrupt".into(),
    })
}

/// Every trichromatic triangle in row-major order.
pub fn brute_force_trichromatic(inst: &SpernerInstance) -> Result<Vec<TriangleRef>> {
    brute_force_trichromatic_threads(inst, 1)
}

/// As [`brute_force_trichromatic`], scanning row bands on `threads` threads.
pub fn brute_force_trichromatic_threads(inst: &SpernerInstance, threads: usize) -> Result<Vec<TriangleRef>> {
    let raster = inst.raster()?;
    let side = inst.side();
    let cells = side - 1;
    let colour = |x: u64, y: u64| raster[(y * side + x) as usize];
    let scan = |rows: std::ops::Range<u64>| {
        let mut found = Vec::new();
        for y in rows {
            for x in 0..cells {
                for t in [TriangleRef::lower(x, y), TriangleRef::upper(x, y)] {
                    if is_trichromatic(&triangle_colours(&colour, &t)) {
                        found.push(t);
                    }
                }
            }
        }
        found
    };
    let threads = threads.clamp(1, cells as usize) as u64;
    if threads == 1 {
        return Ok(scan(0..cells));
    }
    let band = cells.div_ceil(threads);
    let parts: Vec<Vec<TriangleRef>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|b| {
                let rows = (b * band).min(cells)..((b + 1) * band).min(cells);
                s.spawn(move || scan(rows))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan thread")).collect()
    });
    Ok(parts.concat())
}

/// Maps solutions of the End-of-line instance built by [`sperner_to_eol`]
/// back to triangles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpernerDecoder {
    side: u64,
    width: usize,
}

impl SpernerDecoder {
    pub fn decode_index(&self, v: u64) -> Result<TriangleRef> {
        let count = 2 * (self.side - 1) * (self.side - 1);
        if v == 0 || v > count {
            return Err(Error::Decode(format!("vertex {v} is not a triangle label")));
        }
        Ok(TriangleRef::from_index(v - 1, self.side))
    }

    pub fn decode(&self, x: &BitString) -> Result<TriangleRef> {
        if x.width() != self.width {
            return Err(Error::Shape(format!(
                "expected a {}-bit label, got {}",
                self.width,
                x.width()
            )));
        }
        self.decode_index(x.to_index())
    }

    pub fn decode_solution(&self, sol: &EolSolution) -> Result<TriangleRef> {
        self.decode(&sol.x)
    }

    pub fn encode(&self, t: &TriangleRef) -> BitString {
        BitString::from_index(t.index(self.side) + 1, self.width)
    }
}

/// Builds the End-of-line graph whose vertices are the triangles (label
/// `index + 1`) plus `0^n` standing for the exterior entry edge. Arcs cross
/// red/yellow edges with red on the left.
pub fn sperner_to_eol(inst: &SpernerInstance) -> Result<(EndOfLineInstance, SpernerDecoder)> {
    if inst.m() > REDUCTION_MAX_M {
        return Err(Error::CapExceeded(format!(
            "sperner_to_eol needs m <= {REDUCTION_MAX_M}, got {}",
            inst.m()
        )));
    }
    let raster = inst.raster()?;
    let side = inst.side();
    let cells = side - 1;
    let count = 2 * cells * cells;
    let width = 2 * inst.m() as usize + 2;
    let colour = |x: u64, y: u64| raster[(y * side + x) as usize];
    let label = |t: Option<TriangleRef>| t.map_or(0, |t| t.index(side) + 1);

    let size = 1usize << width;
    let mut succ: Vec<u64> = (0..size as u64).collect();
    let mut pred: Vec<u64> = (0..size as u64).collect();
    for i in 0..count {
        let t = TriangleRef::from_index(i, side);
        let c = triangle_colours(&colour, &t);
        let v = i + 1;
        if let Some(k) = entry_edge(&c) {
            pred[v as usize] = label(t.neighbour(k, side));
        }
        if let Some(k) = exit_edge(&c) {
            succ[v as usize] = label(t.neighbour(k, side));
        }
    }
    let first = TriangleRef::lower(0, 0);
    if pred[1] != 0 || entry_edge(&triangle_colours(&colour, &first)) != Some(0) {
        return Err(Error::Invalid("boundary rule violated at the entry edge".into()));
    }
    succ[0] = 1;
    let eol = EndOfLineInstance::from_tables(width, &succ, &pred)?;
    Ok((eol, SpernerDecoder { side, width }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::total_search::{brute_force_eol, follow_line, SolutionKind};

    #[test]
    fn forced_boundary_colours() {
        let inst = SpernerInstance::random(3, 1).unwrap();
        assert_eq!(inst.colour_of(0, 5).unwrap(), Colour::Red);
        assert_eq!(inst.colour_of(5, 0).unwrap(), Colour::Yellow);
        assert_eq!(inst.colour_of(8, 3).unwrap(), Colour::Black);
        assert_eq!(inst.colour_of(3, 8).unwrap(), Colour::Black);
        assert!(inst.colour_of(9, 0).is_err());
    }

    #[test]
    fn code_three_is_black() {
        let table = vec![3u64; 4];
        let c = BooleanCircuit::from_dense_table(2, 2, &table).unwrap();
        let inst = SpernerInstance::new(1, c).unwrap();
        assert_eq!(inst.colour_of(1, 1).unwrap(), Colour::Black);
    }

    #[test]
    fn minimal_grid_with_red_centre() {
        let inst = SpernerInstance::uniform_interior(1, Colour::Red).unwrap();
        assert_eq!(inst.side(), 3);
        assert_eq!(brute_force_trichromatic(&inst).unwrap(), vec![TriangleRef::upper(1, 0)]);
        assert_eq!(find_trichromatic_walk(&inst).unwrap(), TriangleRef::upper(1, 0));
    }

    #[test]
    fn black_interior() {
        let inst = SpernerInstance::uniform_interior(2, Colour::Black).unwrap();
        let all = brute_force_trichromatic(&inst).unwrap();
        assert_eq!(all, vec![TriangleRef::lower(0, 0)]);
        assert_eq!(find_trichromatic_walk(&inst).unwrap(), TriangleRef::lower(0, 0));
    }

    #[test]
    fn red_interior() {
        let inst = SpernerInstance::uniform_interior(2, Colour::Red).unwrap();
        let t = find_trichromatic_walk(&inst).unwrap();
        assert_eq!(t, TriangleRef::upper(3, 0));
        let colours: Vec<Colour> = t.vertices().iter().map(|&(x, y)| inst.colour_of(x, y).unwrap()).collect();
        assert_eq!(colours, [Colour::Yellow, Colour::Black, Colour::Red]);
        assert_eq!(brute_force_trichromatic(&inst).unwrap(), vec![t]);
    }

    #[test]
    fn diagonal_split_walk_is_in_oracle() {
        let inst = SpernerInstance::from_fn(2, |x, y| if y < x { Colour::Red } else { Colour::Black }).unwrap();
        let all = brute_force_trichromatic(&inst).unwrap();
        assert!(all.contains(&find_trichromatic_walk(&inst).unwrap()));
        assert_eq!(all.len() % 2, 1);
    }

    #[test]
    fn random_n9_seed3_has_odd_count() {
        let inst = SpernerInstance::random(3, 3).unwrap();
        let all = brute_force_trichromatic(&inst).unwrap();
        assert_eq!(all.len() % 2, 1);
        assert!(all.contains(&find_trichromatic_walk(&inst).unwrap()));
        assert_eq!(brute_force_trichromatic_threads(&inst, 3).unwrap(), all);
    }

    #[test]
    fn boundary_validation() {
        let inst = SpernerInstance::random(3, 7).unwrap();
        let v = validate_boundary(&inst);
        assert!(v.passed());
        assert_eq!(v.checked, 4 * 8);

        let black = BooleanCircuit::from_dense_table(4, 2, &[2; 16]).unwrap();
        let raw = SpernerInstance::unmasked(2, black).unwrap();
        let v = validate_boundary(&raw);
        assert!(!v.passed());
        assert_eq!(v.violations[0], (0, 0));
    }

    #[test]
    fn reduction_on_black_interior() {
        let inst = SpernerInstance::uniform_interior(2, Colour::Black).unwrap();
        let (eol, dec) = sperner_to_eol(&inst).unwrap();
        let end = follow_line(&eol).unwrap();
        assert_eq!(end.kind, SolutionKind::Sink);
        assert_eq!(dec.decode_solution(&end).unwrap(), TriangleRef::lower(0, 0));
    }

    #[test]
    fn reduction_solutions_decode_to_trichromatic() {
        for seed in [1, 2, 3] {
            let inst = SpernerInstance::random(2, seed).unwrap();
            let all = brute_force_trichromatic(&inst).unwrap();
            let (eol, dec) = sperner_to_eol(&inst).unwrap();
            let sols = brute_force_eol(&eol).unwrap();
            assert_eq!(sols.len(), all.len());
            for s in sols {
                assert!(all.contains(&dec.decode_solution(&s).unwrap()));
            }
        }
    }

    #[test]
    fn triangle_indexing() {
        let side = 9;
        for i in 0..128 {
            let t = TriangleRef::from_index(i, side);
            assert_eq!(t.index(side), i);
            assert_eq!(t.to_string().parse::<TriangleRef>().unwrap(), t);
        }
        assert!(TriangleRef::from_index(3, side) < TriangleRef::from_index(4, side));
    }

    #[test]
    fn text_round_trip_and_ppm() {
        let inst = SpernerInstance::random(2, 4).unwrap();
        let back = SpernerInstance::parse(&inst.to_text()).unwrap();
        assert_eq!(back.raster().unwrap(), inst.raster().unwrap());
        let ppm = inst.render_ppm().unwrap();
        assert!(ppm.starts_with(b"P6\n5 5\n255\n"));
        assert_eq!(ppm.len(), "P6\n5 5\n255\n".len() + 75);
        // bottom-left pixel is the last row's first pixel
        let base = ppm.len() - 15;
        assert_eq!(&ppm[base..base + 3], &[255, 0, 0]);
        assert!(SpernerInstance::parse("SPERNER m=3\nINPUT 0\nOUTPUTS 0 0\n").is_err());
    }
}
