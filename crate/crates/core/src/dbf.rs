//! Two-dimensional discrete Brouwer functions and the encoding of an
//! End-of-line graph as one.
//!
//! # Geometry
//!
//! The picture is drawn on tiles of 4x4 vertices; tile `(c, r)` covers
//! vertices `1 + 4c .. 4 + 4c` by `1 + 4r .. 4 + 4r`. A strip is a chain of
//! tiles coloured red on the left of its direction of travel and yellow on
//! the right, two vertices each. Everything else is black.
//!
//! | object | tiles |
//! |---|---|
//! | vertex in slot `s` | row 0, columns `12s ..= 12s + 6`, travelling east |
//! | arc `(v_i, v_j)` | up column `12 s_i + 6`, across row `h`, down column `12 s_j` |
//! | height of arc | `h = 6 + 6 * rank(i + 2^n j)` among all arcs |
//! | crossover | 5x5 tiles centred where a horizontal meets a vertical |
//!
//! Slots are handed to vertex `0` and to every vertex that has an arc or is
//! a solution, in index order. Heights are the ranks of `i + 2^n j`, which
//! keeps the order of the keys and so keeps distinct arcs at distinct
//! heights. The grid width `m` is the least value with
//! `2^m >= 4 * (extent + 1) + 2`, where `extent` is the largest tile row or
//! column used.
//!
//! At a crossover the plus-shaped tiles are removed and the strip arriving
//! along the horizontal leaves along the vertical, turning around one
//! corner, while the strip arriving along the vertical leaves along the
//! horizontal around the opposite corner. Strip ends are therefore only at
//! the open ends of vertex segments, which is where the panchromatic points
//! are.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::circuit::{parse_netlist_at, BitString, BooleanCircuit};
use crate::error::{format_err, Error, Result};
use crate::sperner::{render_ppm, Colour, SpernerInstance, RASTER_MAX_M};
use crate::total_search::{parse_header, verify_eol_solution, EndOfLineInstance};

/// Largest source width accepted by [`eol_to_dbf`].
pub const EOL_TO_DBF_MAX_N: usize = 10;
/// Largest grid width for the scan and the encoder.
pub const DBF_MAX_M: u32 = RASTER_MAX_M;

const TILE: i64 = 4;
const SLOT_PITCH: i64 = 12;
const SEGMENT_LEN: i64 = 6;
const HEIGHT_PITCH: i64 = 6;

/// A vertex whose 3x3 neighbourhood shows all three colours.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PanchromaticPoint {
    pub x: u64,
    pub y: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Dir {
    E,
    W,
    N,
    S,
}

impl Dir {
    fn delta(self) -> (i64, i64) {
        match self {
            Dir::E => (1, 0),
            Dir::W => (-1, 0),
            Dir::N => (0, 1),
            Dir::S => (0, -1),
        }
    }

    fn from_delta(d: (i64, i64)) -> Dir {
        match d {
            (1, 0) => Dir::E,
            (-1, 0) => Dir::W,
            (0, 1) => Dir::N,
            (0, -1) => Dir::S,
            _ => unreachable!("tiles on a route are adjacent"),
        }
    }
}

/// Colour of local vertex `(u, v)` in a tile entered travelling `d_in` and
/// left travelling `d_out`.
fn tile_colour(d_in: Dir, d_out: Dir, u: i64, v: i64) -> Colour {
    let (lo_u, lo_v) = (u < 2, v < 2);
    if d_in == d_out {
        let red = match d_in {
            Dir::E => !lo_v,
            Dir::W => lo_v,
            Dir::N => lo_u,
            Dir::S => !lo_u,
        };
        return if red { Colour::Red } else { Colour::Yellow };
    }
    let (ix, iy) = d_in.delta();
    let (ox, oy) = d_out.delta();
    let left = ix * oy - iy * ox > 0;
    let inside = (ox - ix, oy - iy);
    let quadrant = (if lo_u { -1 } else { 1 }, if lo_v { -1 } else { 1 });
    if (quadrant == inside) == left {
        Colour::Red
    } else {
        Colour::Yellow
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub vertex: u64,
    /// Tile column of the segment's west end.
    pub left: i64,
    /// Tile column of the segment's east end.
    pub right: i64,
    pub has_in: bool,
    pub has_out: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bridge {
    pub from: u64,
    pub to: u64,
    /// Tile row of the horizontal section.
    pub height: i64,
}

/// How an instance built by [`eol_to_dbf`] relates to its source graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub source: EndOfLineInstance,
    pub slots: Vec<Slot>,
    pub bridges: Vec<Bridge>,
    /// Centre tiles of crossover gadgets.
    pub gadgets: Vec<(i64, i64)>,
}

/// Inclusive vertex-coordinate box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexBox {
    pub x0: i64,
    pub y0: i64,
    pub x1: i64,
    pub y1: i64,
}

impl VertexBox {
    pub fn contains(&self, p: &PanchromaticPoint) -> bool {
        let (x, y) = (p.x as i64, p.y as i64);
        self.x0 <= x && x <= self.x1 && self.y0 <= y && y <= self.y1
    }
}

fn tile_origin(c: i64, r: i64) -> (i64, i64) {
    (1 + TILE * c, 1 + TILE * r)
}

impl Provenance {
    /// Vertex boxes of the crossover gadgets.
    pub fn gadget_boxes(&self) -> Vec<VertexBox> {
        self.gadgets
            .iter()
            .map(|&(c, r)| {
                let (x0, y0) = tile_origin(c - 2, r - 2);
                let (x1, y1) = tile_origin(c + 3, r + 3);
                VertexBox { x0, y0, x1: x1 - 1, y1: y1 - 1 }
            })
            .collect()
    }

    /// Boxes around each open segment end, with the vertex they stand for.
    pub fn terminus_boxes(&self) -> Vec<(u64, VertexBox)> {
        let mut out = Vec::new();
        for s in &self.slots {
            if !s.has_in && s.vertex != 0 {
                let (x, _) = tile_origin(s.left, 0);
                out.push((s.vertex, VertexBox { x0: x - 2, y0: 0, x1: x + 1, y1: 5 }));
            }
            if !s.has_out {
                let (x, _) = tile_origin(s.right + 1, 0);
                out.push((s.vertex, VertexBox { x0: x - 2, y0: 0, x1: x + 1, y1: 5 }));
            }
        }
        out
    }

    fn to_text(&self) -> String {
        let mut s = format!("PROVENANCE n={}\n", self.source.n());
        for slot in &self.slots {
            let _ = writeln!(
                s,
                "SLOT {} {} {} {} {}",
                slot.vertex,
                slot.left,
                slot.right,
                u8::from(slot.has_in),
                u8::from(slot.has_out)
            );
        }
        for b in &self.bridges {
            let _ = writeln!(s, "BRIDGE {} {} {}", b.from, b.to, b.height);
        }
        for (c, r) in &self.gadgets {
            let _ = writeln!(s, "GADGET {c} {r}");
        }
        s.push_str("SOURCE\n");
        s.push_str(&self.source.to_text());
        s
    }

    fn parse(lines: &[(usize, &str)]) -> Result<Self> {
        let (hl, header) = lines[0];
        parse_header(header, "PROVENANCE", "n", hl)?;
        let src = lines
            .iter()
            .position(|(_, l)| l.trim() == "SOURCE")
            .ok_or_else(|| format_err(hl, "provenance without SOURCE"))?;
        let mut slots = Vec::new();
        let mut bridges = Vec::new();
        let mut gadgets = Vec::new();
        for &(ln, line) in &lines[1..src] {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.is_empty() || toks[0].starts_with('#') {
                continue;
            }
            let num = |k: usize| -> Result<i64> {
                toks.get(k)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| format_err(ln, format!("bad field {k} in {line:?}")))
            };
            let arity = |want: usize| -> Result<()> {
                if toks.len() == want {
                    Ok(())
                } else {
                    Err(format_err(ln, format!("{} expects {} fields", toks[0], want - 1)))
                }
            };
            match toks[0] {
                "SLOT" => {
                    arity(6)?;
                    slots.push(Slot {
                        vertex: num(1)? as u64,
                        left: num(2)?,
                        right: num(3)?,
                        has_in: num(4)? != 0,
                        has_out: num(5)? != 0,
                    });
                }
                "BRIDGE" => {
                    arity(4)?;
                    bridges.push(Bridge {
                        from: num(1)? as u64,
                        to: num(2)? as u64,
                        height: num(3)?,
                    });
                }
                "GADGET" => {
                    arity(3)?;
                    gadgets.push((num(1)?, num(2)?));
                }
                other => return Err(format_err(ln, format!("unknown provenance record {other:?}"))),
            }
        }
        let first = lines.get(src + 1).map_or(0, |(ln, _)| *ln);
        let body = lines[src + 1..].iter().map(|(_, l)| *l).collect::<Vec<_>>().join("\n");
        let source = EndOfLineInstance::parse(&body).map_err(|e| match e {
            Error::Format { line, msg } => Error::Format { line: line + first.saturating_sub(1), msg },
            other => other,
        })?;
        Ok(Provenance { source, slots, bridges, gadgets })
    }
}

/// A vertex colouring of the `(2^m + 1)^2` grid under the Sperner boundary
/// rule, optionally remembering the graph it encodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DbfInstance {
    colouring: SpernerInstance,
    provenance: Option<Provenance>,
}

impl DbfInstance {
    pub fn from_circuit(m: u32, circuit: BooleanCircuit) -> Result<Self> {
        Ok(DbfInstance {
            colouring: SpernerInstance::new(m, circuit)?,
            provenance: None,
        })
    }

    pub fn from_sperner(colouring: SpernerInstance) -> Self {
        DbfInstance { colouring, provenance: None }
    }

    pub fn uniform_interior(m: u32, colour: Colour) -> Result<Self> {
        Ok(Self::from_sperner(SpernerInstance::uniform_interior(m, colour)?))
    }

    pub fn m(&self) -> u32 {
        self.colouring.m()
    }

    pub fn side(&self) -> u64 {
        self.colouring.side()
    }

    pub fn as_sperner(&self) -> &SpernerInstance {
        &self.colouring
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn colour_of(&self, x: u64, y: u64) -> Result<Colour> {
        self.colouring.colour_of(x, y)
    }

    pub fn render_ppm(&self) -> Result<Vec<u8>> {
        render_ppm(&self.colouring.raster()?, self.side() as usize)
    }

    /// `DBF m=<m>`, the colour netlist, then optionally a provenance block.
    pub fn to_text(&self) -> String {
        let mut s = format!("DBF m={}\n{}", self.m(), self.colouring.circuit().to_netlist());
        if let Some(p) = &self.provenance {
            s.push_str(&p.to_text());
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
        let start = lines
            .iter()
            .position(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .ok_or_else(|| format_err(1, "empty DBF file"))?;
        let (hl, header) = lines[start];
        let m = parse_header(header, "DBF", "m", hl)?;
        let m = u32::try_from(m).map_err(|_| format_err(hl, "m too large"))?;
        let prov = lines.iter().position(|(_, l)| l.trim_start().starts_with("PROVENANCE"));
        let end = prov.unwrap_or(lines.len());
        let body = lines[start + 1..end].iter().map(|(_, l)| *l).collect::<Vec<_>>().join("\n");
        let circuit = parse_netlist_at(&body, hl + 1)?;
        let mut inst = Self::from_circuit(m, circuit)?;
        if let Some(p) = prov {
            inst.provenance = Some(Provenance::parse(&lines[p..])?);
        }
        Ok(inst)
    }
}

/// Every panchromatic point with `1 <= x, y <= 2^m - 1`, row by row.
pub fn find_panchromatic(inst: &DbfInstance) -> Result<Vec<PanchromaticPoint>> {
    find_panchromatic_threads(inst, 1)
}

pub fn find_panchromatic_threads(inst: &DbfInstance, threads: usize) -> Result<Vec<PanchromaticPoint>> {
    if inst.m() > DBF_MAX_M {
        return Err(Error::CapExceeded(format!("panchromatic scan needs m <= {DBF_MAX_M}")));
    }
    let raster = inst.colouring.raster()?;
    let side = inst.side();
    let last = side - 2;
    let scan = |rows: std::ops::Range<u64>| {
        let mut found = Vec::new();
        for y in rows {
            for x in 1..=last {
                let mut seen = 0u8;
                for yy in y - 1..=y + 1 {
                    let row = (yy * side) as usize;
                    for xx in x - 1..=x + 1 {
                        seen |= 1 << raster[row + xx as usize].code();
                    }
                }
                if seen == 0b111 {
                    found.push(PanchromaticPoint { x, y });
                }
            }
        }
        found
    };
    let threads = threads.clamp(1, last as usize) as u64;
    if threads == 1 {
        return Ok(scan(1..last + 1));
    }
    let band = last.div_ceil(threads);
    let parts: Vec<Vec<PanchromaticPoint>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|b| {
                let lo = 1 + b * band;
                let hi = (1 + (b + 1) * band).min(last + 1);
                s.spawn(move || scan(lo.min(hi)..hi))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan thread")).collect()
    });
    Ok(parts.concat())
}

/// The source vertex whose open segment end contains `p`.
pub fn decode_solution(inst: &DbfInstance, p: &PanchromaticPoint) -> Result<BitString> {
    let prov = inst
        .provenance
        .as_ref()
        .ok_or_else(|| Error::Decode("instance carries no provenance".into()))?;
    prov.terminus_boxes()
        .into_iter()
        .find(|(_, b)| b.contains(p))
        .map(|(v, _)| BitString::from_index(v, prov.source.n()))
        .ok_or_else(|| Error::Decode(format!("({},{}) is not at any segment end", p.x, p.y)))
}

type TileMap = HashMap<(i64, i64), (Dir, Dir)>;

fn lay(map: &mut TileMap, tile: (i64, i64), d_in: Dir, d_out: Dir) -> Result<()> {
    if map.insert(tile, (d_in, d_out)).is_some() {
        return Err(Error::Internal(format!("tile {tile:?} drawn twice")));
    }
    Ok(())
}

/// Lays a route of adjacent tiles entered travelling `d_in` and left
/// travelling `d_out`.
fn lay_route(map: &mut TileMap, route: &[(i64, i64)], d_in: Dir, d_out: Dir) -> Result<()> {
    for (k, &t) in route.iter().enumerate() {
        let din = if k == 0 { d_in } else { Dir::from_delta((t.0 - route[k - 1].0, t.1 - route[k - 1].1)) };
        let dout = if k + 1 == route.len() {
            d_out
        } else {
            Dir::from_delta((route[k + 1].0 - t.0, route[k + 1].1 - t.1))
        };
        lay(map, t, din, dout)?;
    }
    Ok(())
}

/// Encodes `inst` as a discrete Brouwer function whose panchromatic points
/// sit exactly at the open ends of the segments of its solutions.
pub fn eol_to_dbf(inst: &EndOfLineInstance) -> Result<DbfInstance> {
    let n = inst.n();
    if n > EOL_TO_DBF_MAX_N {
        return Err(Error::CapExceeded(format!("eol_to_dbf needs n <= {EOL_TO_DBF_MAX_N}, got {n}")));
    }
    let (succ, pred) = inst.tables()?;
    let size = 1u64 << n;
    let arc = |v: u64| -> Option<u64> {
        let w = succ[v as usize];
        (w != v && pred[w as usize] == v).then_some(w)
    };
    let arcs: Vec<(u64, u64)> = (0..size).filter_map(|v| arc(v).map(|w| (v, w))).collect();
    let mut has_in = vec![false; size as usize];
    let mut has_out = vec![false; size as usize];
    for &(v, w) in &arcs {
        has_out[v as usize] = true;
        has_in[w as usize] = true;
    }
    let x_of = |v: u64| BitString::from_index(v, n);
    let mut slots = Vec::new();
    let mut slot_of = BTreeMap::new();
    for v in 0..size {
        let active = v == 0
            || has_in[v as usize]
            || has_out[v as usize]
            || verify_eol_solution(inst, &x_of(v))?.is_some();
        if active {
            let s = slots.len() as i64;
            slot_of.insert(v, slots.len());
            slots.push(Slot {
                vertex: v,
                left: SLOT_PITCH * s,
                right: SLOT_PITCH * s + SEGMENT_LEN,
                has_in: has_in[v as usize],
                has_out: has_out[v as usize],
            });
        }
    }
    let mut keyed: Vec<(u64, u64, u64)> = arcs.iter().map(|&(i, j)| (i + size * j, i, j)).collect();
    keyed.sort_unstable();
    let bridges: Vec<Bridge> = keyed
        .iter()
        .enumerate()
        .map(|(rank, &(_, i, j))| Bridge { from: i, to: j, height: HEIGHT_PITCH * (rank as i64 + 1) })
        .collect();

    // bridge geometry: (up column, down column, height)
    let geom: Vec<(i64, i64, i64)> = bridges
        .iter()
        .map(|b| (slots[slot_of[&b.from]].right, slots[slot_of[&b.to]].left, b.height))
        .collect();
    let mut crossings = Vec::new();
    for &(a, b, h) in &geom {
        let (lo, hi) = (a.min(b), a.max(b));
        let dh = if b > a { Dir::E } else { Dir::W };
        for &(a2, b2, h2) in &geom {
            if h2 <= h {
                continue;
            }
            for (c, dv) in [(a2, Dir::N), (b2, Dir::S)] {
                if lo < c && c < hi {
                    crossings.push((c, h, dh, dv));
                }
            }
        }
    }
    crossings.sort_unstable_by_key(|&(c, r, _, _)| (r, c));

    let mut map = TileMap::new();
    for s in &slots {
        for c in s.left..=s.right {
            let d_in = if c == s.left && s.has_in { Dir::S } else { Dir::E };
            let d_out = if c == s.right && s.has_out { Dir::N } else { Dir::E };
            lay(&mut map, (c, 0), d_in, d_out)?;
        }
    }
    let crossing_tiles: std::collections::HashSet<(i64, i64)> =
        crossings.iter().map(|&(c, r, _, _)| (c, r)).collect();
    for &(a, b, h) in &geom {
        let dh = if b > a { Dir::E } else { Dir::W };
        let step = if b > a { 1 } else { -1 };
        let mut straight = |t: (i64, i64), d: Dir| -> Result<()> {
            if crossing_tiles.contains(&t) {
                Ok(())
            } else {
                lay(&mut map, t, d, d)
            }
        };
        for r in 1..h {
            straight((a, r), Dir::N)?;
            straight((b, r), Dir::S)?;
        }
        let mut c = a + step;
        while c != b {
            straight((c, h), dh)?;
            c += step;
        }
        lay(&mut map, (a, h), Dir::N, dh)?;
        lay(&mut map, (b, h), dh, Dir::S)?;
    }
    for &(c, r, dh, dv) in &crossings {
        for k in -2..=2 {
            map.remove(&(c + k, r));
            map.remove(&(c, r + k));
        }
        let (hx, _) = dh.delta();
        let (_, vy) = dv.delta();
        let (sx, sy) = (-hx, vy);
        let corner = |sx: i64, sy: i64| {
            [(c + 2 * sx, r), (c + 2 * sx, r + sy), (c + 2 * sx, r + 2 * sy), (c + sx, r + 2 * sy), (c, r + 2 * sy)]
        };
        lay_route(&mut map, &corner(sx, sy), dh, dv)?;
        let mut back = corner(-sx, -sy);
        back.reverse();
        lay_route(&mut map, &back, dv, dh)?;
    }

    let extent = map.keys().map(|&(c, r)| c.max(r)).max().unwrap_or(0);
    let needed = TILE * (extent + 1) + 2;
    let m = (1..=DBF_MAX_M)
        .find(|&m| (1i64 << m) >= needed)
        .ok_or_else(|| {
            Error::CapExceeded(format!(
                "encoding needs {needed} vertices per side, more than 2^{DBF_MAX_M}"
            ))
        })?;
    let span = 1usize << m;
    let mut table = vec![Colour::Black.code(); span * span];
    for (&(c, r), &(d_in, d_out)) in &map {
        let (x0, y0) = tile_origin(c, r);
        for u in 0..TILE {
            for v in 0..TILE {
                let (x, y) = ((x0 + u) as usize, (y0 + v) as usize);
                table[(x << m) | y] = tile_colour(d_in, d_out, u, v).code();
            }
        }
    }
    let circuit = BooleanCircuit::from_dense_table(2 * m as usize, 2, &table)?;
    let gadgets = crossings.iter().map(|&(c, r, _, _)| (c, r)).collect();
    Ok(DbfInstance {
        colouring: SpernerInstance::new(m, circuit)?,
        provenance: Some(Provenance {
            source: inst.clone(),
            slots,
            bridges,
            gadgets,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sperner::validate_boundary;
    use crate::total_search::{brute_force_eol, random_eol_instance, SolutionKind};

    fn fig5() -> EndOfLineInstance {
        EndOfLineInstance::from_paths(2, &[vec![0, 1, 3, 2]]).unwrap()
    }

    fn decoded(inst: &DbfInstance) -> Vec<u64> {
        let mut v: Vec<u64> = find_panchromatic(inst)
            .unwrap()
            .iter()
            .map(|p| decode_solution(inst, p).unwrap().to_index())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    #[test]
    fn turn_tiles() {
        // east then north: inside corner is north-west and red
        assert_eq!(tile_colour(Dir::E, Dir::N, 0, 3), Colour::Red);
        assert_eq!(tile_colour(Dir::E, Dir::N, 3, 3), Colour::Yellow);
        assert_eq!(tile_colour(Dir::E, Dir::N, 0, 0), Colour::Yellow);
        // north then east: inside corner is south-east and yellow
        assert_eq!(tile_colour(Dir::N, Dir::E, 3, 0), Colour::Yellow);
        assert_eq!(tile_colour(Dir::N, Dir::E, 0, 3), Colour::Red);
        assert_eq!(tile_colour(Dir::W, Dir::W, 0, 0), Colour::Red);
        assert_eq!(tile_colour(Dir::S, Dir::S, 3, 0), Colour::Red);
    }

    #[test]
    fn black_interior_meets_boundary_at_the_corner() {
        let inst = DbfInstance::uniform_interior(3, Colour::Black).unwrap();
        assert_eq!(find_panchromatic(&inst).unwrap(), vec![PanchromaticPoint { x: 1, y: 1 }]);
        assert!(decode_solution(&inst, &PanchromaticPoint { x: 1, y: 1 }).is_err());
    }

    #[test]
    fn single_edge() {
        let src = EndOfLineInstance::from_paths(2, &[vec![0, 1]]).unwrap();
        let inst = eol_to_dbf(&src).unwrap();
        let pts = find_panchromatic(&inst).unwrap();
        assert!(!pts.is_empty());
        let slot1 = &inst.provenance().unwrap().slots[1];
        let (x_end, _) = tile_origin(slot1.right + 1, 0);
        for p in &pts {
            assert!((p.x as i64 - x_end).abs() <= 2 && p.y <= 5, "{p:?}");
        }
        assert_eq!(decoded(&inst), vec![1]);
        assert!(validate_boundary(inst.as_sperner()).passed());
    }

    #[test]
    fn figure_five_geometry() {
        let src = fig5();
        let inst = eol_to_dbf(&src).unwrap();
        let prov = inst.provenance().unwrap();
        assert_eq!(prov.gadgets, vec![(36, 12)]);
        let heights: Vec<(u64, u64, i64)> = prov.bridges.iter().map(|b| (b.from, b.to, b.height)).collect();
        assert_eq!(heights, vec![(0, 1, 6), (3, 2, 12), (1, 3, 18)]);
        assert_eq!(decoded(&inst), vec![2]);
        let pts = find_panchromatic(&inst).unwrap();
        let boxes = prov.gadget_boxes();
        assert!(pts.iter().all(|p| boxes.iter().all(|b| !b.contains(p))));
        let x = decode_solution(&inst, &pts[0]).unwrap();
        assert_eq!(verify_eol_solution(&src, &x).unwrap().unwrap().kind, SolutionKind::Sink);
        let mid = inst.side() / 2;
        assert!(matches!(
            decode_solution(&inst, &PanchromaticPoint { x: mid, y: mid }),
            Err(Error::Decode(_))
        ));
        assert!(validate_boundary(inst.as_sperner()).passed());
    }

    #[test]
    fn two_lines_cover_their_ends() {
        let src = EndOfLineInstance::from_paths(3, &[vec![0, 5, 2], vec![3, 6, 7]]).unwrap();
        let inst = eol_to_dbf(&src).unwrap();
        let want: Vec<u64> = brute_force_eol(&src).unwrap().iter().map(|s| s.x.to_index()).collect();
        assert_eq!(want, vec![2, 3, 7]);
        assert_eq!(decoded(&inst), want);
    }

    #[test]
    fn random_n6_seed_11_all_verify() {
        let src = random_eol_instance(6, 1, 11).unwrap();
        let inst = eol_to_dbf(&src).unwrap();
        let pts = find_panchromatic(&inst).unwrap();
        assert!(!pts.is_empty());
        for p in &pts {
            let x = decode_solution(&inst, p).unwrap();
            assert!(verify_eol_solution(&src, &x).unwrap().is_some());
        }
        assert_eq!(find_panchromatic_threads(&inst, 4).unwrap(), pts);
    }

    #[test]
    fn text_round_trip() {
        let inst = eol_to_dbf(&fig5()).unwrap();
        let back = DbfInstance::parse(&inst.to_text()).unwrap();
        assert_eq!(back, inst);
        let bare = DbfInstance::uniform_interior(2, Colour::Red).unwrap();
        assert_eq!(DbfInstance::parse(&bare.to_text()).unwrap(), bare);
    }
}
