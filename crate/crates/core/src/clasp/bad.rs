//! Bad local boundary configurations: small regions next to two adjacent
//! boundary vertices, cut off by an arc whose weight does not dominate the
//! weight of the pair.
//!
//! A pattern is stored as the code of a rooted traversal. Vertices are
//! numbered in discovery order starting from the left boundary vertex; each
//! rotation is listed from the slot the vertex was discovered by. Tokens
//! are `eN` (edge `N` of the region, twice in a row for an hourglass), `-`
//! for a simple edge crossed by the arc and `=` for one slot of a crossed
//! hourglass.

use std::collections::{HashMap, HashSet};
use std::fmt;

use super::cut::{crossing_weight, dual_arcs, Crossing};
use super::{dominates, ClaspSequence};

use crate::error::{Error, Result};
use crate::hpg::{Color, Faces, HourglassGraph, Slot, VertexId};
use crate::words::Rank;

const BAD4: &str = include_str!("../../data/bad4.txt");
const BAD3: &str = include_str!("../../data/bad3.txt");
const BAD2: &str = include_str!("../../data/bad2.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Token {
    Edge(usize),
    Stub,
    HourglassStub,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternVertex {
    pub color: Color,
    /// `Some(0)` for the left boundary vertex, `Some(1)` for the right one.
    pub boundary: Option<u8>,
    pub slots: Vec<Token>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub name: String,
    pub vertices: Vec<PatternVertex>,
}

impl Pattern {
    /// Fundamental weight counts of the arc: stubs read from the region side.
    pub fn arc_weight(&self, r: Rank) -> Vec<u32> {
        let mut n = vec![0u32; r.usize() - 1];
        let mut hourglass_slots = 0;
        for v in &self.vertices {
            for t in &v.slots {
                let k = match t {
                    Token::Edge(_) => continue,
                    Token::HourglassStub => {
                        hourglass_slots += 1;
                        continue;
                    }
                    Token::Stub if r.get() == 2 => 1,
                    Token::Stub => match v.color {
                        Color::Black => 1,
                        Color::White => r.get() - 1,
                    },
                };
                n[k as usize - 1] += 1;
            }
        }
        // Two slots per crossed hourglass.
        if hourglass_slots > 0 {
            n[1] += hourglass_slots / 2;
        }
        n
    }

    /// Fundamental weight counts of the two boundary vertices.
    pub fn pair_weight(&self, r: Rank) -> Vec<u32> {
        let mut n = vec![0u32; r.usize() - 1];
        for v in self.vertices.iter().filter(|v| v.boundary.is_some()) {
            let k = boundary_type(r, v.color, v.slots.len());
            n[k as usize - 1] += 1;
        }
        n
    }

    fn check(&self, r: Rank) -> std::result::Result<(), String> {
        let roots: Vec<Option<u8>> = self.vertices.iter().map(|v| v.boundary).collect();
        if roots.first() != Some(&Some(0)) || roots.iter().filter(|b| **b == Some(1)).count() != 1 {
            return Err("the first vertex must be b0 and exactly one vertex must be b1".into());
        }
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for v in &self.vertices {
            for t in &v.slots {
                if let Token::Edge(e) = t {
                    *seen.entry(*e).or_insert(0) += 1;
                }
            }
        }
        if let Some((e, c)) = seen.iter().find(|(_, &c)| c != 2 && c != 4) {
            return Err(format!("edge e{e} appears {c} times"));
        }
        if dominates(r.get(), &self.arc_weight(r), &self.pair_weight(r)) {
            return Err("the arc weight dominates the pair weight".into());
        }
        Ok(())
    }
}

fn boundary_type(r: Rank, color: Color, slots: usize) -> u8 {
    match (r.get(), color, slots) {
        (2, _, _) => 1,
        (_, _, 2) => 2,
        (rr, Color::White, _) => rr - 1,
        _ => 1,
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pattern {}", self.name)?;
        for v in &self.vertices {
            let mut head = v.color.to_string();
            if let Some(b) = v.boundary {
                head.push_str(&format!(" b{b}"));
            }
            let toks: Vec<String> = v
                .slots
                .iter()
                .map(|t| match t {
                    Token::Edge(e) => format!("e{e}"),
                    Token::Stub => "-".into(),
                    Token::HourglassStub => "=".into(),
                })
                .collect();
            writeln!(f, "  {head}: {}", toks.join(" "))?;
        }
        Ok(())
    }
}

/// A parsed pattern file for one rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternSet {
    pub r: Rank,
    pub patterns: Vec<Pattern>,
}

impl PatternSet {
    pub fn builtin(r: Rank) -> Result<PatternSet> {
        match r.get() {
            4 => PatternSet::parse(r, BAD4),
            3 => PatternSet::parse(r, BAD3),
            _ => PatternSet::parse(r, BAD2),
        }
    }

    pub fn parse(r: Rank, text: &str) -> Result<PatternSet> {
        let mut patterns: Vec<(usize, Pattern)> = Vec::new();
        for (ix, raw) in text.lines().enumerate() {
            let line = ix + 1;
            let err = |msg: String| Error::Rule { line, msg };
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if let Some(name) = body.strip_prefix("pattern") {
                patterns.push((line, Pattern { name: name.trim().to_string(), vertices: Vec::new() }));
                continue;
            }
            let (_, p) = patterns.last_mut().ok_or_else(|| err("vertex line before any `pattern`".into()))?;
            let (head, toks) = body.split_once(':').ok_or_else(|| err("expected `color [b0|b1]: slots`".into()))?;
            let mut words = head.split_whitespace();
            let color = match words.next() {
                Some("black") => Color::Black,
                Some("white") => Color::White,
                other => return Err(err(format!("bad color {other:?}"))),
            };
            let boundary = match words.next() {
                None => None,
                Some("b0") => Some(0),
                Some("b1") => Some(1),
                Some(w) => return Err(err(format!("bad marker {w:?}"))),
            };
            let slots = toks
                .split_whitespace()
                .map(|t| match t {
                    "-" => Ok(Token::Stub),
                    "=" => Ok(Token::HourglassStub),
                    _ => t
                        .strip_prefix('e')
                        .and_then(|d| d.parse().ok())
                        .map(Token::Edge)
                        .ok_or_else(|| err(format!("bad token {t:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            p.vertices.push(PatternVertex { color, boundary, slots });
        }
        for (line, p) in &patterns {
            p.check(r).map_err(|msg| Error::Rule { line: *line, msg: format!("pattern {}: {msg}", p.name) })?;
        }
        Ok(PatternSet { r, patterns: patterns.into_iter().map(|x| x.1).collect() })
    }

    /// Index of the first pattern found at `b_i, b_{i+1}`.
    pub fn find_at(&self, g: &HourglassGraph, i: usize) -> Option<usize> {
        self.patterns.iter().position(|p| matches_at(g, p, i))
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.patterns {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Rooted traversal shared by pattern extraction and matching. `is_stub`
/// decides, per discovered vertex index and rotation position, whether the
/// slot leaves the region.
fn traverse(
    g: &HourglassGraph,
    i: usize,
    mut is_stub: impl FnMut(usize, usize, Slot) -> Option<bool>,
) -> Option<(Vec<VertexId>, Vec<PatternVertex>, Vec<Slot>)> {
    let n = g.n();
    let root = g.boundary()[i];
    let right = g.boundary()[(i + 1) % n];
    let mut order: Vec<(VertexId, usize)> = vec![(root, 0)];
    let mut index: HashMap<VertexId, usize> = HashMap::from([(root, 0)]);
    let mut edge_no: HashMap<usize, usize> = HashMap::new();
    let mut out = Vec::new();
    let mut stubs = Vec::new();
    let mut k = 0;
    while k < order.len() {
        let (v, off) = order[k];
        let rot = g.rotation(v);
        let deg = rot.len();
        let boundary = if v == root {
            Some(0)
        } else if v == right {
            Some(1)
        } else if g.vertex(v).boundary {
            return None;
        } else {
            None
        };
        let mut slots = Vec::with_capacity(deg);
        for j in 0..deg {
            let s = rot[(off + j) % deg];
            let e = g.edge(s.edge);
            if is_stub(k, j, s)? {
                slots.push(if e.m == 2 { Token::HourglassStub } else { Token::Stub });
                stubs.push(s);
                continue;
            }
            let y = e.other(v);
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(y) {
                e.insert(order.len());
                let p = g.slot_index(y, s).expect("slot present at both ends");
                order.push((y, p));
            }
            let next = edge_no.len();
            slots.push(Token::Edge(*edge_no.entry(s.edge).or_insert(next)));
        }
        out.push(PatternVertex { color: g.vertex(v).color, boundary, slots });
        k += 1;
    }
    Some((order.into_iter().map(|x| x.0).collect(), out, stubs))
}

/// Does `p` occur at `b_i, b_{i+1}`?
pub fn matches_at(g: &HourglassGraph, p: &Pattern, i: usize) -> bool {
    if g.n() < 2 {
        return false;
    }
    let got = traverse(g, i, |k, j, _| {
        let v = p.vertices.get(k)?;
        Some(matches!(v.slots.get(j)?, Token::Stub | Token::HourglassStub))
    });
    let Some((verts, code, stubs)) = got else { return false };
    if code != p.vertices {
        return false;
    }
    // Crossed edges must really leave the region.
    let inside: HashSet<VertexId> = verts.into_iter().collect();
    stubs.iter().all(|s| {
        let e = g.edge(s.edge);
        !(inside.contains(&e.black) && inside.contains(&e.white))
    })
}

/// The pattern cut off by a region containing `b_i, b_{i+1}`.
pub fn pattern_of_region(g: &HourglassGraph, i: usize, region: &HashSet<VertexId>, name: &str) -> Option<Pattern> {
    let (_, vertices, _) = traverse(g, i, |_, _, s| {
        let e = g.edge(s.edge);
        Some(!(region.contains(&e.black) && region.contains(&e.white)))
    })?;
    Some(Pattern { name: name.to_string(), vertices })
}

/// Smallest region next to `b_i, b_{i+1}` cut off by an arc of at most
/// `max_cross` crossings whose weight does not dominate the pair weight.
/// Exhaustive over simple dual paths; meant for small graphs.
pub fn local_witness(g: &HourglassGraph, i: usize, max_cross: usize) -> Option<(Vec<Crossing>, HashSet<VertexId>)> {
    let n = g.n();
    if n < 2 {
        return None;
    }
    let r = g.rank();
    let ty = g.type_of();
    let mut target = vec![0u32; r.usize() - 1];
    target[ty[i] as usize - 1] += 1;
    target[ty[(i + 1) % n] as usize - 1] += 1;
    let faces = Faces::of(g);
    let arcs = dual_arcs(g, &faces);
    let start = faces.boundary_face((i + n - 1) % n);
    let end = faces.boundary_face((i + 1) % n);
    let (left, right) = (g.boundary()[i], g.boundary()[(i + 1) % n]);
    let mut best: Option<(Vec<Crossing>, HashSet<VertexId>)> = None;
    let mut path = Vec::new();
    let mut visited = vec![false; faces.count()];
    visited[start] = true;
    let mut consider = |path: &[Crossing]| {
        let w = {
            let mut w = vec![0u32; r.usize() - 1];
            for x in path {
                w[crossing_weight(g, x.edge, x.clasp_side) as usize - 1] += 1;
            }
            w
        };
        if dominates(r.get(), &w, &target) {
            return;
        }
        let cut: HashSet<usize> = path.iter().map(|x| x.edge).collect();
        let region = flood(g, &[left, right], &cut);
        if region.iter().any(|&v| g.vertex(v).boundary && v != left && v != right) {
            return;
        }
        let better = match &best {
            None => true,
            Some((bp, br)) => (region.len(), path.len()) < (br.len(), bp.len()),
        };
        if better {
            best = Some((path.to_vec(), region));
        }
    };
    dfs(&arcs, start, end, max_cross, &mut visited, &mut path, &mut consider);
    best
}

fn dfs(
    arcs: &[(usize, usize, Crossing)],
    f: usize,
    end: usize,
    left: usize,
    visited: &mut Vec<bool>,
    path: &mut Vec<Crossing>,
    consider: &mut dyn FnMut(&[Crossing]),
) {
    if f == end {
        consider(path);
        return;
    }
    if left == 0 {
        return;
    }
    for &(from, to, x) in arcs {
        if from != f || visited[to] {
            continue;
        }
        visited[to] = true;
        path.push(x);
        dfs(arcs, to, end, left - 1, visited, path, consider);
        path.pop();
        visited[to] = false;
    }
}

fn flood(g: &HourglassGraph, seeds: &[VertexId], cut: &HashSet<usize>) -> HashSet<VertexId> {
    let mut seen: HashSet<VertexId> = seeds.iter().copied().collect();
    let mut stack = seeds.to_vec();
    while let Some(v) = stack.pop() {
        for e in g.incident_edges(v) {
            if cut.contains(&e) {
                continue;
            }
            let u = g.edge(e).other(v);
            if seen.insert(u) {
                stack.push(u);
            }
        }
    }
    seen
}

/// Recolor every type-2 boundary vertex black.
pub fn normalize_type2(g: &HourglassGraph) -> Result<HourglassGraph> {
    let mut h = g.clone();
    for i in 0..g.n() {
        let b = h.boundary()[i];
        if h.rotation(b).len() == 2 && h.vertex(b).color == Color::White {
            h = h.flip(i)?;
        }
    }
    Ok(h)
}

/// Some adjacent pair inside a clasp carries a bad configuration from the
/// bundled pattern set.
pub fn has_bad_config(g: &HourglassGraph, c: &ClaspSequence) -> Result<bool> {
    has_bad_config_with(g, c, &PatternSet::builtin(g.rank())?)
}

pub fn has_bad_config_with(g: &HourglassGraph, c: &ClaspSequence, set: &PatternSet) -> Result<bool> {
    if !c.is_sorted() {
        return Err(Error::UnsortedClasp);
    }
    if c.type_of() != g.type_of().as_slice() {
        return Err(Error::ClaspMismatch(format!("clasp type {:?} vs web type {:?}", c.type_of(), g.type_of())));
    }
    let h = normalize_type2(g)?;
    for range in c.intervals() {
        for i in range.start..range.end.saturating_sub(1) {
            if set.find_at(&h, i).is_some() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
