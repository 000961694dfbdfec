//! Swapping two adjacent boundary conditions on move classes, and sorting
//! every clasp by repeated swaps.
//!
//! Rank 4 works on symmetrized six-vertex configurations of the oscillized
//! web: find a special representative near the pair, apply the local rule,
//! convert back. A type-2 member is split into two type-1 vertices first
//! and merged again at the end. Rank 3 adds or deletes an H.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::clasp::bad::normalize_type2;
use crate::clasp::ClaspSequence;
use crate::error::{Error, Result};
use crate::hpg::{Color, HourglassGraph, MoveKind};
use crate::sixvertex::{Arrow, SixVertexConfig, Trip2};

type Fingerprint = Vec<Vec<Vec<usize>>>;

/// A move-equivalence class: a contracted top representative plus its trip
/// endpoint data, which decides equality.
#[derive(Debug, Clone)]
pub struct MoveClass {
    graph: HourglassGraph,
    ty: Vec<u8>,
    fingerprint: Fingerprint,
}

impl MoveClass {
    pub fn of(g: &HourglassGraph, budget: usize) -> Result<MoveClass> {
        let graph = contract_all(g)?.top_representative(budget)?;
        let fingerprint = graph.trips()?.fingerprint();
        Ok(MoveClass { ty: graph.type_of(), graph, fingerprint })
    }

    pub fn graph(&self) -> &HourglassGraph {
        &self.graph
    }

    pub fn type_of(&self) -> &[u8] {
        &self.ty
    }

    pub fn fingerprint(&self) -> &Fingerprint {
        &self.fingerprint
    }
}

impl PartialEq for MoveClass {
    fn eq(&self, other: &Self) -> bool {
        self.ty == other.ty && self.fingerprint == other.fingerprint
    }
}

impl Eq for MoveClass {}

impl std::hash::Hash for MoveClass {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ty.hash(state);
        self.fingerprint.hash(state);
    }
}

/// Local shape of a special representative at the swapped pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Special {
    /// The two boundary vertices share an edge.
    Edge,
    /// They share a neighbour, where their strands cross.
    CommonNeighbor,
    /// Their strands are disjoint and joined by a ladder with every rung
    /// oriented from the first strand to the second.
    OrientedLadder,
    /// The path through both neighbours alternates in orientation.
    AlternatingPath,
}

impl fmt::Display for Special {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Special::Edge => "S0",
            Special::CommonNeighbor => "S1",
            Special::OrientedLadder => "S2",
            Special::AlternatingPath => "S3",
        };
        f.write_str(s)
    }
}

/// One local step performed by a swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SwapStep {
    Oscillating(Special),
    /// The strand from the simple vertex returns next to it; reverse it.
    StrandReversal,
    HAdded,
    HDeleted,
    EdgeRecolored,
}

impl fmt::Display for SwapStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SwapStep::Oscillating(s) => write!(f, "{s}"),
            SwapStep::StrandReversal => f.write_str("reverse"),
            SwapStep::HAdded => f.write_str("add-H"),
            SwapStep::HDeleted => f.write_str("delete-H"),
            SwapStep::EdgeRecolored => f.write_str("recolor"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Swapped {
    pub class: MoveClass,
    pub steps: Vec<SwapStep>,
}

/// Exchange the boundary conditions at `b_i` and `b_{i+1}` (0-based, the
/// pair wraps at `n - 1`). `budget` bounds every representative search.
pub fn swap_adjacent(g: &HourglassGraph, i: usize, budget: usize) -> Result<Swapped> {
    let n = g.n();
    if n < 2 || i >= n {
        return Err(Error::Position { pos: i + 1, len: n });
    }
    let ty = g.type_of();
    if ty[i] == ty[(i + 1) % n] {
        return Err(Error::Swap(format!("b_{} and b_{} carry the same condition {}", i + 1, (i + 1) % n + 1, ty[i])));
    }
    let h = g.rotate_boundary(i);
    let (out, steps) = match g.rank().get() {
        4 => swap_rank4(&h, budget)?,
        3 => swap_rank3(&h)?,
        r => return Err(Error::Swap(format!("no swap at rank {r}: all conditions agree"))),
    };
    let back = out.rotate_boundary(n - i % n);
    Ok(Swapped { class: MoveClass::of(&back, budget)?, steps })
}

/// Sort every clasp weakly increasing by adjacent swaps inside it. Returns
/// the image class, the sorted clasp sequence and the swapped positions.
pub fn sort_boundary(
    g: &HourglassGraph,
    c: &ClaspSequence,
    budget: usize,
) -> Result<(MoveClass, ClaspSequence, Vec<usize>)> {
    if c.type_of() != g.type_of().as_slice() {
        return Err(Error::ClaspMismatch(format!("clasp type {:?} vs web type {:?}", c.type_of(), g.type_of())));
    }
    let mut cur = MoveClass::of(g, budget)?;
    let mut log = Vec::new();
    for range in c.intervals() {
        loop {
            let ty = cur.type_of().to_vec();
            let Some(j) = (range.start..range.end.saturating_sub(1)).find(|&j| ty[j] > ty[j + 1]) else { break };
            cur = swap_adjacent(cur.graph(), j, budget)?.class;
            log.push(j);
        }
    }
    let sorted = ClaspSequence::new(cur.type_of().to_vec(), c.sizes().to_vec())?;
    Ok((cur, sorted, log))
}

/// Apply contraction moves until none is left.
pub fn contract_all(g: &HourglassGraph) -> Result<HourglassGraph> {
    let mut g = g.clone();
    while let Some(mv) = g.applicable_moves().into_iter().find(|m| m.kind() == MoveKind::Contract) {
        g = g.apply_move(mv)?;
    }
    Ok(g)
}

fn swap_rank4(g: &HourglassGraph, budget: usize) -> Result<(HourglassGraph, Vec<SwapStep>)> {
    let g = normalize_type2(g)?;
    let ty = g.type_of();
    if (ty[0] == 1 || ty[1] == 1) && (ty[0] == 2 || ty[1] == 2) {
        // Conjugate by color inversion: (2,1) and (1,2) become (2,3), (3,2).
        let inv = normalize_type2(&g.invert_colors())?;
        let (out, steps) = swap_rank4(&inv, budget)?;
        return Ok((normalize_type2(&out.invert_colors())?, steps));
    }
    let osc = g.oscillize();
    let map = osc.boundary_map;
    let d = SixVertexConfig::from_web(&contract_all(&osc.graph)?)?;
    let mut pairs: Vec<usize> = map.iter().skip(2).filter(|m| m.len() == 2).map(|m| m[0]).collect();
    let mut steps = Vec::new();
    let d = match (ty[0], ty[1]) {
        (2, _) => {
            // Positions 0,1 are the split vertex, 2 the simple one.
            let s = &d.trip2_strands()[2];
            let out = if s.end == 0 {
                steps.push(SwapStep::StrandReversal);
                reverse_strand(&d, s)?
            } else {
                let (d1, k1) = osc_swap(&d, 1, budget)?;
                let (d2, k2) = osc_swap(&d1, 0, budget)?;
                steps.extend([SwapStep::Oscillating(k1), SwapStep::Oscillating(k2)]);
                d2
            };
            pairs.push(1);
            out
        }
        (_, 2) => {
            let s = &d.trip2_strands()[0];
            let out = if s.end == 2 {
                steps.push(SwapStep::StrandReversal);
                reverse_strand(&d, s)?
            } else {
                let (d1, k1) = osc_swap(&d, 0, budget)?;
                let (d2, k2) = osc_swap(&d1, 1, budget)?;
                steps.extend([SwapStep::Oscillating(k1), SwapStep::Oscillating(k2)]);
                d2
            };
            pairs.push(0);
            out
        }
        _ => {
            let (d1, k) = osc_swap(&d, 0, budget)?;
            steps.push(SwapStep::Oscillating(k));
            d1
        }
    };
    pairs.sort_unstable();
    let d = find_mergeable(&d, &pairs, budget)?;
    let w = d.to_web()?.deoscillize(&pairs)?;
    Ok((contract_all(&w)?, steps))
}

/// Reverse every edge along a strand.
fn reverse_strand(d: &SixVertexConfig, s: &Trip2) -> Result<SixVertexConfig> {
    let mut p = Parts::of(d);
    for &e in &s.edges {
        let a = p.edges[e];
        p.edges[e] = Arrow { tail: a.head, head: a.tail };
    }
    p.build(&[], &[])
}

/// Oscillating swap at boundary positions `p, p+1` of a configuration.
pub fn osc_swap(d: &SixVertexConfig, p: usize, budget: usize) -> Result<(SixVertexConfig, Special)> {
    let n = d.n();
    let ty = d.type_of();
    if ty[p] == ty[(p + 1) % n] {
        return Err(Error::Swap(format!("positions {} and {} agree", p + 1, (p + 1) % n + 1)));
    }
    let (rep, kind) = find_special(d, p, budget)?;
    Ok((tilde_swap(&rep, p, kind)?, kind))
}

/// Breadth-first search of the move class for a special representative.
pub fn find_special(d: &SixVertexConfig, p: usize, budget: usize) -> Result<(SixVertexConfig, Special)> {
    bfs(d, budget, |c| special_kind(c, p).map(|k| (c.clone(), k)))
}

fn find_mergeable(d: &SixVertexConfig, pairs: &[usize], budget: usize) -> Result<SixVertexConfig> {
    bfs(d, budget, |c| pairs.iter().all(|&p| mergeable(c, p)).then(|| c.clone()))
}

fn bfs<T>(d: &SixVertexConfig, budget: usize, mut hit: impl FnMut(&SixVertexConfig) -> Option<T>) -> Result<T> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(d.canonical_key());
    queue.push_back(d.clone());
    while let Some(c) = queue.pop_front() {
        if let Some(t) = hit(&c) {
            return Ok(t);
        }
        for mv in c.moves() {
            let nxt = c.apply(&mv)?;
            if seen.insert(nxt.canonical_key()) {
                if seen.len() > budget {
                    return Err(Error::Budget(budget));
                }
                queue.push_back(nxt);
            }
        }
    }
    Err(Error::Swap("no representative of the required shape in the move class".into()))
}

/// Both boundary edges at `p, p+1` point into one shared neighbour.
fn mergeable(d: &SixVertexConfig, p: usize) -> bool {
    let (b1, b2) = (d.boundary()[p], d.boundary()[p + 1]);
    let (e1, e2) = (d.rotation(b1)[0], d.rotation(b2)[0]);
    let (a1, a2) = (d.edges()[e1], d.edges()[e2]);
    a1.tail == b1 && a2.tail == b2 && a1.head == a2.head && !d.is_boundary(a1.head)
}

fn neighbor(d: &SixVertexConfig, b: usize) -> (usize, usize) {
    let e = d.rotation(b)[0];
    (e, d.edges()[e].other(b))
}

fn edge_between(d: &SixVertexConfig, u: usize, v: usize) -> Option<usize> {
    d.rotation(u).iter().copied().find(|&e| d.edges()[e].other(u) == v)
}

/// Which special shape, if any, `d` has at positions `p, p+1`.
pub fn special_kind(d: &SixVertexConfig, p: usize) -> Option<Special> {
    let n = d.n();
    let q = (p + 1) % n;
    let (b1, b2) = (d.boundary()[p], d.boundary()[q]);
    let (e1, n1) = neighbor(d, b1);
    let (e2, n2) = neighbor(d, b2);
    let strands = d.trip2_strands();
    let (l1, l2) = (&strands[p], &strands[q]);
    if l1.end == q {
        return (n1 == b2).then_some(Special::Edge);
    }
    let inner = |s: &Trip2| -> HashSet<usize> { s.vertices[1..s.vertices.len() - 1].iter().copied().collect() };
    let (v1, v2) = (inner(l1), inner(l2));
    if !v1.is_disjoint(&v2) {
        return (n1 == n2).then_some(Special::CommonNeighbor);
    }
    // Forward orientation: the first strand leaves the boundary.
    let forward = d.edges()[e1].tail == b1;
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); d.num_vertices()];
    for (k, s) in strands.iter().enumerate().filter(|(_, s)| s.start < s.end) {
        for &v in &s.vertices[1..s.vertices.len() - 1] {
            through[v].push(k);
        }
    }
    let id = |s: &Trip2| strands.iter().position(|t| t.start == s.start.min(s.end) && t.end == s.start.max(s.end));
    let (id1, id2) = (id(l1), id(l2));
    let other = |v: usize, own: Option<usize>| through[v].iter().copied().find(|&k| Some(k) != own);
    let mut crossing: HashSet<usize> = v1.iter().filter_map(|&v| other(v, id1)).collect();
    let on2: HashSet<usize> = v2.iter().filter_map(|&v| other(v, id2)).collect();
    crossing.retain(|k| on2.contains(k));
    let k = crossing.len();
    let mut ladder = true;
    let mut oriented = true;
    for j in 0..k {
        let (Some(&u1), Some(&u2)) = (l1.vertices.get(j + 1), l2.vertices.get(j + 1)) else {
            ladder = false;
            break;
        };
        let s = other(u1, id1);
        if s.is_none() || s != other(u2, id2) || !crossing.contains(&s.expect("checked")) {
            ladder = false;
            break;
        }
        match edge_between(d, u1, u2) {
            Some(r) => {
                if (d.edges()[r].tail == u1) != forward {
                    oriented = false;
                }
            }
            None => {
                ladder = false;
                break;
            }
        }
    }
    if ladder && oriented {
        return Some(Special::OrientedLadder);
    }
    if d.is_boundary(n1) || d.is_boundary(n2) {
        return None;
    }
    let mid = edge_between(d, n1, n2)?;
    let alternating = (d.edges()[e1].tail == b1) == (d.edges()[mid].head == n1)
        && (d.edges()[e2].tail == b2) == (d.edges()[mid].head == n2);
    alternating.then_some(Special::AlternatingPath)
}

/// The local rule on a special representative.
pub fn tilde_swap(d: &SixVertexConfig, p: usize, kind: Special) -> Result<SixVertexConfig> {
    let n = d.n();
    let (b1, b2) = (d.boundary()[p], d.boundary()[(p + 1) % n]);
    let (e1, n1) = neighbor(d, b1);
    let (e2, n2) = neighbor(d, b2);
    let mut parts = Parts::of(d);
    let flip = |parts: &mut Parts, e: usize| {
        let a = parts.edges[e];
        parts.edges[e] = Arrow { tail: a.head, head: a.tail };
    };
    match kind {
        Special::Edge => {
            flip(&mut parts, e1);
            parts.build(&[], &[])
        }
        Special::AlternatingPath => {
            let mid = edge_between(d, n1, n2).ok_or_else(|| Error::Swap("alternating path lost its middle".into()))?;
            for e in [e1, mid, e2] {
                flip(&mut parts, e);
            }
            parts.build(&[], &[])
        }
        Special::CommonNeighbor => {
            let q = n1;
            let list = d.rotation(q);
            let i1 = list.iter().position(|&e| e == e1).expect("incident");
            if list[(i1 + 1) % 4] != e2 {
                return Err(Error::Swap("common neighbour sees the pair out of order".into()));
            }
            let (x, y) = (list[(i1 + 2) % 4], list[(i1 + 3) % 4]);
            parts.reattach(y, q, b1);
            parts.reattach(x, q, b2);
            parts.rot[b1] = vec![y];
            parts.rot[b2] = vec![x];
            parts.build(&[q], &[e1, e2])
        }
        Special::OrientedLadder => {
            let q = parts.rot.len();
            parts.rot.push(Vec::new());
            parts.is_boundary.push(false);
            let toward = |a: Arrow, from: usize, new_from: usize, new_to: usize| {
                if a.tail == from {
                    Arrow { tail: new_from, head: new_to }
                } else {
                    Arrow { tail: new_to, head: new_from }
                }
            };
            let g1 = parts.edges.len();
            parts.edges.push(toward(d.edges()[e2], b2, b1, q));
            let g2 = parts.edges.len();
            parts.edges.push(toward(d.edges()[e1], b1, b2, q));
            parts.reattach(e1, b1, q);
            parts.reattach(e2, b2, q);
            parts.rot[b1] = vec![g1];
            parts.rot[b2] = vec![g2];
            parts.rot[q] = vec![g1, g2, e2, e1];
            parts.build(&[], &[])
        }
    }
}

/// Mutable copy of a configuration.
struct Parts {
    is_boundary: Vec<bool>,
    edges: Vec<Arrow>,
    rot: Vec<Vec<usize>>,
    boundary: Vec<usize>,
}

impl Parts {
    fn of(d: &SixVertexConfig) -> Parts {
        let nv = d.num_vertices();
        Parts {
            is_boundary: (0..nv).map(|v| d.is_boundary(v)).collect(),
            edges: d.edges().to_vec(),
            rot: (0..nv).map(|v| d.rotation(v).to_vec()).collect(),
            boundary: d.boundary().to_vec(),
        }
    }

    fn reattach(&mut self, e: usize, from: usize, to: usize) {
        let a = &mut self.edges[e];
        if a.tail == from {
            a.tail = to;
        } else if a.head == from {
            a.head = to;
        }
    }

    fn build(self, dead_v: &[usize], dead_e: &[usize]) -> Result<SixVertexConfig> {
        let mut vmap = vec![usize::MAX; self.rot.len()];
        let mut next = 0;
        for (v, slot) in vmap.iter_mut().enumerate() {
            if !dead_v.contains(&v) {
                *slot = next;
                next += 1;
            }
        }
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut next = 0;
        for (e, slot) in emap.iter_mut().enumerate() {
            if !dead_e.contains(&e) {
                *slot = next;
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(e, _)| !dead_e.contains(e))
            .map(|(_, a)| Arrow { tail: vmap[a.tail], head: vmap[a.head] })
            .collect();
        let rot = self
            .rot
            .iter()
            .enumerate()
            .filter(|(v, _)| !dead_v.contains(v))
            .map(|(_, l)| l.iter().map(|&e| emap[e]).collect())
            .collect();
        let is_boundary =
            self.is_boundary.iter().enumerate().filter(|(v, _)| !dead_v.contains(v)).map(|(_, &b)| b).collect();
        let boundary = self.boundary.iter().map(|&b| vmap[b]).collect();
        SixVertexConfig::new(is_boundary, edges, rot, boundary)
    }
}

/// Rank 3: delete the H joining `b_1, b_2` if there is one, otherwise add
/// one. Directly joined vertices just trade colours.
fn swap_rank3(g: &HourglassGraph) -> Result<(HourglassGraph, Vec<SwapStep>)> {
    let mut w = WebParts::of(g);
    let (b1, b2) = (g.boundary()[0], g.boundary()[1]);
    let e1 = g.rotation(b1)[0].edge;
    let e2 = g.rotation(b2)[0].edge;
    let (n1, n2) = (g.edge(e1).other(b1), g.edge(e2).other(b2));
    w.colors[b1].0 = w.colors[b1].0.other();
    w.colors[b2].0 = w.colors[b2].0.other();
    if n1 == b2 {
        return Ok((w.build(g, &[], &[])?, vec![SwapStep::EdgeRecolored]));
    }
    let h = g
        .rotation(n1)
        .iter()
        .map(|s| s.edge)
        .find(|&e| g.edge(e).other(n1) == n2)
        .filter(|_| !g.vertex(n1).boundary && !g.vertex(n2).boundary && g.degree(n1) == 3 && g.degree(n2) == 3);
    if let Some(mid) = h {
        let third = |v: usize, skip: [usize; 2]| g.rotation(v).iter().map(|s| s.edge).find(|e| !skip.contains(e));
        let x = third(n1, [e1, mid]).ok_or_else(|| Error::Swap("H leg missing".into()))?;
        let y = third(n2, [e2, mid]).ok_or_else(|| Error::Swap("H leg missing".into()))?;
        w.reattach(x, n1, b1);
        w.reattach(y, n2, b2);
        w.rots[b1] = vec![x];
        w.rots[b2] = vec![y];
        return Ok((w.build(g, &[n1, n2], &[e1, e2, mid])?, vec![SwapStep::HDeleted]));
    }
    let u = w.add_vertex(g.vertex(b1).color);
    let v = w.add_vertex(g.vertex(b2).color);
    w.reattach(e1, b1, u);
    w.reattach(e2, b2, v);
    let g1 = w.add_edge(b1, u);
    let g2 = w.add_edge(b2, v);
    let mid = w.add_edge(u, v);
    w.rots[b1] = vec![g1];
    w.rots[b2] = vec![g2];
    w.rots[u] = vec![g1, mid, e1];
    w.rots[v] = vec![g2, e2, mid];
    Ok((w.build(g, &[], &[])?, vec![SwapStep::HAdded]))
}

/// Mutable copy of a web as raw rotation lists.
struct WebParts {
    colors: Vec<(Color, bool)>,
    edges: Vec<(usize, usize, u8)>,
    rots: Vec<Vec<usize>>,
}

impl WebParts {
    fn of(g: &HourglassGraph) -> WebParts {
        WebParts {
            colors: g.vertices().iter().map(|v| (v.color, v.boundary)).collect(),
            edges: g.edges().iter().map(|e| (e.black, e.white, e.m)).collect(),
            rots: (0..g.vertices().len()).map(|v| g.rotation(v).iter().map(|s| s.edge).collect()).collect(),
        }
    }

    fn add_vertex(&mut self, c: Color) -> usize {
        self.colors.push((c, false));
        self.rots.push(Vec::new());
        self.colors.len() - 1
    }

    fn add_edge(&mut self, u: usize, v: usize) -> usize {
        self.edges.push((u, v, 1));
        self.edges.len() - 1
    }

    fn reattach(&mut self, e: usize, from: usize, to: usize) {
        let x = &mut self.edges[e];
        if x.0 == from {
            x.0 = to;
        } else if x.1 == from {
            x.1 = to;
        }
    }

    fn build(self, g: &HourglassGraph, dead_v: &[usize], dead_e: &[usize]) -> Result<HourglassGraph> {
        let keep_v: Vec<usize> = (0..self.colors.len()).filter(|v| !dead_v.contains(v)).collect();
        let keep_e: Vec<usize> = (0..self.edges.len()).filter(|e| !dead_e.contains(e)).collect();
        let mut vmap = vec![usize::MAX; self.colors.len()];
        for (k, &v) in keep_v.iter().enumerate() {
            vmap[v] = k;
        }
        let mut emap = vec![usize::MAX; self.edges.len()];
        for (k, &e) in keep_e.iter().enumerate() {
            emap[e] = k;
        }
        let colors: Vec<(Color, bool)> = keep_v.iter().map(|&v| self.colors[v]).collect();
        let edges: Vec<(usize, usize, u8)> =
            keep_e.iter().map(|&e| (vmap[self.edges[e].0], vmap[self.edges[e].1], self.edges[e].2)).collect();
        let rots: Vec<Vec<usize>> = keep_v.iter().map(|&v| self.rots[v].iter().map(|&e| emap[e]).collect()).collect();
        let boundary: Vec<usize> = g.boundary().iter().map(|&b| vmap[b]).collect();
        HourglassGraph::from_rotations(g.rank(), &colors, &edges, &rots, &boundary)
    }
}
