//! Symmetrized six-vertex configurations: directed planar graphs whose
//! internal vertices are sources, sinks, or transmitting vertices (two
//! adjacent ins, two adjacent outs).

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::hpg::{Color, HourglassGraph, Slot};
use crate::words::Rank;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Boundary,
    Source,
    Sink,
    Transmit,
    Invalid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub tail: VertexId,
    pub head: VertexId,
}

impl Arrow {
    pub fn other(&self, v: VertexId) -> VertexId {
        if v == self.tail {
            self.head
        } else {
            self.tail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SixVertexConfig {
    is_boundary: Vec<bool>,
    edges: Vec<Arrow>,
    rot: Vec<Vec<EdgeId>>,
    boundary: Vec<VertexId>,
}

/// A `trip_2` strand: vertices and edges walked straight through.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trip2 {
    pub start: usize,
    pub end: usize,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl SixVertexConfig {
    pub fn new(
        is_boundary: Vec<bool>,
        edges: Vec<Arrow>,
        rot: Vec<Vec<EdgeId>>,
        boundary: Vec<VertexId>,
    ) -> Result<SixVertexConfig> {
        let d = SixVertexConfig { is_boundary, edges, rot, boundary };
        d.validate()?;
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.boundary.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.rot.len()
    }

    pub fn edges(&self) -> &[Arrow] {
        &self.edges
    }

    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        &self.rot[v]
    }

    pub fn boundary(&self) -> &[VertexId] {
        &self.boundary
    }

    pub fn is_boundary(&self, v: VertexId) -> bool {
        self.is_boundary[v]
    }

    /// 1 where the boundary edge points into the disk, 3 otherwise.
    pub fn type_of(&self) -> Vec<u8> {
        self.boundary.iter().map(|&b| if self.edges[self.rot[b][0]].tail == b { 1 } else { 3 }).collect()
    }

    fn is_in(&self, v: VertexId, e: EdgeId) -> bool {
        self.edges[e].head == v
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        if self.is_boundary[v] {
            return VertexKind::Boundary;
        }
        let list = &self.rot[v];
        if list.len() != 4 {
            return VertexKind::Invalid;
        }
        let ins: Vec<bool> = list.iter().map(|&e| self.is_in(v, e)).collect();
        match ins.iter().filter(|&&x| x).count() {
            0 => VertexKind::Source,
            4 => VertexKind::Sink,
            2 if (0..4).any(|i| ins[i] && ins[(i + 1) % 4]) => VertexKind::Transmit,
            _ => VertexKind::Invalid,
        }
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let nv = self.rot.len();
        if self.is_boundary.len() != nv {
            out.push("one boundary flag per vertex required".into());
            return out;
        }
        let mut count: HashMap<(EdgeId, VertexId), usize> = HashMap::new();
        for (v, list) in self.rot.iter().enumerate() {
            for &e in list {
                match self.edges.get(e) {
                    Some(a) if a.tail == v || a.head == v => *count.entry((e, v)).or_default() += 1,
                    _ => out.push(format!("vertex {v} lists foreign edge {e}")),
                }
            }
        }
        for (e, a) in self.edges.iter().enumerate() {
            if a.tail == a.head {
                out.push(format!("edge {e} is a loop"));
            }
            for v in [a.tail, a.head] {
                if count.get(&(e, v)).copied().unwrap_or(0) != 1 {
                    out.push(format!("edge {e} not listed once at vertex {v}"));
                }
            }
        }
        for v in 0..nv {
            match self.kind(v) {
                VertexKind::Invalid => out.push(format!("vertex {v} is not a source, sink or transmitting vertex")),
                VertexKind::Boundary if self.rot[v].len() != 1 => {
                    out.push(format!("boundary vertex {v} has degree {}", self.rot[v].len()))
                }
                _ => {}
            }
        }
        let listed: HashSet<VertexId> = self.boundary.iter().copied().collect();
        for v in 0..nv {
            if self.is_boundary[v] != listed.contains(&v) {
                out.push(format!("boundary list disagrees with flag at vertex {v}"));
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Graph(v.join("; ")))
        }
    }

    /// `phi`: orient black to white and shrink every hourglass edge.
    pub fn from_web(w: &HourglassGraph) -> Result<SixVertexConfig> {
        if w.rank() != Rank::FOUR || !w.is_oscillating() || !w.is_contracted() {
            return Err(Error::Graph("phi needs a contracted rank-4 web of oscillating type".into()));
        }
        let nv = w.vertices().len();
        // Map each web vertex to a configuration vertex; hourglass pairs share.
        let mut rep: Vec<usize> = (0..nv).collect();
        let mut hg_of: Vec<Option<usize>> = vec![None; nv];
        for (e, ed) in w.edges().iter().enumerate() {
            if ed.m == 2 {
                rep[ed.white] = ed.black;
                hg_of[ed.black] = Some(e);
                hg_of[ed.white] = Some(e);
            }
        }
        let mut id = vec![usize::MAX; nv];
        let mut is_boundary = Vec::new();
        for v in 0..nv {
            if rep[v] == v {
                id[v] = is_boundary.len();
                is_boundary.push(w.vertex(v).boundary);
            }
        }
        let mut emap = vec![usize::MAX; w.edges().len()];
        let mut edges = Vec::new();
        for (e, ed) in w.edges().iter().enumerate() {
            if ed.m == 1 {
                emap[e] = edges.len();
                edges.push(Arrow { tail: id[rep[ed.black]], head: id[rep[ed.white]] });
            }
        }
        let mut rot = vec![Vec::new(); is_boundary.len()];
        for v in 0..nv {
            if rep[v] != v {
                continue;
            }
            let list: Vec<EdgeId> = match hg_of[v] {
                None => w.rotation(v).iter().map(|s| emap[s.edge]).collect(),
                Some(h) => {
                    let white = w.edge(h).white;
                    let mut l = after_pair(w.rotation(v), h);
                    l.extend(after_pair(w.rotation(white), h));
                    l.into_iter().map(|e| emap[e]).collect()
                }
            };
            rot[id[v]] = list;
        }
        let boundary = w.boundary().iter().map(|&b| id[b]).collect();
        SixVertexConfig::new(is_boundary, edges, rot, boundary)
    }

    /// `phi^{-1}`.
    pub fn to_web(&self) -> Result<HourglassGraph> {
        let nv = self.rot.len();
        let mut colors: Vec<(Color, bool)> = Vec::new();
        // Web vertex carrying the out-edges (black part) and the in-edges.
        let mut out_v = vec![0; nv];
        let mut in_v = vec![0; nv];
        let mut extra_edges: Vec<(usize, usize, u8)> = Vec::new();
        let mut rots: Vec<Vec<usize>> = Vec::new();
        let ne = self.edges.len();
        for v in 0..nv {
            match self.kind(v) {
                VertexKind::Boundary => {
                    let c = if self.edges[self.rot[v][0]].tail == v { Color::Black } else { Color::White };
                    out_v[v] = colors.len();
                    in_v[v] = colors.len();
                    colors.push((c, true));
                    rots.push(self.rot[v].clone());
                }
                VertexKind::Source | VertexKind::Sink => {
                    let c = if self.kind(v) == VertexKind::Source { Color::Black } else { Color::White };
                    out_v[v] = colors.len();
                    in_v[v] = colors.len();
                    colors.push((c, false));
                    rots.push(self.rot[v].clone());
                }
                VertexKind::Transmit => {
                    let list = &self.rot[v];
                    let k = (0..4)
                        .find(|&i| !self.is_in(v, list[i]) && !self.is_in(v, list[(i + 1) % 4]))
                        .expect("transmit has adjacent outs");
                    let l: Vec<EdgeId> = (0..4).map(|j| list[(k + j) % 4]).collect();
                    let h = ne + extra_edges.len();
                    let b = colors.len();
                    colors.push((Color::Black, false));
                    let wv = colors.len();
                    colors.push((Color::White, false));
                    extra_edges.push((b, wv, 2));
                    rots.push(vec![h, h, l[0], l[1]]);
                    rots.push(vec![h, h, l[2], l[3]]);
                    out_v[v] = b;
                    in_v[v] = wv;
                }
                VertexKind::Invalid => return Err(Error::Graph(format!("vertex {v} is invalid"))),
            }
        }
        let mut edges: Vec<(usize, usize, u8)> = self.edges.iter().map(|a| (out_v[a.tail], in_v[a.head], 1)).collect();
        edges.extend(extra_edges);
        let boundary: Vec<usize> = self.boundary.iter().map(|&b| out_v[b]).collect();
        HourglassGraph::from_rotations(Rank::FOUR, &colors, &edges, &rots, &boundary)
    }

    /// Walk straight across every internal vertex from each boundary vertex.
    pub fn trip2_strands(&self) -> Vec<Trip2> {
        let mut out = Vec::new();
        for (i, &b) in self.boundary.iter().enumerate() {
            let mut v = b;
            let mut e = self.rot[b][0];
            let mut vertices = vec![b];
            let mut edges = Vec::new();
            loop {
                edges.push(e);
                let u = self.edges[e].other(v);
                vertices.push(u);
                if self.is_boundary[u] {
                    let end = self.boundary.iter().position(|&x| x == u).expect("listed");
                    out.push(Trip2 { start: i, end, vertices, edges });
                    break;
                }
                let list = &self.rot[u];
                let p = list.iter().position(|&x| x == e).expect("incident");
                e = list[(p + 2) % list.len()];
                v = u;
                if edges.len() > 2 * self.edges.len() + 2 {
                    break;
                }
            }
        }
        out
    }

    /// One representative per unordered strand.
    fn distinct_strands(&self) -> Vec<Trip2> {
        self.trip2_strands().into_iter().filter(|s| s.start < s.end).collect()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::new();
        self.edges.iter().all(|a| a.tail != a.head && seen.insert((a.tail.min(a.head), a.tail.max(a.head))))
    }

    pub fn has_isolated_component(&self) -> bool {
        let nv = self.rot.len();
        let mut reach = vec![false; nv];
        let mut q: VecDeque<VertexId> = self.boundary.iter().copied().collect();
        for &b in &self.boundary {
            reach[b] = true;
        }
        while let Some(v) = q.pop_front() {
            for &e in &self.rot[v] {
                let u = self.edges[e].other(v);
                if !reach[u] {
                    reach[u] = true;
                    q.push_back(u);
                }
            }
        }
        reach.iter().any(|&x| !x)
    }

    fn interior(s: &Trip2) -> &[VertexId] {
        &s.vertices[1..s.vertices.len() - 1]
    }

    /// (P1): no strand revisits a vertex, no two strands meet twice.
    pub fn p1(&self) -> bool {
        let strands = self.distinct_strands();
        for s in &strands {
            let inner = Self::interior(s);
            let set: HashSet<_> = inner.iter().collect();
            if set.len() != inner.len() {
                return false;
            }
        }
        for a in 0..strands.len() {
            let sa: HashSet<_> = Self::interior(&strands[a]).iter().collect();
            for b in a + 1..strands.len() {
                if Self::interior(&strands[b]).iter().filter(|v| sa.contains(v)).count() > 1 {
                    return false;
                }
            }
        }
        true
    }

    fn crossing(&self, a: &Trip2, b: &Trip2) -> Option<VertexId> {
        let sa: HashSet<_> = Self::interior(a).iter().collect();
        Self::interior(b).iter().copied().find(|v| sa.contains(v))
    }

    /// Direction of travel along `s` from crossing `x` to crossing `y`:
    /// `Some(true)` if every edge is traversed tail to head, `Some(false)`
    /// if every edge is traversed backwards, `None` if mixed.
    fn segment_direction(&self, s: &Trip2, x: VertexId, y: VertexId) -> Option<bool> {
        let px = s.vertices.iter().position(|&v| v == x)?;
        let py = s.vertices.iter().position(|&v| v == y)?;
        let mut dirs = HashSet::new();
        if px < py {
            for i in px..py {
                dirs.insert(self.edges[s.edges[i]].tail == s.vertices[i]);
            }
        } else {
            for i in (py..px).rev() {
                dirs.insert(self.edges[s.edges[i]].tail == s.vertices[i + 1]);
            }
        }
        if dirs.len() == 1 {
            dirs.into_iter().next()
        } else {
            None
        }
    }

    /// (P2): every big triangle is cyclically oriented.
    pub fn p2(&self) -> bool {
        let strands = self.distinct_strands();
        let m = strands.len();
        for a in 0..m {
            for b in a + 1..m {
                let Some(xab) = self.crossing(&strands[a], &strands[b]) else { continue };
                for c in b + 1..m {
                    let (Some(xbc), Some(xac)) =
                        (self.crossing(&strands[b], &strands[c]), self.crossing(&strands[a], &strands[c]))
                    else {
                        continue;
                    };
                    let d1 = self.segment_direction(&strands[b], xab, xbc);
                    let d2 = self.segment_direction(&strands[c], xbc, xac);
                    let d3 = self.segment_direction(&strands[a], xac, xab);
                    match (d1, d2, d3) {
                        (Some(x), Some(y), Some(z)) if x == y && y == z => {}
                        _ => return false,
                    }
                }
            }
        }
        true
    }

    /// (P3): among any four strands some pair does not meet.
    pub fn p3(&self) -> bool {
        let strands = self.distinct_strands();
        let m = strands.len();
        let meets: Vec<Vec<bool>> = (0..m)
            .map(|a| (0..m).map(|b| a != b && self.crossing(&strands[a], &strands[b]).is_some()).collect())
            .collect();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    for d in c + 1..m {
                        let q = [a, b, c, d];
                        if q.iter().all(|&x| q.iter().all(|&y| x == y || meets[x][y])) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn is_well_oriented(&self) -> bool {
        self.is_simple() && !self.has_isolated_component() && self.p1() && self.p2()
    }

    /// Internal faces as vertex cycles, each with its edge cycle. A face is
    /// traced with its interior on the right.
    pub fn internal_faces(&self) -> Vec<(Vec<VertexId>, Vec<EdgeId>)> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for e in 0..self.edges.len() {
            for fwd in [true, false] {
                if seen.contains(&(e, fwd)) {
                    continue;
                }
                let mut verts = Vec::new();
                let mut es = Vec::new();
                let (mut cur, mut dir) = (e, fwd);
                let mut ok = true;
                loop {
                    if !seen.insert((cur, dir)) {
                        break;
                    }
                    let a = self.edges[cur];
                    let (t, h) = if dir { (a.tail, a.head) } else { (a.head, a.tail) };
                    verts.push(t);
                    es.push(cur);
                    if self.is_boundary[h] || self.is_boundary[t] {
                        ok = false;
                    }
                    let list = &self.rot[h];
                    let p = list.iter().position(|&x| x == cur).expect("incident");
                    let nxt = list[(p + list.len() - 1) % list.len()];
                    dir = self.edges[nxt].tail == h;
                    cur = nxt;
                    if es.len() > self.edges.len() * 2 {
                        ok = false;
                        break;
                    }
                }
                if ok && !es.is_empty() && cur == e && dir == fwd {
                    out.push((verts, es));
                }
            }
        }
        out
    }

    fn yb_sites(&self) -> Vec<(Vec<VertexId>, Vec<EdgeId>)> {
        self.internal_faces()
            .into_iter()
            .filter(|(vs, es)| {
                vs.len() == 3
                    && vs.iter().collect::<HashSet<_>>().len() == 3
                    && vs.iter().all(|&v| self.kind(v) == VertexKind::Transmit)
                    && {
                        // Cyclic orientation along the traced face.
                        let d: Vec<bool> = (0..3).map(|i| self.edges[es[i]].tail == vs[i]).collect();
                        d.iter().all(|&x| x == d[0])
                    }
            })
            .collect()
    }

    fn asm_sites(&self) -> Vec<(Vec<VertexId>, Vec<EdgeId>)> {
        self.internal_faces()
            .into_iter()
            .filter(|(vs, es)| {
                vs.len() == 4 && vs.iter().collect::<HashSet<_>>().len() == 4 && {
                    // Alternating: each corner sees both face edges in, or both out.
                    (0..4).all(|i| {
                        let v = vs[i];
                        self.is_in(v, es[i]) == self.is_in(v, es[(i + 3) % 4])
                    })
                }
            })
            .collect()
    }

    /// Applicable moves as (is_yang_baxter, face vertex set), deduplicated.
    pub fn moves(&self) -> Vec<SvMove> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for (vs, es) in self.yb_sites() {
            let mut key = vs.clone();
            key.sort_unstable();
            if seen.insert((true, key)) {
                out.push(SvMove::YangBaxter { corners: vs, edges: es });
            }
        }
        for (vs, es) in self.asm_sites() {
            let mut key = vs.clone();
            key.sort_unstable();
            if seen.insert((false, key)) {
                out.push(SvMove::Asm { corners: vs, edges: es });
            }
        }
        out
    }

    pub fn apply(&self, mv: &SvMove) -> Result<SixVertexConfig> {
        match mv {
            SvMove::Asm { edges, .. } => {
                let mut d = self.clone();
                for &e in edges {
                    let a = d.edges[e];
                    d.edges[e] = Arrow { tail: a.head, head: a.tail };
                }
                d.validate().map_err(|e| Error::Move(e.to_string()))?;
                Ok(d)
            }
            SvMove::YangBaxter { corners, edges } => self.yang_baxter(corners, edges),
        }
    }

    fn yang_baxter(&self, vs: &[VertexId], ts: &[EdgeId]) -> Result<SixVertexConfig> {
        // Faces are traced clockwise: ts[k] runs from vs[k] to vs[k+1] and
        // corner k reads [ext, ext, ts[k], ts[k-1]] clockwise.
        let mut ext = Vec::with_capacity(6);
        for k in 0..3 {
            let list = &self.rot[vs[k]];
            let p = list.iter().position(|&e| e == ts[k]).expect("incident");
            if list[(p + 1) % 4] != ts[(k + 2) % 3] {
                return Err(Error::Move("triangle corner rotation unexpected".into()));
            }
            ext.push(list[(p + 2) % 4]);
            ext.push(list[(p + 3) % 4]);
        }
        let mut d = self.clone();
        // New corner k sits on old edge ts[k] and takes ext[2k+1], ext[2k+2].
        for k in 0..3 {
            let (a, b) = (ext[2 * k + 1], ext[(2 * k + 2) % 6]);
            d.rot[vs[k]] = vec![a, b, ts[k], ts[(k + 2) % 3]];
            let arrow = &mut d.edges[b];
            let old = vs[(k + 1) % 3];
            if arrow.tail == old {
                arrow.tail = vs[k];
            } else if arrow.head == old {
                arrow.head = vs[k];
            }
        }
        let mut found = Vec::new();
        for mask in 0..8u8 {
            let mut t = d.clone();
            for k in 0..3 {
                let (x, y) = (vs[k], vs[(k + 1) % 3]);
                t.edges[ts[k]] =
                    if mask >> k & 1 == 1 { Arrow { tail: x, head: y } } else { Arrow { tail: y, head: x } };
            }
            if vs.iter().all(|&v| t.kind(v) == VertexKind::Transmit) && (mask == 0 || mask == 7) {
                found.push(t);
            }
        }
        match found.len() {
            1 => Ok(found.pop().expect("one")),
            0 => Err(Error::Move("no cyclic orientation after Yang-Baxter".into())),
            _ => Err(Error::Move("ambiguous Yang-Baxter orientation".into())),
        }
    }

    /// Renumbering-invariant key: BFS from the boundary, rotations read from
    /// the entry edge.
    pub fn canonical_key(&self) -> String {
        let nv = self.rot.len();
        let mut order = vec![usize::MAX; nv];
        let mut entry = vec![0usize; nv];
        let mut seq = Vec::new();
        let mut q = VecDeque::new();
        for &b in &self.boundary {
            order[b] = seq.len();
            seq.push(b);
            q.push_back(b);
        }
        while let Some(v) = q.pop_front() {
            let len = self.rot[v].len();
            for j in 0..len {
                let e = self.rot[v][(entry[v] + j) % len];
                let u = self.edges[e].other(v);
                if order[u] == usize::MAX {
                    order[u] = seq.len();
                    entry[u] = self.rot[u].iter().position(|&x| x == e).expect("incident");
                    seq.push(u);
                    q.push_back(u);
                }
            }
        }
        let mut out = format!("n{}|", self.n());
        for &v in &seq {
            let len = self.rot[v].len();
            for j in 0..len {
                let e = self.rot[v][(entry[v] + j) % len];
                let a = self.edges[e];
                let mark = if a.head == v { '<' } else { '>' };
                out.push_str(&format!("{}{mark},", order[a.other(v)]));
            }
            out.push(';');
        }
        out
    }

    /// Breadth-first closure under Yang-Baxter and ASM moves.
    pub fn move_class(&self, budget: usize) -> Result<Vec<SixVertexConfig>> {
        let mut seen = HashSet::new();
        let mut out = vec![self.clone()];
        seen.insert(self.canonical_key());
        let mut i = 0;
        while i < out.len() {
            let cur = out[i].clone();
            i += 1;
            for mv in cur.moves() {
                let nxt = cur.apply(&mv)?;
                if seen.insert(nxt.canonical_key()) {
                    if seen.len() > budget {
                        return Err(Error::Budget(budget));
                    }
                    out.push(nxt);
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SvMove {
    YangBaxter { corners: Vec<VertexId>, edges: Vec<EdgeId> },
    Asm { corners: Vec<VertexId>, edges: Vec<EdgeId> },
}

fn after_pair(rot: &[Slot], h: usize) -> Vec<usize> {
    let p = rot.iter().position(|s| s.edge == h && s.strand == 0).expect("hourglass listed");
    (2..rot.len()).map(|j| rot[(p + j) % rot.len()].edge).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn epsilon() -> HourglassGraph {
        let colors = [
            (Color::Black, true),
            (Color::Black, true),
            (Color::Black, true),
            (Color::Black, true),
            (Color::White, false),
        ];
        let edges = [(0, 4, 1), (1, 4, 1), (2, 4, 1), (3, 4, 1)];
        let rots = vec![vec![0], vec![1], vec![2], vec![3], vec![0, 1, 2, 3]];
        HourglassGraph::from_rotations(Rank::FOUR, &colors, &edges, &rots, &[0, 1, 2, 3]).unwrap()
    }

    #[test]
    fn phi_roundtrip_epsilon() {
        let w = epsilon();
        let d = SixVertexConfig::from_web(&w).unwrap();
        assert_eq!(d.kind(4), VertexKind::Sink);
        assert_eq!(d.type_of(), vec![1, 1, 1, 1]);
        assert!(d.is_well_oriented());
        assert_eq!(d.to_web().unwrap().canonical_key(), w.canonical_key());
        let ends: Vec<(usize, usize)> = d.trip2_strands().iter().map(|s| (s.start, s.end)).collect();
        assert_eq!(ends, vec![(0, 2), (1, 3), (2, 0), (3, 1)]);
    }
}
