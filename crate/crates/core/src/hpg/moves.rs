//! Contraction, square and benzene moves.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::{Color, Dart, EdgeId, Faces, HourglassGraph, Slot, Vertex, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    Contract,
    Uncontract,
    Square,
    Benzene,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::Contract => "contract",
            MoveKind::Uncontract => "uncontract",
            MoveKind::Square => "square",
            MoveKind::Benzene => "benzene",
        })
    }
}

/// Where a move applies. Faces are indices into `Faces::of(g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    /// Merge the two hourglass neighbours of this vertex through it.
    Contract(VertexId),
    /// Split the vertex; the two slots starting at `offset` go to one half.
    Uncontract {
        vertex: VertexId,
        offset: usize,
    },
    Square(usize),
    Benzene(usize),
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::Contract(_) => MoveKind::Contract,
            Move::Uncontract { .. } => MoveKind::Uncontract,
            Move::Square(_) => MoveKind::Square,
            Move::Benzene(_) => MoveKind::Benzene,
        }
    }
}

/// Mutable working copy used while rewriting.
struct Draft {
    g: HourglassGraph,
    alive_v: Vec<bool>,
    alive_e: Vec<bool>,
}

impl Draft {
    fn new(g: &HourglassGraph) -> Draft {
        Draft { alive_v: vec![true; g.vertices.len()], alive_e: vec![true; g.edges.len()], g: g.clone() }
    }

    fn add_vertex(&mut self, color: Color) -> VertexId {
        self.g.vertices.push(Vertex { color, boundary: false });
        self.g.rot.push(Vec::new());
        self.alive_v.push(true);
        self.g.vertices.len() - 1
    }

    fn add_hourglass(&mut self, a: VertexId, b: VertexId) -> EdgeId {
        self.g.edges.push(super::Edge { black: a, white: b, m: 2 });
        self.alive_e.push(true);
        self.g.edges.len() - 1
    }

    /// Point edge `e`'s endpoint `from` at `to`.
    fn reattach(&mut self, e: EdgeId, from: VertexId, to: VertexId) {
        let ed = &mut self.g.edges[e];
        if ed.black == from {
            ed.black = to;
        } else if ed.white == from {
            ed.white = to;
        }
    }

    fn finish(mut self) -> Result<HourglassGraph> {
        for e in 0..self.g.edges.len() {
            let ed = self.g.edges[e];
            if self.g.vertices[ed.black].color != Color::Black {
                self.g.edges[e] = super::Edge { black: ed.white, white: ed.black, m: ed.m };
            }
        }
        let out = self.g.compact(&self.alive_v, &self.alive_e);
        out.validate().map_err(|e| Error::Move(format!("rewrite produced an invalid graph: {e}")))?;
        Ok(out)
    }
}

/// Rotation of `v` read cyclically from index `start`.
fn from(rot: &[Slot], start: usize) -> Vec<Slot> {
    (0..rot.len()).map(|j| rot[(start + j) % rot.len()]).collect()
}

/// The slots of `v` after its hourglass pair on edge `e`, in order.
fn others_after_pair(g: &HourglassGraph, v: VertexId, e: EdgeId) -> Option<Vec<Slot>> {
    let p = g.slot_index(v, Slot { edge: e, strand: 0 })?;
    Some(from(g.rotation(v), p).into_iter().skip(2).collect())
}

impl HourglassGraph {
    /// Hourglass edges at `v` whose other end is internal.
    fn internal_hourglasses(&self, v: VertexId) -> Vec<EdgeId> {
        self.incident_edges(v)
            .into_iter()
            .filter(|&e| self.edges[e].m == 2 && !self.vertices[self.edges[e].other(v)].boundary)
            .collect()
    }

    /// Is every internal hourglass chain of length one?
    pub fn is_contracted(&self) -> bool {
        (0..self.vertices.len()).all(|v| self.vertices[v].boundary || self.internal_hourglasses(v).len() < 2)
    }

    pub fn apply_move(&self, mv: Move) -> Result<HourglassGraph> {
        match mv {
            Move::Contract(v) => self.contract(v),
            Move::Uncontract { vertex, offset } => self.uncontract(vertex, offset),
            Move::Square(f) => self.square(&Faces::of(self), f),
            Move::Benzene(f) => self.benzene(&Faces::of(self), f),
        }
    }

    fn contract(&self, v: VertexId) -> Result<HourglassGraph> {
        let bad = || Error::Move(format!("vertex {v} is not between two internal hourglasses"));
        if v >= self.vertices.len() || self.vertices[v].boundary {
            return Err(bad());
        }
        let hs = self.incident_edges(v);
        if hs.len() != 2 || hs.iter().any(|&e| self.edges[e].m != 2) {
            return Err(bad());
        }
        let (u, w) = (self.edges[hs[0]].other(v), self.edges[hs[1]].other(v));
        if u == w || self.vertices[u].boundary || self.vertices[w].boundary {
            return Err(bad());
        }
        let mut d = Draft::new(self);
        let mut merged = others_after_pair(self, u, hs[0]).ok_or_else(bad)?;
        let tail = others_after_pair(self, w, hs[1]).ok_or_else(bad)?;
        for s in &tail {
            if s.strand == 0 {
                d.reattach(s.edge, w, u);
            }
        }
        merged.extend(tail);
        d.g.rot[u] = merged;
        d.alive_v[v] = false;
        d.alive_v[w] = false;
        d.alive_e[hs[0]] = false;
        d.alive_e[hs[1]] = false;
        d.finish()
    }

    fn uncontract(&self, u: VertexId, offset: usize) -> Result<HourglassGraph> {
        if u >= self.vertices.len() || self.vertices[u].boundary || self.rot[u].len() != 4 {
            return Err(Error::Move(format!("vertex {u} cannot be uncontracted")));
        }
        let list = from(&self.rot[u], offset);
        // The split must not cut an hourglass pair.
        if list[0].strand == 1 || list[2].strand == 1 {
            return Err(Error::Move(format!("split at offset {offset} cuts an hourglass at {u}")));
        }
        let color = self.vertices[u].color;
        let mut d = Draft::new(self);
        let v = d.add_vertex(color.other());
        let w = d.add_vertex(color);
        let hu = d.add_hourglass(u, v);
        let hw = d.add_hourglass(w, v);
        let pair = |e| [Slot { edge: e, strand: 0 }, Slot { edge: e, strand: 1 }];
        d.g.rot[u] = pair(hu).into_iter().chain(list[..2].iter().copied()).collect();
        d.g.rot[w] = pair(hw).into_iter().chain(list[2..].iter().copied()).collect();
        d.g.rot[v] = pair(hu).into_iter().chain(pair(hw)).collect();
        for s in &list[2..] {
            if s.strand == 0 {
                d.reattach(s.edge, u, w);
            }
        }
        d.finish()
    }

    /// Corners and face edges of an internal face with `len` graph edges.
    fn face_corners(&self, faces: &Faces, f: usize, len: usize) -> Option<Vec<(VertexId, Dart)>> {
        if f >= faces.count() {
            return None;
        }
        let darts = faces.darts(f);
        if darts.len() != len || darts.iter().any(|&d| faces.is_arc(d)) {
            return None;
        }
        let corners: Vec<(VertexId, Dart)> = darts.iter().map(|&d| (faces.tail(d), d)).collect();
        let distinct: HashSet<VertexId> = corners.iter().map(|c| c.0).collect();
        if distinct.len() != len || corners.iter().any(|c| self.vertices[c.0].boundary) {
            return None;
        }
        Some(corners)
    }

    pub fn is_square_face(&self, faces: &Faces, f: usize) -> bool {
        self.square_plan(faces, f).is_some()
    }

    pub fn is_benzene_face(&self, faces: &Faces, f: usize) -> bool {
        match self.face_corners(faces, f, 6) {
            None => false,
            Some(c) => {
                let ms: Vec<u8> = c.iter().map(|x| self.edges[x.1.aedge()].m).collect();
                (0..6).all(|i| ms[i] != ms[(i + 1) % 6]) && c.iter().all(|x| self.rot[x.0].len() == 4)
            }
        }
    }

    /// For each corner of a square face: `None` to split it, `Some(e)` to
    /// merge it along the internal hourglass `e`.
    fn square_plan(&self, faces: &Faces, f: usize) -> Option<Vec<(VertexId, EdgeId, EdgeId, Option<EdgeId>)>> {
        let corners = self.face_corners(faces, f, 4)?;
        if corners.iter().any(|c| self.edges[c.1.aedge()].m != 1) {
            return None;
        }
        let mut plan = Vec::new();
        for i in 0..4 {
            let (q, d) = corners[i];
            let e_next = d.aedge();
            let e_prev = corners[(i + 3) % 4].1.aedge();
            if self.rot[q].len() != 4 {
                return None;
            }
            let externals: Vec<EdgeId> =
                self.incident_edges(q).into_iter().filter(|&e| e != e_next && e != e_prev).collect();
            let action = match externals.as_slice() {
                [_, _] => None,
                [h] if self.edges[*h].m == 2 => {
                    if self.vertices[self.edges[*h].other(q)].boundary {
                        None
                    } else {
                        Some(*h)
                    }
                }
                _ => return None,
            };
            plan.push((q, e_next, e_prev, action));
        }
        Some(plan)
    }

    fn square(&self, faces: &Faces, f: usize) -> Result<HourglassGraph> {
        let plan = self.square_plan(faces, f).ok_or_else(|| Error::Move(format!("face {f} is not a square face")))?;
        let mut d = Draft::new(self);
        for (q, e_next, e_prev, action) in plan {
            let p = self.slot_index(q, Slot { edge: e_next, strand: 0 }).expect("face edge at corner");
            let list = from(&self.rot[q], p);
            debug_assert_eq!(list[1].edge, e_prev);
            match action {
                None => {
                    let q2 = d.add_vertex(self.vertices[q].color.other());
                    let h = d.add_hourglass(q2, q);
                    let pair = [Slot { edge: h, strand: 0 }, Slot { edge: h, strand: 1 }];
                    d.g.rot[q2] = pair.into_iter().chain(list[..2].iter().copied()).collect();
                    d.g.rot[q] = pair.into_iter().chain(list[2..].iter().copied()).collect();
                    d.reattach(e_next, q, q2);
                    d.reattach(e_prev, q, q2);
                }
                Some(h) => {
                    let u = self.edges[h].other(q);
                    let mine = others_after_pair(self, q, h).expect("hourglass at corner");
                    let pu = self.slot_index(u, Slot { edge: h, strand: 0 }).expect("hourglass at u");
                    let at_u = from(&self.rot[u], pu);
                    d.g.rot[u] = mine.into_iter().chain(at_u[2..].iter().copied()).collect();
                    d.reattach(e_next, q, u);
                    d.reattach(e_prev, q, u);
                    d.alive_v[q] = false;
                    d.alive_e[h] = false;
                }
            }
        }
        d.finish()
    }

    fn benzene(&self, faces: &Faces, f: usize) -> Result<HourglassGraph> {
        if !self.is_benzene_face(faces, f) {
            return Err(Error::Move(format!("face {f} is not a benzene face")));
        }
        let corners = self.face_corners(faces, f, 6).expect("checked");
        let face_edges: Vec<EdgeId> = corners.iter().map(|c| c.1.aedge()).collect();
        let mut d = Draft::new(self);
        for &e in &face_edges {
            d.g.edges[e].m = 3 - self.edges[e].m;
        }
        for &(q, _) in &corners {
            let mut out = Vec::new();
            for s in &self.rot[q] {
                if !face_edges.contains(&s.edge) {
                    out.push(*s);
                } else if s.strand == 0 {
                    out.push(Slot { edge: s.edge, strand: 0 });
                    if self.edges[s.edge].m == 1 {
                        out.push(Slot { edge: s.edge, strand: 1 });
                    }
                }
            }
            // Keep hourglass pairs contiguous for the validator.
            if out.len() > 1 && out[0].strand == 1 {
                out.rotate_left(1);
            }
            d.g.rot[q] = out;
        }
        d.finish()
    }

    /// Swap the colour of the type-2 boundary vertex `b_i` (0-based) by
    /// growing or removing one link of its hourglass chain. An involution.
    pub fn flip(&self, i: usize) -> Result<HourglassGraph> {
        if i >= self.n() || self.rot[self.boundary[i]].len() != 2 {
            return Err(Error::Move(format!("b_{} is not of type 2", i + 1)));
        }
        let b = self.boundary[i];
        let e = self.rot[b][0].edge;
        let v = self.edges[e].other(b);
        let mut d = Draft::new(self);
        let chain = !self.vertices[v].boundary
            && self.incident_edges(v).len() == 2
            && self.incident_edges(v).iter().all(|&x| self.edges[x].m == 2);
        let next = self.incident_edges(v).into_iter().find(|&x| x != e);
        match next {
            Some(f) if chain && !self.vertices[self.edges[f].other(v)].boundary => {
                d.reattach(f, v, b);
                d.g.rot[b] = vec![Slot { edge: f, strand: 0 }, Slot { edge: f, strand: 1 }];
                d.alive_v[v] = false;
                d.alive_e[e] = false;
            }
            _ => {
                let u = d.add_vertex(self.vertices[b].color);
                let h = d.add_hourglass(b, u);
                d.reattach(e, b, u);
                let pair = |x| [Slot { edge: x, strand: 0 }, Slot { edge: x, strand: 1 }];
                d.g.rot[u] = pair(h).into_iter().chain(pair(e)).collect();
                d.g.rot[b] = pair(h).to_vec();
            }
        }
        d.g.vertices[b].color = self.vertices[b].color.other();
        d.finish()
    }

    /// Every contraction, square and benzene move that applies.
    pub fn applicable_moves(&self) -> Vec<Move> {
        let faces = Faces::of(self);
        let mut out = Vec::new();
        for v in 0..self.vertices.len() {
            if !self.vertices[v].boundary && self.contract(v).is_ok() {
                out.push(Move::Contract(v));
            }
        }
        for f in 0..faces.count() {
            if self.is_square_face(&faces, f) {
                out.push(Move::Square(f));
            }
            if self.is_benzene_face(&faces, f) {
                out.push(Move::Benzene(f));
            }
        }
        out
    }

    /// Uncontractions at vertices with four simple slots.
    pub fn uncontraction_sites(&self) -> Vec<Move> {
        let mut out = Vec::new();
        for v in 0..self.vertices.len() {
            if !self.vertices[v].boundary && self.rot[v].len() == 4 {
                for offset in 0..2 {
                    if self.uncontract(v, offset).is_ok() {
                        out.push(Move::Uncontract { vertex: v, offset });
                    }
                }
            }
        }
        out
    }

    /// In every benzene face each hourglass edge is met white before black
    /// when walking the face clockwise.
    pub fn is_top(&self) -> bool {
        let faces = Faces::of(self);
        (0..faces.count())
            .filter(|&f| self.is_benzene_face(&faces, f))
            .all(|f| faces.darts(f).iter().filter(|d| self.edges[d.aedge()].m == 2).all(|d| !d.forward()))
    }

    /// Breadth-first over benzene moves to the first top graph.
    pub fn top_representative(&self, budget: usize) -> Result<HourglassGraph> {
        if self.is_top() {
            return Ok(self.clone());
        }
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.canonical_key());
        queue.push_back(self.clone());
        while let Some(g) = queue.pop_front() {
            let faces = Faces::of(&g);
            for f in 0..faces.count() {
                if !g.is_benzene_face(&faces, f) {
                    continue;
                }
                let h = g.benzene(&faces, f)?;
                if h.is_top() {
                    return Ok(h);
                }
                if seen.insert(h.canonical_key()) {
                    if seen.len() > budget {
                        return Err(Error::Budget(budget));
                    }
                    queue.push_back(h);
                }
            }
        }
        Err(Error::Move("no top graph reachable by benzene moves".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;

    #[test]
    fn uncontract_then_contract() {
        let g = epsilon();
        for mv in g.uncontraction_sites() {
            let h = g.apply_move(mv).unwrap();
            assert!(h.validate().is_ok());
            assert_eq!(h.trips().unwrap().fingerprint(), g.trips().unwrap().fingerprint());
            let back: Vec<HourglassGraph> = h
                .applicable_moves()
                .into_iter()
                .filter(|m| m.kind() == MoveKind::Contract)
                .map(|m| h.apply_move(m).unwrap())
                .collect();
            assert!(back.iter().any(|b| b.canonical_key() == g.canonical_key()));
        }
    }

    #[test]
    fn epsilon_is_top() {
        assert!(epsilon().is_top());
        assert_eq!(epsilon().top_representative(10).unwrap(), epsilon());
    }
}
