//! Hourglass plabic graphs as planar combinatorial maps.
//!
//! Each vertex stores its incident half-edge slots in clockwise order. A
//! simple edge has one slot at each endpoint; an hourglass edge has two
//! adjacent slots, strand 0 immediately before strand 1 clockwise. Walking
//! along an hourglass keeps the strand index, which is exactly the twist.
//! Boundary vertices list their slots starting just after the boundary arc
//! towards the next boundary vertex.

mod faces;
mod io;
mod moves;
mod osc;
mod sep;
mod trips;

pub use faces::{Dart, Faces};
pub use moves::{Move, MoveKind};
pub use osc::Oscillization;
pub use sep::{LabelSet, Labeling};
pub use trips::{Step, Strand, TripMap};

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::words::Rank;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Black => "black",
            Color::White => "white",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub color: Color,
    pub boundary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub black: VertexId,
    pub white: VertexId,
    pub m: u8,
}

impl Edge {
    pub fn other(&self, v: VertexId) -> VertexId {
        if v == self.black {
            self.white
        } else {
            self.black
        }
    }
}

/// One half-edge slot in a rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub edge: EdgeId,
    pub strand: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HourglassGraph {
    r: Rank,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    rot: Vec<Vec<Slot>>,
    boundary: Vec<VertexId>,
}

impl HourglassGraph {
    /// Assemble a graph from raw parts and validate it.
    pub fn new(
        r: Rank,
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        rot: Vec<Vec<Slot>>,
        boundary: Vec<VertexId>,
    ) -> Result<HourglassGraph> {
        let g = HourglassGraph::from_parts(r, vertices, edges, rot, boundary);
        g.validate()?;
        Ok(g)
    }

    pub(crate) fn from_parts(
        r: Rank,
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        rot: Vec<Vec<Slot>>,
        boundary: Vec<VertexId>,
    ) -> HourglassGraph {
        HourglassGraph { r, vertices, edges, rot, boundary }
    }

    /// Build from an edge list where every rotation is given as a list of
    /// edge ids; hourglass edges are listed twice in a row.
    pub fn from_rotations(
        r: Rank,
        colors: &[(Color, bool)],
        edges: &[(VertexId, VertexId, u8)],
        rotations: &[Vec<EdgeId>],
        boundary: &[VertexId],
    ) -> Result<HourglassGraph> {
        let vertices: Vec<Vertex> = colors.iter().map(|&(color, boundary)| Vertex { color, boundary }).collect();
        let mut es = Vec::with_capacity(edges.len());
        for &(u, v, m) in edges {
            let (cu, cv) = match (vertices.get(u), vertices.get(v)) {
                (Some(a), Some(b)) => (a.color, b.color),
                _ => return Err(Error::Graph(format!("edge {u}-{v} has unknown endpoint"))),
            };
            if cu == cv {
                return Err(Error::Graph(format!("bipartite: edge {u}-{v} joins two {cu} vertices")));
            }
            let (black, white) = if cu == Color::Black { (u, v) } else { (v, u) };
            es.push(Edge { black, white, m });
        }
        if rotations.len() != vertices.len() {
            return Err(Error::Graph("one rotation per vertex required".into()));
        }
        let mut rot = Vec::with_capacity(vertices.len());
        for (v, list) in rotations.iter().enumerate() {
            rot.push(slots_from_edge_list(v, list, &es, vertices[v].boundary)?);
        }
        HourglassGraph::new(r, vertices, es, rot, boundary.to_vec())
    }

    pub fn rank(&self) -> Rank {
        self.r
    }

    pub fn n(&self) -> usize {
        self.boundary.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn rotation(&self, v: VertexId) -> &[Slot] {
        &self.rot[v]
    }

    pub fn boundary(&self) -> &[VertexId] {
        &self.boundary
    }

    pub fn vertex(&self, v: VertexId) -> Vertex {
        self.vertices[v]
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    /// Position of `v` among the boundary vertices, 0-based.
    pub fn boundary_index(&self, v: VertexId) -> Option<usize> {
        self.boundary.iter().position(|&b| b == v)
    }

    /// The unique edge at boundary vertex `i` (0-based).
    pub fn boundary_edge(&self, i: usize) -> EdgeId {
        self.rot[self.boundary[i]][0].edge
    }

    /// Degree counted with multiplicity.
    pub fn degree(&self, v: VertexId) -> usize {
        self.rot[v].len()
    }

    /// Distinct incident edges in clockwise order.
    pub fn incident_edges(&self, v: VertexId) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = Vec::new();
        for s in &self.rot[v] {
            if s.strand == 0 {
                out.push(s.edge);
            }
        }
        out
    }

    pub fn slot_index(&self, v: VertexId, slot: Slot) -> Option<usize> {
        self.rot[v].iter().position(|&s| s == slot)
    }

    /// Type entry of every boundary vertex.
    pub fn type_of(&self) -> Vec<u8> {
        let r = self.r.get();
        self.boundary
            .iter()
            .map(|&b| {
                let v = self.vertices[b];
                match (self.rot[b].len(), r, v.color) {
                    (2, 4, _) => 2,
                    (_, 2, _) => 1,
                    (_, _, Color::Black) => 1,
                    (_, _, Color::White) => r - 1,
                }
            })
            .collect()
    }

    pub fn is_oscillating(&self) -> bool {
        self.boundary.iter().all(|&b| self.rot[b].len() == 1)
    }

    pub fn has_hourglass(&self) -> bool {
        self.edges.iter().any(|e| e.m == 2)
    }

    /// Check every structural invariant, naming each violation.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let r = self.r.get() as usize;
        let nv = self.vertices.len();
        if self.rot.len() != nv {
            out.push("rotation: one rotation per vertex required".to_string());
            return out;
        }
        for (id, e) in self.edges.iter().enumerate() {
            if e.black >= nv || e.white >= nv {
                out.push(format!("edge {id}: endpoint out of range"));
                return out;
            }
            if self.vertices[e.black].color != Color::Black || self.vertices[e.white].color != Color::White {
                out.push(format!("bipartite: edge {id} does not join black to white"));
            }
            if e.m == 0 || e.m > 2 || (e.m == 2 && r != 4) {
                out.push(format!("multiplicity: edge {id} has m = {}", e.m));
            }
        }
        // Slot bookkeeping.
        let mut seen: BTreeMap<(EdgeId, u8, VertexId), usize> = BTreeMap::new();
        for (v, list) in self.rot.iter().enumerate() {
            for s in list {
                if s.edge >= self.edges.len() {
                    out.push(format!("rotation: vertex {v} lists unknown edge {}", s.edge));
                    return out;
                }
                let e = self.edges[s.edge];
                if e.black != v && e.white != v {
                    out.push(format!("rotation: vertex {v} lists non-incident edge {}", s.edge));
                }
                if s.strand >= e.m {
                    out.push(format!("rotation: edge {} strand {} exceeds multiplicity", s.edge, s.strand));
                }
                *seen.entry((s.edge, s.strand, v)).or_default() += 1;
            }
            // Hourglass slots adjacent, strand 0 first.
            let len = list.len();
            for (i, s) in list.iter().enumerate() {
                if self.edges.get(s.edge).map(|e| e.m) == Some(2) && s.strand == 0 {
                    let next =
                        if self.vertices[v].boundary { list.get(i + 1).copied() } else { Some(list[(i + 1) % len]) };
                    if next != Some(Slot { edge: s.edge, strand: 1 }) {
                        out.push(format!("rotation: hourglass {} not adjacent at vertex {v}", s.edge));
                    }
                }
            }
        }
        for (id, e) in self.edges.iter().enumerate() {
            for v in [e.black, e.white] {
                for k in 0..e.m {
                    if seen.get(&(id, k, v)).copied().unwrap_or(0) != 1 {
                        out.push(format!("rotation: edge {id} strand {k} not listed once at vertex {v}"));
                    }
                }
            }
        }
        // Degrees.
        for (v, vert) in self.vertices.iter().enumerate() {
            let deg = self.rot[v].len();
            let simple_deg = self.incident_edges(v).len();
            if vert.boundary {
                if simple_deg != 1 {
                    out.push(format!("boundary degree: vertex {v} has {simple_deg} incident edges"));
                }
            } else if r == 2 {
                if deg != 2 || vert.color != Color::White {
                    out.push(format!("internal degree: vertex {v} must be white of degree 2"));
                }
            } else if deg != r {
                out.push(format!("internal degree ≠ {r}: vertex {v} has degree {deg}"));
            }
        }
        if r == 2 && self.boundary.iter().any(|&b| self.vertices[b].color != Color::Black) {
            out.push("boundary color: rank 2 boundary vertices must be black".to_string());
        }
        // Boundary list.
        let mut listed = vec![false; nv];
        for &b in &self.boundary {
            if b >= nv || listed[b] {
                out.push(format!("boundary: vertex {b} repeated or out of range"));
                return out;
            }
            listed[b] = true;
            if !self.vertices[b].boundary {
                out.push(format!("boundary: vertex {b} listed but not flagged"));
            }
        }
        for (v, vert) in self.vertices.iter().enumerate() {
            if vert.boundary && !listed[v] {
                out.push(format!("boundary: vertex {v} flagged but not listed"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        // Connectivity to the boundary, then Euler's formula.
        if !self.vertices.is_empty() {
            let mut reach = vec![false; nv];
            let mut queue: VecDeque<VertexId> = self.boundary.iter().copied().collect();
            for &b in &self.boundary {
                reach[b] = true;
            }
            while let Some(v) = queue.pop_front() {
                for e in self.incident_edges(v) {
                    let u = self.edges[e].other(v);
                    if !reach[u] {
                        reach[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            if let Some(v) = reach.iter().position(|&x| !x) {
                out.push(format!("isolated component: vertex {v} not connected to the boundary"));
                return out;
            }
            let faces = Faces::of(self);
            let v = nv as i64;
            let e = (self.edges.len() + self.n()) as i64;
            let f = faces.count() as i64;
            if self.n() > 0 && v - e + f != 2 {
                out.push(format!("planarity: V - E + F = {} - {} + {} != 2", v, e, f));
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

    /// Drop vertices and edges not marked alive and renumber densely.
    pub(crate) fn compact(&self, vertex_alive: &[bool], edge_alive: &[bool]) -> HourglassGraph {
        let mut vmap = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (v, &a) in vertex_alive.iter().enumerate() {
            if a {
                vmap[v] = vertices.len();
                vertices.push(self.vertices[v]);
            }
        }
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (e, &a) in edge_alive.iter().enumerate() {
            if a {
                emap[e] = edges.len();
                let ed = self.edges[e];
                edges.push(Edge { black: vmap[ed.black], white: vmap[ed.white], m: ed.m });
            }
        }
        let rot = (0..self.vertices.len())
            .filter(|&v| vertex_alive[v])
            .map(|v| self.rot[v].iter().map(|s| Slot { edge: emap[s.edge], strand: s.strand }).collect())
            .collect();
        let boundary = self.boundary.iter().filter(|&&b| vertex_alive[b]).map(|&b| vmap[b]).collect();
        HourglassGraph { r: self.r, vertices, edges, rot, boundary }
    }

    /// A string invariant under renumbering of vertices and edges: vertices
    /// are discovered breadth-first from the boundary in order, and slots in
    /// rotation order.
    pub fn canonical_key(&self) -> String {
        let nv = self.vertices.len();
        let mut order = vec![usize::MAX; nv];
        // Rotation offset each vertex is read from: the slot it was reached by.
        let mut entry = vec![0usize; nv];
        let mut seq = Vec::new();
        let mut queue = VecDeque::new();
        for &b in &self.boundary {
            order[b] = seq.len();
            seq.push(b);
            queue.push_back(b);
        }
        while let Some(v) = queue.pop_front() {
            let len = self.rot[v].len();
            for j in 0..len {
                let s = self.rot[v][(entry[v] + j) % len];
                let u = self.edges[s.edge].other(v);
                if order[u] == usize::MAX {
                    order[u] = seq.len();
                    entry[u] = self.slot_index(u, s).unwrap_or(0);
                    seq.push(u);
                    queue.push_back(u);
                }
            }
        }
        let mut out = format!("r{} n{}|", self.r, self.n());
        for &v in &seq {
            let vert = self.vertices[v];
            out.push(if vert.color == Color::Black { 'B' } else { 'W' });
            let len = self.rot[v].len();
            for j in 0..len {
                let s = self.rot[v][(entry[v] + j) % len];
                out.push_str(&format!("{}.{},", order[self.edges[s.edge].other(v)], s.strand));
            }
            out.push(';');
        }
        out
    }

    /// Rotate the boundary labels so that old `b_{k+1}` becomes `b_1`.
    pub fn rotate_boundary(&self, k: usize) -> HourglassGraph {
        let mut g = self.clone();
        if !g.boundary.is_empty() {
            let k = k % g.boundary.len();
            g.boundary.rotate_left(k);
        }
        g
    }

    /// Swap colors of every vertex. Edges keep their endpoints; slots stay.
    pub fn invert_colors(&self) -> HourglassGraph {
        let mut g = self.clone();
        for v in &mut g.vertices {
            v.color = v.color.other();
        }
        for e in &mut g.edges {
            std::mem::swap(&mut e.black, &mut e.white);
        }
        g
    }
}

fn slots_from_edge_list(v: VertexId, list: &[EdgeId], edges: &[Edge], boundary: bool) -> Result<Vec<Slot>> {
    let mut out = Vec::with_capacity(list.len());
    let mut i = 0;
    let len = list.len();
    // For internal vertices an hourglass may straddle the list ends.
    let mut wrap_start = false;
    if !boundary && len >= 2 {
        let (first, last) = (list[0], list[len - 1]);
        if first == last && edges.get(first).map(|e| e.m) == Some(2) && (len < 3 || list[1] != first) {
            wrap_start = true;
        }
    }
    while i < len {
        let e = list[i];
        let m = edges.get(e).ok_or_else(|| Error::Graph(format!("vertex {v}: unknown edge {e}")))?.m;
        if m == 2 {
            if wrap_start && i == 0 {
                out.push(Slot { edge: e, strand: 1 });
                i += 1;
                continue;
            }
            if wrap_start && i == len - 1 {
                out.push(Slot { edge: e, strand: 0 });
                i += 1;
                continue;
            }
            if i + 1 < len && list[i + 1] == e {
                out.push(Slot { edge: e, strand: 0 });
                out.push(Slot { edge: e, strand: 1 });
                i += 2;
                continue;
            }
            return Err(Error::Graph(format!("vertex {v}: hourglass {e} must be listed twice in a row")));
        }
        out.push(Slot { edge: e, strand: 0 });
        i += 1;
    }
    Ok(out)
}


#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn validate_examples() {
        assert!(epsilon().validate().is_ok());
        assert!(single_edge().validate().is_ok());
        assert_eq!(epsilon().type_of(), vec![1, 1, 1, 1]);
        assert_eq!(single_edge().type_of(), vec![1, 3]);
    }

    #[test]
    fn degree_three_rejected() {
        let colors = [(Color::Black, true), (Color::Black, true), (Color::Black, true), (Color::White, false)];
        let edges = [(0, 3, 1), (1, 3, 1), (2, 3, 1)];
        let rots = vec![vec![0], vec![1], vec![2], vec![0, 1, 2]];
        let err = HourglassGraph::from_rotations(Rank::FOUR, &colors, &edges, &rots, &[0, 1, 2]).unwrap_err();
        assert!(err.to_string().contains("internal degree ≠ 4"), "{err}");
    }

    #[test]
    fn non_bipartite_rejected() {
        let colors = [(Color::Black, true), (Color::Black, true)];
        let err = HourglassGraph::from_rotations(Rank::FOUR, &colors, &[(0, 1, 1)], &[vec![0], vec![0]], &[0, 1])
            .unwrap_err();
        assert!(err.to_string().contains("bipartite"), "{err}");
    }

    #[test]
    fn canonical_key_ignores_numbering() {
        let a = epsilon();
        let colors = [
            (Color::White, false),
            (Color::Black, true),
            (Color::Black, true),
            (Color::Black, true),
            (Color::Black, true),
        ];
        let edges = [(4, 0, 1), (3, 0, 1), (2, 0, 1), (1, 0, 1)];
        let rots = vec![vec![3, 2, 1, 0], vec![3], vec![2], vec![1], vec![0]];
        let b = HourglassGraph::from_rotations(Rank::FOUR, &colors, &edges, &rots, &[1, 2, 3, 4]).unwrap();
        assert_eq!(a.canonical_key(), b.canonical_key());
        assert_ne!(a.canonical_key(), a.rotate_boundary(1).invert_colors().canonical_key());
    }
}
