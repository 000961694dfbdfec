//! Face tracing on the map augmented by the boundary circle.
//!
//! Edges `0..E` are the graph edges (hourglasses counted once); edges
//! `E..E+n` are boundary arcs, arc `i` running clockwise from `b_i` to
//! `b_{i+1}`. Dart `2a` traverses edge `a` black-to-white (arcs: forwards),
//! dart `2a+1` the reverse. Each dart bounds the face on its right.

use super::{HourglassGraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart(pub usize);

impl Dart {
    pub fn aedge(self) -> usize {
        self.0 / 2
    }
    pub fn reverse(self) -> Dart {
        Dart(self.0 ^ 1)
    }
    pub fn forward(self) -> bool {
        self.0.is_multiple_of(2)
    }
}

#[derive(Debug, Clone)]
pub struct Faces {
    ne: usize,
    n: usize,
    face_of: Vec<usize>,
    faces: Vec<Vec<Dart>>,
    /// Endpoints (tail, head) of every forward dart.
    ends: Vec<(VertexId, VertexId)>,
    aug: Vec<Vec<usize>>,
}

impl Faces {
    pub fn of(g: &HourglassGraph) -> Faces {
        let ne = g.edges().len();
        let n = g.n();
        let nv = g.vertices().len();
        let mut ends: Vec<(VertexId, VertexId)> = g.edges().iter().map(|e| (e.black, e.white)).collect();
        for i in 0..n {
            ends.push((g.boundary()[i], g.boundary()[(i + 1) % n]));
        }
        let mut aug: Vec<Vec<usize>> = (0..nv).map(|v| g.incident_edges(v)).collect();
        for (i, &b) in g.boundary().iter().enumerate() {
            let list = &mut aug[b];
            list.insert(0, ne + i);
            list.push(ne + (i + n - 1) % n);
        }
        let total = 2 * ends.len();
        let mut face_of = vec![usize::MAX; total];
        let mut faces = Vec::new();
        let head = |d: Dart| {
            let (t, h) = ends[d.aedge()];
            if d.forward() {
                h
            } else {
                t
            }
        };
        for start in 0..total {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut cyc = Vec::new();
            let mut d = Dart(start);
            loop {
                face_of[d.0] = id;
                cyc.push(d);
                let h = head(d);
                let a = d.aedge();
                let list = &aug[h];
                let pos = arrival_position(list, a, d, ne);
                let npos = (pos + list.len() - 1) % list.len();
                let nxt = list[npos];
                let forward = if nxt >= ne { npos == 0 } else { ends[nxt].0 == h };
                let nd = Dart(2 * nxt + usize::from(!forward));
                d = nd;
                if face_of[d.0] != usize::MAX {
                    break;
                }
            }
            faces.push(cyc);
        }
        Faces { ne, n, face_of, faces, ends, aug }
    }

    pub fn count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d.0]
    }

    pub fn darts(&self, f: usize) -> &[Dart] {
        &self.faces[f]
    }

    /// Face right of graph edge `e` traversed black to white.
    pub fn right_of_edge(&self, e: usize) -> usize {
        self.face_of[2 * e]
    }

    /// Face left of graph edge `e` traversed black to white.
    pub fn left_of_edge(&self, e: usize) -> usize {
        self.face_of[2 * e + 1]
    }

    /// Interior boundary face between `b_i` and `b_{i+1}` (0-based, cyclic).
    pub fn boundary_face(&self, i: usize) -> usize {
        self.face_of[2 * (self.ne + i)]
    }

    /// The base face between `b_n` and `b_1`.
    pub fn base_face(&self) -> usize {
        self.boundary_face(self.n - 1)
    }

    pub fn outer_face(&self) -> usize {
        self.face_of[2 * self.ne + 1]
    }

    pub fn num_edges(&self) -> usize {
        self.ne
    }

    pub fn is_arc(&self, d: Dart) -> bool {
        d.aedge() >= self.ne
    }

    pub fn tail(&self, d: Dart) -> VertexId {
        let (t, h) = self.ends[d.aedge()];
        if d.forward() {
            t
        } else {
            h
        }
    }

    pub fn head(&self, d: Dart) -> VertexId {
        self.tail(d.reverse())
    }

    /// Graph edges on the boundary of face `f`, each with the dart used.
    pub fn edges_of(&self, f: usize) -> Vec<Dart> {
        self.faces[f].iter().copied().filter(|d| !self.is_arc(*d)).collect()
    }

    /// Augmented rotation (graph edges and arcs) at `v`.
    pub fn augmented_rotation(&self, v: VertexId) -> &[usize] {
        &self.aug[v]
    }
}

fn arrival_position(list: &[usize], a: usize, d: Dart, ne: usize) -> usize {
    if a >= ne {
        // A forward arc arrives as the previous-arc entry (last), a backward
        // arc as the next-arc entry (first).
        return if d.forward() { list.len() - 1 } else { 0 };
    }
    list.iter().position(|&x| x == a).expect("arrival edge present")
}
