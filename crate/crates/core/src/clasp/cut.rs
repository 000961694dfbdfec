//! Minimal cut paths as shortest paths in the planar dual.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{congruence, functionals, ClaspSequence};
use crate::error::{Error, Result};
use crate::hpg::{Color, EdgeId, Faces, HourglassGraph, VertexId};

/// One edge crossed by a cut path, with its endpoint on the clasp side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edge: EdgeId,
    pub clasp_side: VertexId,
}

/// Fundamental weight index picked up by crossing `e` with `v` on the
/// clasp side.
pub fn crossing_weight(g: &HourglassGraph, e: EdgeId, v: VertexId) -> u8 {
    let ed = g.edge(e);
    match g.rank().get() {
        2 => 1,
        _ if ed.m == 2 => 2,
        r => match g.vertex(v).color {
            Color::Black => 1,
            Color::White => r - 1,
        },
    }
}

/// Weight of a set of crossings as fundamental weight counts.
pub fn path_weight(g: &HourglassGraph, path: &[Crossing]) -> Vec<u32> {
    let mut n = vec![0u32; g.rank().usize() - 1];
    for c in path {
        n[crossing_weight(g, c.edge, c.clasp_side) as usize - 1] += 1;
    }
    n
}

/// Per-clasp minima of every scaled functional over cut paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutCertificate {
    pub clasp: usize,
    /// `r L_k(wt(c_i))`.
    pub target: Vec<i64>,
    /// `min r L_k(wt(gamma))`.
    pub minima: Vec<i64>,
    /// A path attaining each minimum.
    pub paths: Vec<Vec<Crossing>>,
    /// Weight counts of those paths.
    pub weights: Vec<Vec<u32>>,
    /// Every attained path is congruent to the clasp weight mod `r`.
    pub congruent: bool,
}

impl CutCertificate {
    pub fn is_nonconvex(&self) -> bool {
        self.minima.iter().zip(&self.target).all(|(m, t)| m >= t)
    }
}

/// Darts of the dual: crossing `edge` from face `from` to face `to`.
pub(crate) fn dual_arcs(g: &HourglassGraph, faces: &Faces) -> Vec<(usize, usize, Crossing)> {
    let mut out = Vec::new();
    for (e, ed) in g.edges().iter().enumerate() {
        let (rf, lf) = (faces.right_of_edge(e), faces.left_of_edge(e));
        if rf == lf {
            continue;
        }
        // Walking right to left across a black-to-white edge keeps the
        // black end on the walker's left, where the clasp lies.
        out.push((rf, lf, Crossing { edge: e, clasp_side: ed.black }));
        out.push((lf, rf, Crossing { edge: e, clasp_side: ed.white }));
    }
    out
}

/// Start and end faces of cut paths around clasp `i`.
pub(crate) fn clasp_faces(faces: &Faces, c: &ClaspSequence, i: usize, n: usize) -> (usize, usize) {
    let range = c.intervals()[i].clone();
    (faces.boundary_face((range.start + n - 1) % n), faces.boundary_face(range.end - 1))
}

pub fn min_cut_functionals(g: &HourglassGraph, c: &ClaspSequence, i: usize) -> Result<CutCertificate> {
    if i >= c.len() {
        return Err(Error::ClaspMismatch(format!("clasp {} out of range ({} clasps)", i + 1, c.len())));
    }
    if c.type_of() != g.type_of().as_slice() {
        return Err(Error::ClaspMismatch(format!("clasp type {:?} vs web type {:?}", c.type_of(), g.type_of())));
    }
    let r = g.rank().get();
    let faces = Faces::of(g);
    let arcs = dual_arcs(g, &faces);
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); faces.count()];
    for (a, &(from, _, _)) in arcs.iter().enumerate() {
        out_arcs[from].push(a);
    }
    let (start, end) = clasp_faces(&faces, c, i, g.n());
    let t = c.weight_counts(i, r);
    let target = functionals(r, &t);
    let mut cert = CutCertificate {
        clasp: i,
        target,
        minima: Vec::new(),
        paths: Vec::new(),
        weights: Vec::new(),
        congruent: true,
    };
    for k in 1..r {
        let cost = |x: &Crossing| functionals(r, &unit(r, crossing_weight(g, x.edge, x.clasp_side)))[k as usize - 1];
        let mut dist = vec![i64::MAX; faces.count()];
        let mut via: Vec<Option<usize>> = vec![None; faces.count()];
        let mut heap = BinaryHeap::new();
        dist[start] = 0;
        heap.push(Reverse((0i64, start)));
        while let Some(Reverse((d, f))) = heap.pop() {
            if d > dist[f] {
                continue;
            }
            for &a in &out_arcs[f] {
                let (_, to, x) = arcs[a];
                let nd = d + cost(&x);
                if nd < dist[to] {
                    dist[to] = nd;
                    via[to] = Some(a);
                    heap.push(Reverse((nd, to)));
                }
            }
        }
        if dist[end] == i64::MAX {
            return Err(Error::Graph("no cut path reaches the far side of the clasp".into()));
        }
        let mut path = Vec::new();
        let mut f = end;
        while f != start {
            let a = via[f].expect("reached face has a predecessor");
            path.push(arcs[a].2);
            f = arcs[a].0;
        }
        path.reverse();
        let w = path_weight(g, &path);
        if congruence(r, &w) != congruence(r, &t) {
            cert.congruent = false;
        }
        cert.minima.push(dist[end]);
        cert.paths.push(path);
        cert.weights.push(w);
    }
    Ok(cert)
}

fn unit(r: u8, k: u8) -> Vec<u32> {
    let mut v = vec![0u32; r as usize - 1];
    v[k as usize - 1] = 1;
    v
}
