//! Strand diagrams grown downward from a row of boundary vertices.

use crate::error::{Error, Result};
use crate::hpg::{Color, HourglassGraph};
use crate::sixvertex::{Arrow, SixVertexConfig};
use crate::words::Rank;

/// A dangling strand label: `up` for barred letters (pointing up, out of
/// the region below the row).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrandLabel {
    pub label: u8,
    pub up: bool,
}

impl StrandLabel {
    pub fn down(label: u8) -> StrandLabel {
        StrandLabel { label, up: false }
    }
    pub fn up(label: u8) -> StrandLabel {
        StrandLabel { label, up: true }
    }
}

impl std::fmt::Display for StrandLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.up {
            write!(f, "-{}", self.label)
        } else {
            write!(f, "{}", self.label)
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pending {
    upper: usize,
    lower: Option<usize>,
    up: bool,
    alive: bool,
}

/// Boundary vertices `0..n` sit on a horizontal line, left to right; new
/// vertices appear below. Every vertex rotation is clockwise.
#[derive(Debug, Clone)]
pub struct Builder {
    n: usize,
    edges: Vec<Pending>,
    rot: Vec<Vec<usize>>,
    row: Vec<(StrandLabel, usize)>,
}

impl Builder {
    pub fn new(letters: &[StrandLabel]) -> Builder {
        let n = letters.len();
        let mut b = Builder { n, edges: Vec::new(), rot: vec![Vec::new(); n], row: Vec::new() };
        for (i, &l) in letters.iter().enumerate() {
            let e = b.edges.len();
            b.edges.push(Pending { upper: i, lower: None, up: l.up, alive: true });
            b.rot[i].push(e);
            b.row.push((l, e));
        }
        b
    }

    pub fn row(&self) -> Vec<StrandLabel> {
        self.row.iter().map(|x| x.0).collect()
    }

    pub fn is_done(&self) -> bool {
        self.row.is_empty()
    }

    /// Join strands `i, i+1` at a new degree-four vertex emitting `out`.
    pub fn vertex(&mut self, i: usize, out: [StrandLabel; 2]) {
        let v = self.rot.len();
        let (tl, tr) = (self.row[i].1, self.row[i + 1].1);
        self.edges[tl].lower = Some(v);
        self.edges[tr].lower = Some(v);
        let bl = self.edges.len();
        self.edges.push(Pending { upper: v, lower: None, up: out[0].up, alive: true });
        let br = self.edges.len();
        self.edges.push(Pending { upper: v, lower: None, up: out[1].up, alive: true });
        self.rot.push(vec![tl, tr, br, bl]);
        self.row[i] = (out[0], bl);
        self.row[i + 1] = (out[1], br);
    }

    /// Join strands `i, i+1` at a new vertex emitting one strand (trivalent
    /// webs).
    pub fn merge(&mut self, i: usize, out: StrandLabel) {
        let v = self.rot.len();
        let (tl, tr) = (self.row[i].1, self.row[i + 1].1);
        self.edges[tl].lower = Some(v);
        self.edges[tr].lower = Some(v);
        let b = self.edges.len();
        self.edges.push(Pending { upper: v, lower: None, up: out.up, alive: true });
        self.rot.push(vec![tl, tr, b]);
        self.row[i] = (out, b);
        self.row.remove(i + 1);
    }

    /// Rank 3 H: strands `i, i+1` end at two trivalent vertices joined by a
    /// horizontal rung; the left one also carries `out[0]`, the right one
    /// `out[1]`.
    pub fn h(&mut self, i: usize, out: [StrandLabel; 2]) -> Result<()> {
        let (tl, tr) = (self.row[i], self.row[i + 1]);
        // A trivalent vertex is all-in or all-out; the rung follows suit.
        let left_in = !tl.0.up;
        if (out[0].up != left_in) || (tr.0.up != left_in) || (!out[1].up != left_in) {
            return Err(Error::Growth(format!(
                "H with {} {} -> {} {} is not consistently oriented",
                tl.0, tr.0, out[0], out[1]
            )));
        }
        let u = self.rot.len();
        let w = u + 1;
        self.edges[tl.1].lower = Some(u);
        self.edges[tr.1].lower = Some(w);
        // Rung stored with `upper` on the left; `up` means it points left.
        let rung = self.edges.len();
        self.edges.push(Pending { upper: u, lower: Some(w), up: left_in, alive: true });
        let bl = self.edges.len();
        self.edges.push(Pending { upper: u, lower: None, up: out[0].up, alive: true });
        let br = self.edges.len();
        self.edges.push(Pending { upper: w, lower: None, up: out[1].up, alive: true });
        self.rot.push(vec![tl.1, rung, bl]);
        self.rot.push(vec![tr.1, br, rung]);
        self.row[i] = (out[0], bl);
        self.row[i + 1] = (out[1], br);
        Ok(())
    }

    /// Join strands `i, i+1` into one edge.
    pub fn cap(&mut self, i: usize) -> Result<()> {
        let (a, b) = (self.row[i].1, self.row[i + 1].1);
        if self.edges[a].up == self.edges[b].up {
            return Err(Error::Growth("cap joins two strands pointing the same way".into()));
        }
        let upper_b = self.edges[b].upper;
        self.edges[a].lower = Some(upper_b);
        for x in self.rot[upper_b].iter_mut() {
            if *x == b {
                *x = a;
            }
        }
        self.edges[b].alive = false;
        self.row.drain(i..i + 2);
        Ok(())
    }

    /// Directed edges (tail, head) with rotations, dead edges removed.
    fn arrows(&self) -> Result<(Vec<Arrow>, Vec<Vec<usize>>)> {
        if !self.row.is_empty() {
            return Err(Error::Growth("dangling strands remain".into()));
        }
        let mut map = vec![usize::MAX; self.edges.len()];
        let mut arrows = Vec::new();
        for (e, p) in self.edges.iter().enumerate() {
            if !p.alive {
                continue;
            }
            let lower = p.lower.ok_or_else(|| Error::Growth("unfinished edge".into()))?;
            map[e] = arrows.len();
            // Down strands run from the upper vertex to the lower one.
            arrows.push(if p.up { Arrow { tail: lower, head: p.upper } } else { Arrow { tail: p.upper, head: lower } });
        }
        let rot = self.rot.iter().map(|l| l.iter().map(|&e| map[e]).collect()).collect();
        Ok((arrows, rot))
    }

    pub fn into_config(&self) -> Result<SixVertexConfig> {
        let (arrows, rot) = self.arrows()?;
        let nv = rot.len();
        let is_boundary = (0..nv).map(|v| v < self.n).collect();
        SixVertexConfig::new(is_boundary, arrows, rot, (0..self.n).collect())
    }

    /// Web with every edge simple: a vertex is black when its edges point
    /// away from it.
    pub fn into_simple_web(&self, r: Rank) -> Result<HourglassGraph> {
        let (arrows, rot) = self.arrows()?;
        let nv = rot.len();
        let mut colors = Vec::with_capacity(nv);
        for (v, list) in rot.iter().enumerate() {
            let outs = list.iter().filter(|&&e| arrows[e].tail == v).count();
            let c = if outs == list.len() {
                Color::Black
            } else if outs == 0 {
                Color::White
            } else {
                return Err(Error::Growth(format!("vertex {v} has edges in both directions")));
            };
            colors.push((c, v < self.n));
        }
        let edges: Vec<(usize, usize, u8)> = arrows.iter().map(|a| (a.tail, a.head, 1)).collect();
        let boundary: Vec<usize> = (0..self.n).collect();
        HourglassGraph::from_rotations(r, &colors, &edges, &rot, &boundary)
    }
}
