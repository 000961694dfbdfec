//! Trip strands under the rules of the road: at a black vertex take the
//! `k`-th rightmost turn (counterclockwise), at a white vertex the `k`-th
//! leftmost (clockwise).

use std::collections::HashSet;

use super::{Color, EdgeId, HourglassGraph, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    pub edge: EdgeId,
    pub strand: u8,
    pub black_to_white: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strand {
    pub k: u8,
    /// 0-based boundary positions.
    pub start: usize,
    pub end: usize,
    /// Which hourglass strand the walk left its start by (0 for simple).
    pub start_strand: u8,
    pub steps: Vec<Step>,
    /// Vertices visited, including both boundary endpoints.
    pub vertices: Vec<VertexId>,
}

/// `trip_k` endpoint maps for every `k in [r-1]`, plus the strands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripMap {
    maps: Vec<Vec<Vec<usize>>>,
    strands: Vec<Strand>,
}

impl TripMap {
    /// Endpoints of the `trip_k` strands through boundary vertex `i`
    /// (0-based). Two entries for `trip_2` at a boundary hourglass.
    pub fn get(&self, k: u8, i: usize) -> &[usize] {
        &self.maps[k as usize - 1][i]
    }

    /// `trip_k` as a plain map; only meaningful when every vertex has a
    /// single strand.
    pub fn perm(&self, k: u8) -> Vec<usize> {
        self.maps[k as usize - 1].iter().map(|v| v[0]).collect()
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub fn strands_of(&self, k: u8) -> impl Iterator<Item = &Strand> {
        self.strands.iter().filter(move |s| s.k == k)
    }

    /// The complete endpoint data, used as a move-class fingerprint.
    pub fn fingerprint(&self) -> Vec<Vec<Vec<usize>>> {
        self.maps.clone()
    }
}

/// Follow one strand from boundary position `i`, leaving by rotation index
/// `first` of the boundary vertex.
pub fn walk(g: &HourglassGraph, k: u8, i: usize, first: usize) -> Result<Strand> {
    let mut v = g.boundary()[i];
    let mut slot = g.rotation(v)[first];
    let mut steps = Vec::new();
    let mut vertices = vec![v];
    let limit = 4 * g.edges().len() + 8;
    loop {
        let e = g.edge(slot.edge);
        steps.push(Step { edge: slot.edge, strand: slot.strand, black_to_white: e.black == v });
        let u = e.other(v);
        vertices.push(u);
        let q = g.slot_index(u, slot).ok_or_else(|| Error::Graph(format!("slot {slot:?} missing at vertex {u}")))?;
        if g.vertex(u).boundary {
            let end = g.boundary_index(u).expect("boundary vertex listed");
            return Ok(Strand {
                k,
                start: i,
                end,
                start_strand: g.rotation(g.boundary()[i])[first].strand,
                steps,
                vertices,
            });
        }
        if steps.len() > limit {
            return Err(Error::Graph("trip walk does not terminate".into()));
        }
        let deg = g.degree(u);
        let kk = k as usize % deg;
        let out = match g.vertex(u).color {
            Color::Black => (q + deg - kk) % deg,
            Color::White => (q + kk) % deg,
        };
        slot = g.rotation(u)[out];
        v = u;
    }
}

/// All trip strands. At a boundary hourglass, `trip_k` for `k != r/2` uses
/// the start that does not bounce straight back.
pub fn trips(g: &HourglassGraph) -> Result<TripMap> {
    let r = g.rank().get();
    let mut maps = vec![vec![Vec::new(); g.n()]; r as usize - 1];
    let mut strands = Vec::new();
    for k in 1..r {
        for i in 0..g.n() {
            let b = g.boundary()[i];
            let starts = g.rotation(b).len();
            if starts == 1 {
                let s = walk(g, k, i, 0)?;
                maps[k as usize - 1][i].push(s.end);
                strands.push(s);
                continue;
            }
            let both: Vec<Strand> = (0..starts).map(|f| walk(g, k, i, f)).collect::<Result<_>>()?;
            if 2 * k == r {
                for s in both {
                    maps[k as usize - 1][i].push(s.end);
                    strands.push(s);
                }
            } else {
                let good: Vec<Strand> = both.into_iter().filter(|s| s.end != i).collect();
                if good.len() != 1 {
                    return Err(Error::Graph(format!(
                        "trip_{k} at boundary hourglass b_{} has {} non-bouncing starts",
                        i + 1,
                        good.len()
                    )));
                }
                let s = good.into_iter().next().expect("one strand");
                maps[k as usize - 1][i].push(s.end);
                strands.push(s);
            }
        }
    }
    Ok(TripMap { maps, strands })
}

/// Union-find classes of vertices joined by hourglass edges; these are the
/// crossing points of the six-vertex picture.
pub(crate) fn hourglass_classes(g: &HourglassGraph) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..g.vertices().len()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in g.edges() {
        if e.m == 2 && !g.vertex(e.black).boundary && !g.vertex(e.white).boundary {
            let (a, b) = (find(&mut parent, e.black), find(&mut parent, e.white));
            parent[a] = b;
        }
    }
    (0..parent.len()).map(|x| find(&mut parent, x)).collect()
}

/// Monotonicity: `trip_2` strands never revisit a crossing point and no two
/// meet twice; every `trip_1`/`trip_2` pair shares a consecutive run of
/// vertices on both strands.
pub fn is_monotonic(g: &HourglassGraph) -> Result<bool> {
    let r = g.rank().get();
    if r != 4 {
        return Ok(true);
    }
    let tm = trips(g)?;
    let cls = hourglass_classes(g);
    let interior = |s: &Strand| -> Vec<usize> { s.vertices[1..s.vertices.len() - 1].iter().map(|&v| cls[v]).collect() };
    // Each strand shows up once per direction; keep one copy.
    let mut t2: Vec<Vec<usize>> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for s in tm.strands_of(2) {
        let mut back = s.vertices.clone();
        back.reverse();
        let key = std::cmp::min(s.vertices.clone(), back);
        if !seen.insert(key) {
            continue;
        }
        let mut pts = interior(s);
        pts.dedup();
        t2.push(pts);
    }
    for pts in &t2 {
        let mut sorted = pts.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Ok(false);
        }
    }
    for a in 0..t2.len() {
        for b in a + 1..t2.len() {
            let shared = t2[a].iter().filter(|x| t2[b].contains(x)).count();
            if shared > 1 {
                return Ok(false);
            }
        }
    }
    for s1 in tm.strands_of(1) {
        let v1 = &s1.vertices;
        for s2 in tm.strands_of(2) {
            let v2 = &s2.vertices;
            let on1: Vec<usize> = (0..v1.len()).filter(|&i| v2.contains(&v1[i])).collect();
            let on2: Vec<usize> = (0..v2.len()).filter(|&i| v1.contains(&v2[i])).collect();
            let consecutive = |ix: &[usize]| ix.windows(2).all(|w| w[1] == w[0] + 1);
            if !consecutive(&on1) || !consecutive(&on2) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl HourglassGraph {
    pub fn trips(&self) -> Result<TripMap> {
        trips(self)
    }

    pub fn is_monotonic(&self) -> Result<bool> {
        is_monotonic(self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;

    #[test]
    fn epsilon_trips() {
        let t = trips(&epsilon()).unwrap();
        assert_eq!(t.perm(1), vec![1, 2, 3, 0]);
        assert_eq!(t.perm(3), vec![3, 0, 1, 2]);
        assert_eq!(t.perm(2), vec![2, 3, 0, 1]);
    }

    #[test]
    fn single_edge_trips() {
        let t = trips(&single_edge()).unwrap();
        for k in 1..=3 {
            assert_eq!(t.perm(k), vec![1, 0]);
        }
    }

    #[test]
    fn trip3_reverses_trip1() {
        let g = epsilon();
        let t = trips(&g).unwrap();
        for s in t.strands_of(1) {
            let rev = t.strands_of(3).find(|x| x.start == s.end).unwrap();
            let mut v = rev.vertices.clone();
            v.reverse();
            assert_eq!(v, s.vertices);
        }
    }

    #[test]
    fn simple_webs_are_monotonic() {
        assert!(is_monotonic(&epsilon()).unwrap());
        assert!(is_monotonic(&single_edge()).unwrap());
    }
}
