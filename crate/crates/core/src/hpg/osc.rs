//! Oscillization: split every boundary hourglass into two simple boundary
//! edges, and the inverse merge.

use super::{Edge, EdgeId, HourglassGraph, Slot, Vertex};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Oscillization {
    pub graph: HourglassGraph,
    /// Original boundary index to its one or two indices in `graph`.
    pub boundary_map: Vec<Vec<usize>>,
    /// Original edge to its one or two images in `graph`.
    pub edge_map: Vec<Vec<EdgeId>>,
}

impl HourglassGraph {
    pub fn oscillize(&self) -> Oscillization {
        let all: Vec<usize> = (0..self.n()).filter(|&i| self.rotation(self.boundary()[i]).len() == 2).collect();
        self.split(&all)
    }

    /// Split only `b_i` (0-based).
    pub fn partial_oscillize(&self, i: usize) -> Result<HourglassGraph> {
        if i >= self.n() || self.rotation(self.boundary()[i]).len() != 2 {
            return Err(Error::Graph(format!("b_{} is not incident to an hourglass edge", i + 1)));
        }
        Ok(self.split(&[i]).graph)
    }

    fn split(&self, which: &[usize]) -> Oscillization {
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        let mut rot = self.rot.clone();
        let mut boundary = Vec::new();
        let mut boundary_map = Vec::new();
        let mut edge_map: Vec<Vec<EdgeId>> = (0..edges.len()).map(|e| vec![e]).collect();
        for (i, &b) in self.boundary.iter().enumerate() {
            if !which.contains(&i) {
                boundary_map.push(vec![boundary.len()]);
                boundary.push(b);
                continue;
            }
            let e = self.rot[b][0].edge;
            let ed = self.edges[e];
            let v = ed.other(b);
            let b2 = vertices.len();
            vertices.push(Vertex { color: self.vertices[b].color, boundary: true });
            let e2 = edges.len();
            let (black, white) = if ed.black == b { (b2, v) } else { (v, b2) };
            edges.push(Edge { black, white, m: 1 });
            edges[e].m = 1;
            edge_map[e].push(e2);
            rot.push(vec![Slot { edge: e2, strand: 0 }]);
            rot[b] = vec![Slot { edge: e, strand: 0 }];
            for s in rot[v].iter_mut() {
                if s.edge == e && s.strand == 1 {
                    *s = Slot { edge: e2, strand: 0 };
                }
            }
            boundary_map.push(vec![boundary.len(), boundary.len() + 1]);
            boundary.push(b);
            boundary.push(b2);
        }
        let graph = HourglassGraph { r: self.r, vertices, edges, rot, boundary };
        Oscillization { graph, boundary_map, edge_map }
    }

    /// Merge `b_j, b_{j+1}` (0-based `j`) for every listed `j` into one
    /// hourglass boundary vertex. Each pair must share its neighbour, with
    /// the two edges consecutive there.
    pub fn deoscillize(&self, pairs: &[usize]) -> Result<HourglassGraph> {
        let n = self.n();
        let mut g = self.clone();
        let mut alive_v = vec![true; g.vertices.len()];
        let mut alive_e = vec![true; g.edges.len()];
        for &j in pairs {
            if j + 1 >= n {
                return Err(Error::Graph(format!("no boundary pair at {}", j + 1)));
            }
            let (b1, b2) = (g.boundary[j], g.boundary[j + 1]);
            if g.rot[b1].len() != 1 || g.rot[b2].len() != 1 {
                return Err(Error::Graph(format!("b_{} or b_{} is not simple", j + 1, j + 2)));
            }
            let (e1, e2) = (g.rot[b1][0].edge, g.rot[b2][0].edge);
            let v = g.edges[e1].other(b1);
            if g.edges[e2].other(b2) != v || g.vertices[b1].color != g.vertices[b2].color {
                return Err(Error::Graph(format!("b_{} and b_{} do not share a neighbour", j + 1, j + 2)));
            }
            let len = g.rot[v].len();
            let p1 = g.slot_index(v, Slot { edge: e1, strand: 0 }).expect("listed");
            let p2 = g.slot_index(v, Slot { edge: e2, strand: 0 }).expect("listed");
            if (p1 + 1) % len != p2 {
                return Err(Error::Graph(format!(
                    "b_{} and b_{} are not consecutive at their neighbour",
                    j + 1,
                    j + 2
                )));
            }
            g.edges[e1].m = 2;
            g.rot[v][p2] = Slot { edge: e1, strand: 1 };
            g.rot[b1] = vec![Slot { edge: e1, strand: 0 }, Slot { edge: e1, strand: 1 }];
            alive_v[b2] = false;
            alive_e[e2] = false;
        }
        let out = g.compact(&alive_v, &alive_e);
        out.validate()?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::super::Color;
    use super::*;
    use crate::words::Rank;

    /// A black type-2 boundary vertex joined by an hourglass to a white
    /// vertex, which also meets two black boundary vertices: type (2,1,1).
    pub fn hourglass_web() -> HourglassGraph {
        let colors = [(Color::Black, true), (Color::Black, true), (Color::Black, true), (Color::White, false)];
        let edges = [(0, 3, 2), (1, 3, 1), (2, 3, 1)];
        let rots = vec![vec![0, 0], vec![1], vec![2], vec![0, 0, 1, 2]];
        HourglassGraph::from_rotations(Rank::FOUR, &colors, &edges, &rots, &[0, 1, 2]).unwrap()
    }

    #[test]
    fn oscillize_and_back() {
        let g = hourglass_web();
        assert_eq!(g.type_of(), vec![2, 1, 1]);
        let o = g.oscillize();
        assert_eq!(o.graph.type_of(), vec![1, 1, 1, 1]);
        assert_eq!(o.graph.canonical_key(), epsilon().canonical_key());
        let back = o.graph.deoscillize(&[0]).unwrap();
        assert_eq!(back.canonical_key(), g.canonical_key());
        assert_eq!(g.boundary_word().unwrap().to_string(), "12 3 4");
    }

    #[test]
    fn oscillating_is_fixed() {
        let g = epsilon();
        assert_eq!(g.oscillize().graph, g);
    }
}
