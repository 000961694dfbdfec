//! The separation labeling and the boundary word it induces.

use std::fmt;

use super::trips::trips;
use super::{Color, EdgeId, HourglassGraph};
use crate::error::{Error, Result};
use crate::words::{Letter, Word};

/// A subset of `[r]` as a bitmask, bit `a-1` for label `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LabelSet(pub u8);

impl LabelSet {
    pub fn single(a: u8) -> LabelSet {
        LabelSet(1 << (a - 1))
    }

    pub fn full(r: u8) -> LabelSet {
        LabelSet((1u16 << r).wrapping_sub(1) as u8)
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, a: u8) -> bool {
        self.0 & (1 << (a - 1)) != 0
    }

    pub fn union(self, o: LabelSet) -> LabelSet {
        LabelSet(self.0 | o.0)
    }

    pub fn elements(self) -> Vec<u8> {
        (1..=8).filter(|&a| self.contains(a)).collect()
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in self.elements() {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// One label set per edge of the graph it was computed on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub labels: Vec<LabelSet>,
}

impl Labeling {
    pub fn get(&self, e: EdgeId) -> LabelSet {
        self.labels[e]
    }

    /// Sizes match multiplicities and every internal vertex sees each label
    /// exactly once.
    pub fn is_proper(&self, g: &HourglassGraph) -> bool {
        let r = g.rank().get();
        for (e, ed) in g.edges().iter().enumerate() {
            if self.labels[e].len() != u32::from(ed.m) {
                return false;
            }
        }
        for v in 0..g.vertices().len() {
            if g.vertex(v).boundary {
                continue;
            }
            let mut acc = 0u8;
            let mut total = 0;
            for e in g.incident_edges(v) {
                acc |= self.labels[e].0;
                total += self.labels[e].len();
            }
            let want = if r == 2 { LabelSet::full(2) } else { LabelSet::full(r) };
            if LabelSet(acc) != want || total != want.len() {
                return false;
            }
        }
        true
    }
}

impl HourglassGraph {
    /// The separation labeling, through the oscillization for general type.
    pub fn separation_labeling(&self) -> Result<Labeling> {
        if self.is_oscillating() {
            return sep_oscillating(self);
        }
        let osc = self.oscillize();
        let lab = sep_oscillating(&osc.graph)?;
        let mut labels = Vec::with_capacity(self.edges().len());
        for (e, images) in osc.edge_map.iter().enumerate() {
            let mut s = LabelSet::default();
            for &x in images {
                s = s.union(lab.labels[x]);
            }
            if s.len() != u32::from(self.edge(e).m) {
                return Err(Error::Labeling(format!("boundary hourglass {e} gets a repeated label")));
            }
            labels.push(s);
        }
        Ok(Labeling { labels })
    }

    /// `L(W)`: the separation labels of the boundary edges, barred at
    /// white simple-edge boundary vertices.
    pub fn boundary_word(&self) -> Result<Word> {
        let lab = self.separation_labeling()?;
        let r = self.rank();
        let mut letters = Vec::with_capacity(self.n());
        for i in 0..self.n() {
            let b = self.boundary()[i];
            let s = lab.get(self.boundary_edge(i));
            let el = s.elements();
            let letter = match (el.as_slice(), self.vertex(b).color, r.get()) {
                ([a], _, 2) => Letter::Small(*a),
                ([a], Color::Black, _) => Letter::Small(*a),
                ([a], Color::White, _) => Letter::Barred(*a),
                ([a, b], _, 4) => Letter::Pair(*a, *b),
                _ => return Err(Error::Labeling(format!("boundary edge at b_{} labelled {s}", i + 1))),
            };
            letters.push(letter);
        }
        Word::new(r, letters)
    }
}

fn sep_oscillating(g: &HourglassGraph) -> Result<Labeling> {
    let r = g.rank().get();
    let ne = g.edges().len();
    let tm = trips(g)?;
    // seps[e][k-1]: whether the trip_k strand crossing e black-to-white
    // separates F_0 from F(e).
    let mut seps: Vec<Vec<Option<bool>>> = vec![vec![None; r as usize - 1]; ne];
    for s in tm.strands() {
        for st in &s.steps {
            if g.edge(st.edge).m != 1 || !st.black_to_white {
                continue;
            }
            let slot = &mut seps[st.edge][s.k as usize - 1];
            let sep = s.end < s.start;
            match *slot {
                None => *slot = Some(sep),
                Some(x) if x == sep => {}
                Some(_) => {
                    return Err(Error::Labeling(format!(
                        "edge {} crossed by two trip_{} strands that disagree",
                        st.edge, s.k
                    )))
                }
            }
        }
    }
    let mut labels = vec![LabelSet::default(); ne];
    for e in 0..ne {
        if g.edge(e).m != 1 {
            continue;
        }
        let mut count = 0u8;
        for k in 0..r as usize - 1 {
            match seps[e][k] {
                Some(true) => count += 1,
                Some(false) => {}
                None => {
                    return Err(Error::Labeling(format!(
                        "edge {e} is not crossed by a trip_{} strand from the boundary",
                        k + 1
                    )))
                }
            }
        }
        labels[e] = LabelSet::single(1 + count);
    }
    // Hourglass edges: complement of the two simple neighbours at an
    // endpoint; both endpoints must agree when both are usable.
    let full = LabelSet::full(r);
    for e in 0..ne {
        let ed = g.edge(e);
        if ed.m != 2 {
            continue;
        }
        let mut found: Option<LabelSet> = None;
        for v in [ed.black, ed.white] {
            let others: Vec<EdgeId> = g.incident_edges(v).into_iter().filter(|&x| x != e).collect();
            if others.iter().any(|&x| g.edge(x).m != 1) {
                continue;
            }
            let used = others.iter().fold(LabelSet::default(), |a, &x| a.union(labels[x]));
            let lab = LabelSet(full.0 & !used.0);
            if lab.len() != 2 {
                return Err(Error::Labeling(format!("hourglass {e}: neighbours at {v} repeat a label")));
            }
            match found {
                None => found = Some(lab),
                Some(x) if x == lab => {}
                Some(_) => return Err(Error::Labeling(format!("hourglass {e}: endpoints disagree"))),
            }
        }
        labels[e] = found.ok_or_else(|| Error::Labeling(format!("hourglass {e} lies in a chain")))?;
    }
    let lab = Labeling { labels };
    if !lab.is_proper(g) {
        return Err(Error::Labeling("separation labels are not proper".into()));
    }
    Ok(lab)
}
