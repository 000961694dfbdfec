//! Exact web invariants on tensor products of exterior powers.
//!
//! A basis vector of `Λ^k V` is stored as a bitmask over `[r]` (bit `i` is
//! `e_{i+1}`). Webs are read as tensor networks: every internal vertex is an
//! epsilon tensor, every edge a contraction.

mod lie;
mod linalg;

pub use lie::{
    chevalley_act, clasped_subspace, in_kernel, in_kernel_cached, irreducible_basis, is_invariant, project,
    weyl_dimension, ClaspedSubspace, Generator, IrrepCache, DEFAULT_CAP,
};
pub use linalg::{clasped_rank, rank_of, rank_of_rows};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::hpg::{Color, HourglassGraph, Slot};
use crate::words::Rank;

/// One basis vector of `⊗ Λ^{a_i} V`: a subset mask per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorBasisIndex(pub Vec<u8>);

impl TensorBasisIndex {
    pub fn new(r: Rank, ty: &[u8], subsets: &[&[u8]]) -> Result<TensorBasisIndex> {
        if ty.len() != subsets.len() {
            return Err(Error::Labeling(format!("{} subsets for {} factors", subsets.len(), ty.len())));
        }
        let mut masks = Vec::with_capacity(ty.len());
        for (&a, s) in ty.iter().zip(subsets) {
            let mut m = 0u8;
            for &x in *s {
                if x == 0 || x > r.get() || m & bit(x) != 0 {
                    return Err(Error::Labeling(format!("bad subset {s:?} for rank {r}")));
                }
                m |= bit(x);
            }
            if m.count_ones() != a as u32 {
                return Err(Error::Labeling(format!("subset {s:?} does not have size {a}")));
            }
            masks.push(m);
        }
        Ok(TensorBasisIndex(masks))
    }

    /// Number of factors containing each letter.
    pub fn content(&self, r: usize) -> Vec<u32> {
        (1..=r as u8).map(|x| self.0.iter().filter(|&&m| m & bit(x) != 0).count() as u32).collect()
    }
}

impl fmt::Display for TensorBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|&m| elements(m).iter().map(u8::to_string).collect()).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub(crate) fn bit(x: u8) -> u8 {
    1 << (x - 1)
}

/// Letters of a mask in increasing order.
pub(crate) fn elements(m: u8) -> Vec<u8> {
    (1..=8).filter(|&x| m & bit(x) != 0).collect()
}

pub(crate) fn full(r: usize) -> u8 {
    ((1u16 << r) - 1) as u8
}

/// A sparse integer vector in `⊗ Λ^{a_i} V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorVector {
    pub r: Rank,
    pub ty: Vec<u8>,
    pub coeffs: BTreeMap<TensorBasisIndex, i128>,
}

impl TensorVector {
    pub fn zero(r: Rank, ty: Vec<u8>) -> TensorVector {
        TensorVector { r, ty, coeffs: BTreeMap::new() }
    }

    pub fn basis(r: Rank, ty: Vec<u8>, idx: TensorBasisIndex) -> TensorVector {
        let mut v = TensorVector::zero(r, ty);
        v.coeffs.insert(idx, 1);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn add(&mut self, idx: TensorBasisIndex, c: i128) {
        add_to(&mut self.coeffs, idx, c);
    }
}

pub(crate) fn add_to<K: Ord, T: Copy + PartialEq + Default + std::ops::Add<Output = T>>(
    map: &mut BTreeMap<K, T>,
    k: K,
    c: T,
) {
    use std::collections::btree_map::Entry;
    match map.entry(k) {
        Entry::Vacant(v) => {
            if c != T::default() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            let s = *o.get() + c;
            if s == T::default() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// A linear functional on `⊗ Λ^{a_i} V` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFunctional {
    pub r: Rank,
    pub ty: Vec<u8>,
    pub coeffs: BTreeMap<TensorBasisIndex, i64>,
}

impl InvariantFunctional {
    pub fn zero(r: Rank, ty: Vec<u8>) -> InvariantFunctional {
        InvariantFunctional { r, ty, coeffs: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn apply(&self, v: &TensorVector) -> i128 {
        v.coeffs.iter().map(|(k, c)| c * self.coeffs.get(k).copied().unwrap_or(0) as i128).sum()
    }
}

impl fmt::Display for InvariantFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in &self.coeffs {
            writeln!(f, "{k} {c}")?;
        }
        Ok(())
    }
}

/// Edge label masks, indexed by edge id.
pub type EdgeLabels = Vec<u8>;

/// Every assignment of an `m(e)`-subset of `[r]` to each edge with disjoint
/// labels, hence union `[r]`, around each internal vertex.
pub fn proper_labelings(g: &HourglassGraph) -> Vec<EdgeLabels> {
    let r = g.rank().usize();
    let order = edge_order(g);
    let by_size: Vec<Vec<u8>> =
        (0..=r).map(|k| (0..=full(r)).filter(|m| m.count_ones() == k as u32).collect()).collect();
    let mut used = vec![0u8; g.vertices().len()];
    let mut labels = vec![0u8; g.edges().len()];
    let mut out = Vec::new();
    fn go(
        g: &HourglassGraph,
        order: &[usize],
        by_size: &[Vec<u8>],
        at: usize,
        used: &mut [u8],
        labels: &mut [u8],
        out: &mut Vec<EdgeLabels>,
    ) {
        let Some(&e) = order.get(at) else {
            out.push(labels.to_vec());
            return;
        };
        let ed = g.edge(e);
        let blocked = used[ed.black] | used[ed.white];
        for &m in &by_size[ed.m as usize] {
            if m & blocked != 0 {
                continue;
            }
            labels[e] = m;
            used[ed.black] |= m;
            used[ed.white] |= m;
            go(g, order, by_size, at + 1, used, labels, out);
            used[ed.black] &= !m;
            used[ed.white] &= !m;
        }
    }
    // A boundary vertex has a single edge, so its mask never blocks.
    go(g, &order, &by_size, 0, &mut used, &mut labels, &mut out);
    out
}

/// Edges in breadth-first order over internal vertices so constraints bind
/// early.
fn edge_order(g: &HourglassGraph) -> Vec<usize> {
    let nv = g.vertices().len();
    let mut seen_v = vec![false; nv];
    let mut seen_e = vec![false; g.edges().len()];
    let mut order = Vec::new();
    for start in 0..nv {
        if seen_v[start] || g.vertex(start).boundary {
            continue;
        }
        seen_v[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for e in g.incident_edges(v) {
                if !seen_e[e] {
                    seen_e[e] = true;
                    order.push(e);
                }
                let u = g.edge(e).other(v);
                if !seen_v[u] && !g.vertex(u).boundary {
                    seen_v[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    order.extend((0..g.edges().len()).filter(|&e| !seen_e[e]));
    order
}

/// `(-1)^inversions` of a word over `[r]`.
fn parity(seq: &[u8]) -> i64 {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Labels around `v` read clockwise from its first slot, hourglass pairs
/// contributing their 2-subset once in increasing order.
fn vertex_sign(rot: &[Slot], labels: &[u8]) -> i64 {
    let mut seq = Vec::with_capacity(8);
    for s in rot {
        if s.strand == 0 {
            seq.extend(elements(labels[s.edge]));
        }
    }
    parity(&seq)
}

/// The web invariant `[W]` as a functional on `⊗ Λ^{a_i} V`.
///
/// A black boundary vertex reads its edge label directly. A white one sits
/// against an upper epsilon index, so its label `L` is paired with the
/// complement `T` through `e_T ∧ e_L = ± e_{[r]}`. Hourglass boundary edges
/// carry their 2-subset, which agrees with restricting the oscillization up
/// to the factor 2 per hourglass.
pub fn evaluate_web(g: &HourglassGraph) -> InvariantFunctional {
    let r = g.rank().usize();
    let ty = g.type_of();
    let internal: Vec<usize> = (0..g.vertices().len()).filter(|&v| !g.vertex(v).boundary).collect();
    let bedges: Vec<usize> = (0..g.n()).map(|i| g.boundary_edge(i)).collect();
    let mut out = InvariantFunctional::zero(g.rank(), ty);
    for labels in proper_labelings(g) {
        let mut sign: i64 = internal.iter().map(|&v| vertex_sign(g.rotation(v), &labels)).product();
        let mut idx = Vec::with_capacity(g.n());
        for (i, &b) in g.boundary().iter().enumerate() {
            let l = labels[bedges[i]];
            match g.vertex(b).color {
                Color::Black => idx.push(l),
                Color::White => {
                    let t = full(r) ^ l;
                    let mut seq = elements(t);
                    seq.extend(elements(l));
                    sign *= parity(&seq);
                    idx.push(t);
                }
            }
        }
        add_to(&mut out.coeffs, TensorBasisIndex(idx), sign);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpg::examples::{epsilon, single_edge};

    #[test]
    fn epsilon_is_the_determinant() {
        let g = epsilon();
        assert_eq!(proper_labelings(&g).len(), 24);
        let f = evaluate_web(&g);
        assert_eq!(f.coeffs.len(), 24);
        let s = f.coeffs[&TensorBasisIndex(vec![1, 2, 4, 8])];
        for (k, &c) in &f.coeffs {
            let seq: Vec<u8> = k.0.iter().map(|&m| elements(m)[0]).collect();
            assert_eq!(c, s * parity(&seq));
        }
    }

    #[test]
    fn single_edge_is_the_pairing() {
        let g = single_edge();
        assert_eq!(proper_labelings(&g).len(), 4);
        let f = evaluate_web(&g);
        assert_eq!(f.coeffs.len(), 4);
        assert!(f.coeffs.values().all(|c| c.abs() == 1));
        for k in f.coeffs.keys() {
            assert_eq!(k.0[0] | k.0[1], 0b1111);
        }
    }

    #[test]
    fn index_display_and_content() {
        let i = TensorBasisIndex::new(Rank::FOUR, &[1, 2, 1], &[&[1], &[2, 4], &[3]]).unwrap();
        assert_eq!(i.to_string(), "1,24,3");
        assert_eq!(i.content(4), vec![1, 1, 1, 1]);
        assert!(TensorBasisIndex::new(Rank::FOUR, &[2], &[&[1]]).is_err());
    }
}
