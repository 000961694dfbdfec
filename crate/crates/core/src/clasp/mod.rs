//! Clasp sequences and the clasped-web predicates.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::growth;
use crate::hpg::HourglassGraph;
use crate::words::{enumerate_balanced_lattice, Rank, Word};

pub mod bad;
pub mod cut;

pub use bad::{has_bad_config, Pattern, PatternSet};
pub use cut::{min_cut_functionals, Crossing, CutCertificate};

/// An interval partition of the boundary, each block carrying the types of
/// its vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClaspSequence {
    ty: Vec<u8>,
    sizes: Vec<usize>,
}

impl ClaspSequence {
    pub fn new(ty: Vec<u8>, sizes: Vec<usize>) -> Result<ClaspSequence> {
        if sizes.contains(&0) {
            return Err(Error::ClaspMismatch("empty clasp".into()));
        }
        if sizes.iter().sum::<usize>() != ty.len() {
            return Err(Error::ClaspMismatch(format!("clasp sizes {:?} do not sum to {}", sizes, ty.len())));
        }
        Ok(ClaspSequence { ty, sizes })
    }

    pub fn singletons(ty: Vec<u8>) -> ClaspSequence {
        let sizes = vec![1; ty.len()];
        ClaspSequence { ty, sizes }
    }

    pub fn type_of(&self) -> &[u8] {
        &self.ty
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    /// 0-based half-open index ranges of the clasps.
    pub fn intervals(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.sizes
            .iter()
            .map(|&s| {
                let r = start..start + s;
                start += s;
                r
            })
            .collect()
    }

    pub fn clasp(&self, i: usize) -> &[u8] {
        let r = self.intervals()[i].clone();
        &self.ty[r]
    }

    pub fn clasp_of(&self, vertex: usize) -> usize {
        self.intervals().iter().position(|r| r.contains(&vertex)).expect("vertex in range")
    }

    pub fn is_sorted(&self) -> bool {
        self.intervals().into_iter().all(|r| self.ty[r].windows(2).all(|w| w[0] <= w[1]))
    }

    /// Every composition of `n` as clasp sizes, in lexicographic order.
    pub fn all_on(ty: &[u8]) -> Vec<ClaspSequence> {
        compositions(ty.len()).into_iter().map(|sizes| ClaspSequence { ty: ty.to_vec(), sizes }).collect()
    }
}

pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `r L_j(omega_k)`: the scaled inverse Cartan matrix of `A_{r-1}`.
pub fn scaled_functional(r: u8, j: u8, k: u8) -> i64 {
    i64::from(j.min(k)) * i64::from(r - j.max(k))
}

/// Values `r L_1 .. r L_{r-1}` on `sum_k n_k omega_k`; `counts[k-1] = n_k`.
pub fn functionals(r: u8, counts: &[u32]) -> Vec<i64> {
    (1..r)
        .map(|j| counts.iter().enumerate().map(|(k, &c)| i64::from(c) * scaled_functional(r, j, k as u8 + 1)).sum())
        .collect()
}

/// `lambda >= mu` in dominance order, for weights given by fundamental
/// weight counts: the difference has nonnegative root coordinates and lies
/// in the root lattice.
pub fn dominates(r: u8, lambda: &[u32], mu: &[u32]) -> bool {
    let (a, b) = (functionals(r, lambda), functionals(r, mu));
    a.iter().zip(&b).all(|(x, y)| x >= y) && congruence(r, lambda) == congruence(r, mu)
}

/// `sum_k k n_k mod r`, the class of a weight modulo the root lattice.
pub fn congruence(r: u8, counts: &[u32]) -> u32 {
    counts.iter().enumerate().map(|(k, &c)| (k as u32 + 1) * c).sum::<u32>() % u32::from(r)
}

impl ClaspSequence {
    /// Fundamental weight counts of clasp `i`.
    pub fn weight_counts(&self, i: usize, r: u8) -> Vec<u32> {
        let mut t = vec![0u32; r as usize - 1];
        for &a in self.clasp(i) {
            t[a as usize - 1] += 1;
        }
        t
    }

    /// Clasp sizes parsed from `2,3,4`, checked against the type.
    pub fn parse_sizes(ty: &[u8], spec: &str) -> Result<ClaspSequence> {
        let sizes = spec
            .split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| Error::ClaspMismatch(format!("bad clasp size {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        ClaspSequence::new(ty.to_vec(), sizes)
    }

    /// Rotate so that `b_{k+1}` comes first, keeping clasps intact when `k`
    /// is a clasp start.
    pub fn rotate_left(&self, k: usize) -> Result<ClaspSequence> {
        let starts: Vec<usize> = self.intervals().iter().map(|r| r.start).collect();
        let Some(pos) = starts.iter().position(|&s| s == k) else {
            return Err(Error::ClaspMismatch(format!("{k} is not a clasp start")));
        };
        let mut ty = self.ty.clone();
        ty.rotate_left(k);
        let mut sizes = self.sizes.clone();
        sizes.rotate_left(pos);
        ClaspSequence::new(ty, sizes)
    }
}

/// Every clasp is separated only by cut paths whose weight dominates the
/// clasp weight.
pub fn is_nonconvex(g: &HourglassGraph, c: &ClaspSequence) -> Result<bool> {
    for i in 0..c.len() {
        if !min_cut_functionals(g, c, i)?.is_nonconvex() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Some trip strand starts and ends in the same clasp.
pub fn has_returning_trip(g: &HourglassGraph, c: &ClaspSequence) -> Result<bool> {
    if c.type_of() != g.type_of().as_slice() {
        return Err(Error::ClaspMismatch(format!("clasp type {:?} vs web type {:?}", c.type_of(), g.type_of())));
    }
    let tm = g.trips()?;
    Ok(tm.strands().iter().any(|s| c.clasp_of(s.start) == c.clasp_of(s.end)))
}

/// Grown basis webs of type `c.type_of()` that are non-convex for `c`.
pub fn basis_filter(r: Rank, c: &ClaspSequence) -> Result<Vec<(Word, HourglassGraph)>> {
    let mut out = Vec::new();
    for w in enumerate_balanced_lattice(r, c.type_of()) {
        let g = growth::grow(&w)?.web;
        if is_nonconvex(&g, c)? {
            out.push((w, g));
        }
    }
    Ok(out)
}
