//! Partitions, Littlewood-Richardson tableaux, invariant dimensions and the
//! bijection between descent-free lattice words and rectangular tableaux.

use std::collections::BTreeMap;
use std::fmt;

use crate::clasp::ClaspSequence;
use crate::error::{Error, Result};
use crate::words::{Letter, Rank, Word};

/// A partition with trailing zeros removed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Partition> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Tableau(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition::default()
    }

    /// `omega_k = (1^k)`.
    pub fn fundamental(k: u8) -> Partition {
        Partition { parts: vec![1; k as usize] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Row `i` (0-based), zero past the end.
    pub fn row(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn padded(&self, r: usize) -> Vec<u32> {
        (0..r).map(|i| self.row(i)).collect()
    }

    /// An `r`-row rectangle, the empty partition included.
    pub fn is_rectangle(&self, r: usize) -> bool {
        self.rows() <= r && self.padded(r).windows(2).all(|w| w[0] == w[1])
    }

    pub fn contains(&self, o: &Partition) -> bool {
        (0..o.rows()).all(|i| self.row(i) >= o.row(i))
    }

    fn add(&self, o: &Partition) -> Partition {
        let n = self.rows().max(o.rows());
        Partition { parts: (0..n).map(|i| self.row(i) + o.row(i)).collect() }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// `wt(c) = sum of omega_{a_j}` as a partition.
pub fn clasp_weight(c: &[u8]) -> Partition {
    c.iter().fold(Partition::empty(), |acc, &k| acc.add(&Partition::fundamental(k)))
}

/// One skew filling: `rows[i]` lists the entries added to row `i`, left to
/// right.
pub type Filling = Vec<Vec<u8>>;

/// A chain of partitions with an LR filling of each step.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LrTableau {
    pub chain: Vec<Partition>,
    pub fillings: Vec<Filling>,
}

impl LrTableau {
    pub fn shape(&self) -> Partition {
        self.chain.last().cloned().unwrap_or_default()
    }

    /// Checks the chain, each filling's shape, content, semistandardness
    /// and lattice reading word.
    pub fn validate(&self, weights: &[Partition], r: usize) -> Result<()> {
        let bad = |m: String| Err(Error::Tableau(m));
        if self.chain.len() != weights.len() + 1 || self.fillings.len() != weights.len() {
            return bad("chain length does not match the weights".into());
        }
        if self.chain[0] != Partition::empty() {
            return bad("chain must start at the empty partition".into());
        }
        for (i, f) in self.fillings.iter().enumerate() {
            let (inner, outer) = (&self.chain[i], &self.chain[i + 1]);
            if outer.rows() > r || f.len() > r {
                return bad(format!("block {} has more than {r} rows", i + 1));
            }
            for row in 0..r {
                let got = f.get(row).map_or(0, Vec::len) as u32;
                if outer.row(row) < inner.row(row) || outer.row(row) - inner.row(row) != got {
                    return bad(format!("block {} row {} has the wrong length", i + 1, row + 1));
                }
            }
            let mut content = vec![0u32; r];
            for row in f {
                for &x in row {
                    if x == 0 || x as usize > r {
                        return bad(format!("entry {x} out of range"));
                    }
                    content[x as usize - 1] += 1;
                }
            }
            if Partition::new(content)? != weights[i] {
                return bad(format!("block {} has the wrong content", i + 1));
            }
            if !is_lr_filling(inner, f) {
                return bad(format!("block {} is not a Littlewood-Richardson filling", i + 1));
            }
        }
        Ok(())
    }

    /// `(row, column, entry, block)` tuples, 1-based, grouped by row.
    pub fn cells(&self) -> Vec<Vec<(usize, u32, u8, usize)>> {
        let r = self.shape().rows();
        let mut out = vec![Vec::new(); r];
        for (b, f) in self.fillings.iter().enumerate() {
            for (row, entries) in f.iter().enumerate() {
                let start = self.chain[b].row(row);
                for (j, &x) in entries.iter().enumerate() {
                    out[row].push((row + 1, start + j as u32 + 1, x, b + 1));
                }
            }
        }
        out
    }
}

impl fmt::Display for LrTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.cells() {
            let s: Vec<String> = row.iter().map(|(a, b, c, d)| format!("({a},{b},{c},{d})")).collect();
            writeln!(f, "{}", s.join(" "))?;
        }
        Ok(())
    }
}

/// Semistandard on the skew shape over `inner`, with a lattice reading word
/// (right to left, top to bottom).
fn is_lr_filling(inner: &Partition, f: &Filling) -> bool {
    let entry = |row: usize, col: u32| -> Option<u8> {
        let start = inner.row(row);
        if col < start {
            return None;
        }
        f.get(row)?.get((col - start) as usize).copied()
    };
    for (row, entries) in f.iter().enumerate() {
        if entries.windows(2).any(|w| w[0] > w[1]) {
            return false;
        }
        if row > 0 {
            for (j, &x) in entries.iter().enumerate() {
                if let Some(above) = entry(row - 1, inner.row(row) + j as u32) {
                    if above >= x {
                        return false;
                    }
                }
            }
        }
    }
    let mut seen = [0u32; 16];
    for entries in f {
        for &x in entries.iter().rev() {
            seen[x as usize] += 1;
            if x > 1 && seen[x as usize] > seen[x as usize - 1] {
                return false;
            }
        }
    }
    true
}

/// Every LR filling of some `nu / mu` with content `lambda`, keeping at most
/// `r` rows. Entries `k = 1, 2, ...` are placed as successive horizontal
/// strips; the lattice condition is checked at the end.
pub fn lr_fillings(mu: &Partition, lambda: &Partition, r: usize) -> Vec<(Partition, Filling)> {
    let mut out = Vec::new();
    let mut cur = mu.padded(r);
    let mut fill: Filling = vec![Vec::new(); r];
    strips(mu, lambda.parts(), 0, r, &mut cur, &mut fill, &mut out);
    out
}

fn strips(
    mu: &Partition,
    lambda: &[u32],
    k: usize,
    r: usize,
    cur: &mut Vec<u32>,
    fill: &mut Filling,
    out: &mut Vec<(Partition, Filling)>,
) {
    if k == lambda.len() {
        if is_lr_filling(mu, fill) {
            let mut f = fill.clone();
            while f.last().is_some_and(Vec::is_empty) {
                f.pop();
            }
            out.push((Partition { parts: cur.clone() }.normalized(), f));
        }
        return;
    }
    // Distribute lambda[k] boxes over the rows as a horizontal strip.
    let before = cur.clone();
    place(mu, lambda, k, r, 0, lambda[k], &before, cur, fill, out);
}

#[allow(clippy::too_many_arguments)]
fn place(
    mu: &Partition,
    lambda: &[u32],
    k: usize,
    r: usize,
    row: usize,
    left: u32,
    before: &[u32],
    cur: &mut Vec<u32>,
    fill: &mut Filling,
    out: &mut Vec<(Partition, Filling)>,
) {
    if row == r {
        if left == 0 {
            strips(mu, lambda, k + 1, r, cur, fill, out);
        }
        return;
    }
    // A horizontal strip may not stack: row `row` can grow up to the old
    // length of the row above.
    let cap = if row == 0 { left } else { (before[row - 1] - before[row]).min(left) };
    for t in 0..=cap {
        cur[row] = before[row] + t;
        for _ in 0..t {
            fill[row].push(k as u8 + 1);
        }
        place(mu, lambda, k, r, row + 1, left - t, before, cur, fill, out);
        for _ in 0..t {
            fill[row].pop();
        }
    }
    cur[row] = before[row];
}

impl Partition {
    fn normalized(mut self) -> Partition {
        while self.parts.last() == Some(&0) {
            self.parts.pop();
        }
        self
    }
}

/// All LR tableaux for the weight sequence with at most `r` rows.
pub fn lr_tableaux(weights: &[Partition], r: usize) -> Vec<LrTableau> {
    lr_tableaux_within(weights, r, u32::MAX)
}

/// LR tableaux whose shapes never get wider than `width`.
fn lr_tableaux_within(weights: &[Partition], r: usize, width: u32) -> Vec<LrTableau> {
    let mut level = vec![LrTableau { chain: vec![Partition::empty()], fillings: Vec::new() }];
    for lambda in weights {
        let mut next = Vec::new();
        for t in &level {
            for (nu, f) in lr_fillings(&t.shape(), lambda, r) {
                if nu.row(0) > width {
                    continue;
                }
                let mut t2 = t.clone();
                t2.chain.push(nu);
                t2.fillings.push(f);
                next.push(t2);
            }
        }
        level = next;
    }
    level
}

/// `RT(weights)`: the rectangular ones. Shapes only grow, so every step
/// must fit inside the final `r`-row rectangle.
pub fn rectangular_tableaux(weights: &[Partition], r: usize) -> Vec<LrTableau> {
    let total: u32 = weights.iter().map(Partition::size).sum();
    if !total.is_multiple_of(r as u32) {
        return Vec::new();
    }
    lr_tableaux_within(weights, r, total / r as u32).into_iter().filter(|t| t.shape().is_rectangle(r)).collect()
}

/// Number of `r`-row rectangles in the iterated LR expansion of the product
/// of Schur functions. Shapes are tracked with multiplicity, not listed.
pub fn dim_invariant_space(weights: &[Partition], r: usize) -> u64 {
    let mut shapes: BTreeMap<Partition, u64> = BTreeMap::new();
    shapes.insert(Partition::empty(), 1);
    for lambda in weights {
        if lambda.rows() > r {
            return 0;
        }
        let mut next = BTreeMap::new();
        for (mu, m) in &shapes {
            for (nu, _) in lr_fillings(mu, lambda, r) {
                *next.entry(strip_columns(&nu, r)).or_insert(0) += m;
            }
        }
        shapes = next;
    }
    shapes.iter().filter(|(p, _)| p.is_rectangle(r)).map(|(_, m)| m).sum()
}

/// Full columns of height `r` never affect which products hit a rectangle.
fn strip_columns(p: &Partition, r: usize) -> Partition {
    let full = if p.rows() == r { p.row(r - 1) } else { 0 };
    Partition { parts: p.parts.iter().map(|x| x - full).collect() }.normalized()
}

/// The clasp weights of `c`.
pub fn clasp_weights(c: &ClaspSequence) -> Vec<Partition> {
    (0..c.len()).map(|i| clasp_weight(c.clasp(i))).collect()
}

fn check_bl(l: &Word, c: &ClaspSequence) -> Result<()> {
    if !c.is_sorted() {
        return Err(Error::UnsortedClasp);
    }
    if !l.is_lattice() || !l.is_balanced() || l.has_c_descents(c)? {
        return Err(Error::NotInBl(l.to_string()));
    }
    Ok(())
}

/// The box-adding recipe: a letter with components `s_1 < s_2 < ...` puts
/// entry `j` at the end of row `s_j`.
pub fn word_to_tableau(l: &Word, c: &ClaspSequence) -> Result<LrTableau> {
    check_bl(l, c)?;
    let r = l.rank().usize();
    let mut cur = vec![0u32; r];
    let mut t = LrTableau { chain: vec![Partition::empty()], fillings: Vec::new() };
    for range in c.intervals() {
        let mut f: Filling = vec![Vec::new(); r];
        for &x in &l.letters()[range] {
            for (j, &row) in x.components(l.rank()).iter().enumerate() {
                f[row as usize - 1].push(j as u8 + 1);
                cur[row as usize - 1] += 1;
            }
        }
        while f.last().is_some_and(Vec::is_empty) {
            f.pop();
        }
        t.chain.push(Partition::new(cur.clone())?);
        t.fillings.push(f);
    }
    t.validate(&clasp_weights(c), r)?;
    Ok(t)
}

fn letter_from(rows: &[u8], r: Rank) -> Result<Letter> {
    let rr = r.get();
    match rows.len() {
        1 => Ok(Letter::Small(rows[0])),
        k if k == rr as usize - 1 => {
            let d = (1..=rr).find(|x| !rows.contains(x)).expect("complement nonempty");
            Ok(Letter::Barred(d))
        }
        2 if rr == 4 => Ok(Letter::pair(rows[0], rows[1])),
        _ => Err(Error::Tableau(format!("no letter for rows {rows:?}"))),
    }
}

/// Right-to-left extraction, largest entries first: pick the smallest row
/// holding each entry `1..=k`, delete the rightmost such entries and emit
/// the letter with those rows as components.
pub fn tableau_to_word(t: &LrTableau, c: &ClaspSequence, r: Rank) -> Result<Word> {
    let rr = r.usize();
    t.validate(&clasp_weights(c), rr)?;
    if !t.shape().is_rectangle(rr) {
        return Err(Error::Tableau(format!("shape {} is not a rectangle", t.shape())));
    }
    let mut letters = Vec::new();
    for f in &t.fillings {
        let mut f = f.clone();
        let mut block = Vec::new();
        for k in (1..=rr as u8 - 1).rev() {
            while f.iter().any(|row| row.contains(&k)) {
                let mut rows = Vec::new();
                for e in 1..=k {
                    let i = f
                        .iter()
                        .position(|row| row.contains(&e))
                        .ok_or_else(|| Error::Tableau(format!("entry {k} without an entry {e} to pair with")))?;
                    rows.push(i);
                }
                for (e, &i) in rows.iter().enumerate() {
                    let p = f[i].iter().rposition(|&x| x == e as u8 + 1).expect("found above");
                    f[i].remove(p);
                }
                let comps: Vec<u8> = rows.iter().map(|&i| i as u8 + 1).collect();
                block.push(letter_from(&comps, r)?);
            }
        }
        if f.iter().any(|row| !row.is_empty()) {
            return Err(Error::Tableau("entries left over after extraction".into()));
        }
        block.reverse();
        letters.extend(block);
    }
    Word::new(r, letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn clasp_weights_add_columns() {
        assert_eq!(clasp_weight(&[1, 3]), p(&[2, 1, 1]));
        assert_eq!(clasp_weight(&[2, 1, 2]), p(&[3, 2]));
        assert_eq!(clasp_weight(&[1]), p(&[1]));
    }

    #[test]
    fn small_dimensions() {
        let w1 = Partition::fundamental(1);
        assert_eq!(dim_invariant_space(&vec![w1.clone(); 4], 4), 1);
        assert_eq!(dim_invariant_space(&vec![w1.clone(); 8], 4), 14);
        assert_eq!(dim_invariant_space(&[p(&[2]), w1.clone(), w1.clone()], 4), 0);
        assert_eq!(dim_invariant_space(&vec![w1.clone(); 3], 3), 1);
        assert_eq!(dim_invariant_space(&vec![w1; 6], 3), 5);
    }

    #[test]
    fn first_block_of_the_recipe() {
        let l = Word::parse("1 1 12 -2 -1 -1 -1", Rank::FOUR).unwrap();
        let c = ClaspSequence::new(vec![1, 1, 2, 3, 3, 3, 3], vec![3, 1, 1, 1, 1]).unwrap();
        let t = word_to_tableau(&l, &c).unwrap();
        assert_eq!(t.chain[1], p(&[3, 1]));
        assert_eq!(t.fillings[0], vec![vec![1, 1, 1], vec![2]]);
        assert_eq!(tableau_to_word(&t, &c, Rank::FOUR).unwrap(), l);
    }

    #[test]
    fn barred_letter_is_a_column() {
        let l = Word::parse("1 -1", Rank::FOUR).unwrap();
        let c = ClaspSequence::singletons(vec![1, 3]);
        let t = word_to_tableau(&l, &c).unwrap();
        assert_eq!(t.fillings[1], vec![vec![], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn empty_round_trip() {
        let c = ClaspSequence::singletons(vec![]);
        let l = Word::empty(Rank::FOUR);
        let t = word_to_tableau(&l, &c).unwrap();
        assert!(t.fillings.is_empty());
        assert_eq!(tableau_to_word(&t, &c, Rank::FOUR).unwrap(), l);
    }
}
