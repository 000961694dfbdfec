//! Verified search for rank 4 growth.
//!
//! Every local move consistent with the labels is a candidate. A move at
//! the top of a row is accepted only if, stacked on a grown web for the
//! row below, it yields a well-oriented configuration whose boundary word
//! is the row itself. Rows are memoised, so each row is grown once.

use std::collections::HashMap;

use super::{fire, row_word, Builder, Rhs, StrandLabel};
use crate::error::{Error, Result};
use crate::words::Rank;

type Path = Vec<(usize, Rhs)>;

fn complement(a: u8, b: u8) -> (u8, u8) {
    let v: Vec<u8> = (1..=4).filter(|&x| x != a && x != b).collect();
    (v[0], v[1])
}

/// Label-consistent moves for a pair of rank 4 strands.
fn candidates(x: StrandLabel, y: StrandLabel) -> Vec<Rhs> {
    use StrandLabel as S;
    let (a, b) = (x.label, y.label);
    let mut out = Vec::new();
    match (x.up, y.up) {
        (u, v) if u == v && a != b => {
            let (c, d) = complement(a, b);
            let (p, q) = if u { (S::down(c), S::down(d)) } else { (S::up(c), S::up(d)) };
            out.push(Rhs::Pair([p, q]));
            out.push(Rhs::Pair([q, p]));
            out.push(Rhs::Pair([y, x]));
            out.push(Rhs::Pair([x, y]));
        }
        (u, v) if u != v && a == b => {
            out.push(Rhs::Cap);
            for z in (1..=4).filter(|&z| z != a) {
                out.push(Rhs::Pair([S { label: z, up: !u }, S { label: z, up: u }]));
            }
        }
        (u, v) if u != v => out.push(Rhs::Pair([y, x])),
        _ => {}
    }
    out
}

fn is_lattice(row: &[StrandLabel]) -> bool {
    let mut c = [0i32; 4];
    for s in row {
        for (v, slot) in c.iter_mut().enumerate() {
            *slot += i32::from((v as u8 + 1 == s.label) != s.up);
        }
        if c.windows(2).any(|w| w[0] < w[1]) {
            return false;
        }
    }
    true
}

struct Search {
    memo: HashMap<Vec<StrandLabel>, Option<Path>>,
    checks: usize,
    budget: usize,
}

impl Search {
    fn verify(&mut self, row: &[StrandLabel], path: &Path) -> Result<bool> {
        self.checks += 1;
        if self.checks > self.budget {
            return Err(Error::Budget(self.budget));
        }
        let mut b = Builder::new(row);
        for &(i, rhs) in path {
            if fire(&mut b, i, rhs, Rank::FOUR).is_err() {
                return Ok(false);
            }
        }
        let Ok(d) = b.into_config() else { return Ok(false) };
        if !d.is_well_oriented() {
            return Ok(false);
        }
        let Ok(w) = d.to_web() else { return Ok(false) };
        Ok(w.boundary_word().ok() == Some(row_word(Rank::FOUR, row)?))
    }

    fn solve(&mut self, row: &[StrandLabel]) -> Result<Option<Path>> {
        if row.is_empty() {
            return Ok(Some(Vec::new()));
        }
        if let Some(p) = self.memo.get(row) {
            return Ok(p.clone());
        }
        // In progress: a cycle back here counts as failure.
        self.memo.insert(row.to_vec(), None);
        // Caps first: they shorten the row.
        for caps in [true, false] {
            for i in 0..row.len() - 1 {
                for rhs in candidates(row[i], row[i + 1]) {
                    if (rhs == Rhs::Cap) != caps {
                        continue;
                    }
                    let mut b = Builder::new(row);
                    if fire(&mut b, i, rhs, Rank::FOUR).is_err() {
                        continue;
                    }
                    let next = b.row();
                    if !is_lattice(&next) {
                        continue;
                    }
                    let Some(rest) = self.solve(&next)? else { continue };
                    let mut path = vec![(i, rhs)];
                    path.extend(rest);
                    if self.verify(row, &path)? {
                        self.memo.insert(row.to_vec(), Some(path.clone()));
                        return Ok(Some(path));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Moves growing `row` completely, each step verified.
pub(super) fn solve(row: &[StrandLabel], budget: usize) -> Result<Path> {
    let mut s = Search { memo: HashMap::new(), checks: 0, budget };
    s.solve(row)?.ok_or_else(|| Error::Growth("search exhausted without a valid web".into()))
}
