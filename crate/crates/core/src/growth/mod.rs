//! Growth: from a balanced lattice word to a web.
//!
//! Rank 4 words are oscillized, grown as symmetrized six-vertex
//! configurations from a rule table, converted and de-oscillized. Rank 3
//! uses the Khovanov-Kuperberg table and yields trivalent webs directly.
//! Rank 2 builds the noncrossing matching.

pub mod builder;
pub mod rules;
mod search;

pub use builder::{Builder, StrandLabel};
pub use rules::{GrowthRule, Rhs, RuleTable, Side, Witness};

use crate::error::{Error, Result};
use crate::hpg::{Color, HourglassGraph};
use crate::words::{Letter, Rank, Word};

/// Which applicable position fires next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    Leftmost,
    Rightmost,
    /// Pseudo-random choice among applicable positions.
    Shuffled(u64),
}

/// One fired rule: the row before, the position and what was put there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthStep {
    pub row: Vec<StrandLabel>,
    pub at: usize,
    pub rhs: Rhs,
}

#[derive(Debug, Clone)]
pub struct Growth {
    pub web: HourglassGraph,
    pub steps: Vec<GrowthStep>,
    /// The rule table got stuck or produced a wrong web and the verified
    /// search finished the job.
    pub searched: bool,
}

/// Dangling strands for a word: barred letters point up, a pair letter
/// becomes two downward strands. Also returns the pair positions.
pub fn oscillized_row(w: &Word) -> (Vec<StrandLabel>, Vec<usize>) {
    let mut row = Vec::new();
    let mut pairs = Vec::new();
    for &x in w.letters() {
        match x {
            Letter::Small(a) => row.push(StrandLabel::down(a)),
            Letter::Barred(a) => row.push(StrandLabel::up(a)),
            Letter::Pair(a, b) => {
                pairs.push(row.len());
                row.push(StrandLabel::down(a));
                row.push(StrandLabel::down(b));
            }
        }
    }
    (row, pairs)
}

pub(crate) fn row_word(r: Rank, row: &[StrandLabel]) -> Result<Word> {
    let letters = row.iter().map(|s| if s.up { Letter::Barred(s.label) } else { Letter::Small(s.label) }).collect();
    Word::new(r, letters)
}

pub(crate) fn fire(b: &mut Builder, i: usize, rhs: Rhs, r: Rank) -> Result<()> {
    match rhs {
        Rhs::Cap => b.cap(i),
        Rhs::Merge(x) => {
            b.merge(i, x);
            Ok(())
        }
        Rhs::Pair(p) if r.get() == 3 => b.h(i, p),
        Rhs::Pair(p) => {
            b.vertex(i, p);
            Ok(())
        }
    }
}

/// Convert a finished builder into an hourglass plabic graph.
pub(crate) fn finish(b: &Builder, r: Rank, pairs: &[usize]) -> Result<HourglassGraph> {
    match r.get() {
        4 => {
            let d = b.into_config()?;
            if !d.is_well_oriented() {
                return Err(Error::Growth("six-vertex configuration is not well-oriented".into()));
            }
            d.to_web()?.deoscillize(pairs)
        }
        _ => b.into_simple_web(r),
    }
}

/// Cheap xorshift so schedules are reproducible without a dependency.
fn next_rand(state: &mut u64) -> u64 {
    let mut x = *state;
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    *state = x;
    x
}

/// Run the rule table alone. Fails when no rule applies while strands
/// remain.
pub fn grow_with(w: &Word, table: &RuleTable, schedule: Schedule) -> Result<(HourglassGraph, Vec<GrowthStep>)> {
    let r = w.rank();
    if table.rank() != r {
        return Err(Error::Growth(format!("rule table is for rank {}, word has rank {r}", table.rank())));
    }
    check_input(w)?;
    let (row0, pairs) = oscillized_row(w);
    let mut b = Builder::new(&row0);
    let mut steps = Vec::new();
    let mut seed = match schedule {
        Schedule::Shuffled(s) => s | 1,
        _ => 1,
    };
    while !b.is_done() {
        let row = b.row();
        let options = table.applicable(&row);
        let pick = match schedule {
            Schedule::Leftmost => options.first(),
            Schedule::Rightmost => options.last(),
            Schedule::Shuffled(_) if options.is_empty() => None,
            Schedule::Shuffled(_) => options.get(next_rand(&mut seed) as usize % options.len()),
        };
        let Some(&(i, g)) = pick else {
            let shown: Vec<String> = row.iter().map(|s| s.to_string()).collect();
            return Err(Error::Growth(format!("no rule applies to dangling row {}", shown.join(" "))));
        };
        fire(&mut b, i, g.rhs, r)?;
        steps.push(GrowthStep { row, at: i, rhs: g.rhs });
    }
    Ok((finish(&b, r, &pairs)?, steps))
}

fn check_input(w: &Word) -> Result<()> {
    if !w.is_lattice() || !w.is_balanced() {
        return Err(Error::Growth(format!("{w} is not a balanced lattice word")));
    }
    Ok(())
}

/// Noncrossing matching for rank 2: `1` opens an arc, `2` closes the most
/// recent open one. Each arc passes through a white vertex of degree two.
pub fn grow_matching(w: &Word) -> Result<HourglassGraph> {
    check_input(w)?;
    let n = w.len();
    let mut colors: Vec<(Color, bool)> = vec![(Color::Black, true); n];
    let mut edges = Vec::new();
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut open = Vec::new();
    for (j, &x) in w.letters().iter().enumerate() {
        match x {
            Letter::Small(1) => open.push(j),
            Letter::Small(2) => {
                let i = open.pop().ok_or_else(|| Error::Growth("unmatched closing letter".into()))?;
                let v = colors.len();
                colors.push((Color::White, false));
                edges.push((i, v, 1));
                edges.push((j, v, 1));
                rot[i].push(edges.len() - 2);
                rot[j].push(edges.len() - 1);
                // The arc hangs below the boundary line: from the right end
                // clockwise round to the left end.
                rot.push(vec![edges.len() - 1, edges.len() - 2]);
            }
            _ => return Err(Error::Growth(format!("letter {x} not allowed at rank 2"))),
        }
    }
    HourglassGraph::from_rotations(Rank::TWO, &colors, &edges, &rot, &(0..n).collect::<Vec<_>>())
}

/// Default search budget (verified steps) when the rule table needs help.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Grow with the bundled table, falling back to the verified search.
pub fn grow(w: &Word) -> Result<Growth> {
    grow_budgeted(w, None, DEFAULT_BUDGET)
}

/// Grow with an optional custom table. The result is always checked:
/// boundary word equal to `w` and, at rank 4, a well-oriented
/// configuration. At rank 4 a failed check triggers the search.
pub fn grow_budgeted(w: &Word, table: Option<&RuleTable>, budget: usize) -> Result<Growth> {
    let r = w.rank();
    if r.get() == 2 {
        let web = grow_matching(w)?;
        return Ok(Growth { web, steps: Vec::new(), searched: false });
    }
    let owned;
    let table = match table {
        Some(t) => t,
        None => {
            owned = RuleTable::builtin(r)?;
            &owned
        }
    };
    let first = grow_with(w, table, Schedule::Leftmost);
    if let Ok((web, steps)) = &first {
        if web.boundary_word().as_ref() == Ok(w) {
            return Ok(Growth { web: web.clone(), steps: steps.clone(), searched: false });
        }
    }
    if r.get() != 4 {
        return match first {
            Err(e) => Err(e),
            Ok(_) => Err(Error::Growth(format!("rule table grew a web whose boundary word is not {w}"))),
        };
    }
    let (row, pairs) = oscillized_row(w);
    let path = search::solve(&row, budget)?;
    let mut b = Builder::new(&row);
    let mut steps = Vec::new();
    for (i, rhs) in path {
        steps.push(GrowthStep { row: b.row(), at: i, rhs });
        fire(&mut b, i, rhs, r)?;
    }
    let web = finish(&b, r, &pairs)?;
    if web.boundary_word()? != *w {
        return Err(Error::Growth(format!("search result does not reproduce {w}")));
    }
    Ok(Growth { web, steps, searched: true })
}

/// Grow `w` under `k` schedules (leftmost, rightmost, then shuffled) with
/// the bundled table, and report whether all results share their trip
/// permutations. Schedules that get stuck count as disagreement.
pub fn grow_class_invariance_check(w: &Word, k: usize) -> Result<bool> {
    let r = w.rank();
    if r.get() == 2 {
        return Ok(true);
    }
    let table = RuleTable::builtin(r)?;
    let mut seen = None;
    for j in 0..k {
        let s = match j {
            0 => Schedule::Leftmost,
            1 => Schedule::Rightmost,
            _ => Schedule::Shuffled(0x9e37_79b9_7f4a_7c15 ^ j as u64),
        };
        let Ok((web, _)) = grow_with(w, &table, s) else { return Ok(false) };
        let fp = web.trips()?.fingerprint();
        match &seen {
            None => seen = Some(fp),
            Some(x) if *x == fp => {}
            Some(_) => return Ok(false),
        }
    }
    Ok(true)
}
