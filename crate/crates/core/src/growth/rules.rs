//! Growth rule tables and their text format.

use std::fmt;

use super::StrandLabel;
use crate::error::{Error, Result};
use crate::words::Rank;

const RULES4: &str = include_str!("../../data/rules4.txt");
const RULES3: &str = include_str!("../../data/rules3.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Before,
    After,
}

/// Context a rule needs: scanning away from the pair on `side`, any run of
/// `skip` letters may be passed over, then the next letter must lie in
/// `any_of`. Running off the end of the row fails the test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub side: Side,
    pub any_of: Vec<StrandLabel>,
    pub skip: Vec<StrandLabel>,
}

impl Witness {
    pub fn holds(&self, row: &[StrandLabel], i: usize) -> bool {
        let first = match self.side {
            Side::After => row[i + 2..].iter().find(|c| !self.skip.contains(c)),
            Side::Before => row[..i].iter().rev().find(|c| !self.skip.contains(c)),
        };
        first.is_some_and(|c| self.any_of.contains(c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rhs {
    /// Join the two strands into a single edge.
    Cap,
    /// Trivalent vertex with one strand leaving downwards.
    Merge(StrandLabel),
    /// Two strands leaving downwards: a four-valent vertex at rank 4, an H
    /// at rank 3.
    Pair([StrandLabel; 2]),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthRule {
    pub lhs: [StrandLabel; 2],
    pub rhs: Rhs,
    pub witness: Option<Witness>,
}

impl GrowthRule {
    pub fn applies(&self, row: &[StrandLabel], i: usize) -> bool {
        i + 1 < row.len() && self.lhs == [row[i], row[i + 1]] && self.witness.as_ref().is_none_or(|w| w.holds(row, i))
    }

    pub fn is_gated(&self) -> bool {
        self.witness.is_some()
    }
}

fn token(t: &str) -> Option<StrandLabel> {
    let (up, digits) = match t.strip_prefix('-') {
        Some(d) => (true, d),
        None => (false, t),
    };
    let a: u8 = digits.parse().ok()?;
    (1..=9).contains(&a).then_some(StrandLabel { label: a, up })
}

fn tokens(s: &str, line: usize) -> Result<Vec<StrandLabel>> {
    s.split_whitespace()
        .map(|t| token(t).ok_or_else(|| Error::Rule { line, msg: format!("bad token {t:?}") }))
        .collect()
}

fn list(f: &mut fmt::Formatter<'_>, xs: &[StrandLabel]) -> fmt::Result {
    for (k, x) in xs.iter().enumerate() {
        if k > 0 {
            write!(f, " ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for GrowthRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} -> ", self.lhs[0], self.lhs[1])?;
        match self.rhs {
            Rhs::Cap => write!(f, "empty")?,
            Rhs::Merge(x) => write!(f, "{x}")?,
            Rhs::Pair([x, y]) => write!(f, "{x} {y}")?,
        }
        if let Some(w) = &self.witness {
            let side = if w.side == Side::After { "after" } else { "before" };
            write!(f, " [witness: {side} ")?;
            list(f, &w.any_of)?;
            if !w.skip.is_empty() {
                write!(f, "; skip ")?;
                list(f, &w.skip)?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleTable {
    r: Rank,
    rules: Vec<GrowthRule>,
}

impl RuleTable {
    /// The bundled table for rank 3 or 4.
    pub fn builtin(r: Rank) -> Result<RuleTable> {
        match r.get() {
            4 => RuleTable::parse(r, RULES4),
            3 => RuleTable::parse(r, RULES3),
            _ => Err(Error::Growth(format!("no rule table for rank {r}"))),
        }
    }

    pub fn parse(r: Rank, text: &str) -> Result<RuleTable> {
        let mut rules = Vec::new();
        for (ix, raw) in text.lines().enumerate() {
            let line = ix + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Rule { line, msg: msg.to_string() };
            let (main, wit) = match body.split_once('[') {
                Some((m, w)) => {
                    let w = w.trim().strip_suffix(']').ok_or_else(|| err("unclosed `[`"))?;
                    (m, Some(w))
                }
                None => (body, None),
            };
            let (lhs, rhs) = main.split_once("->").ok_or_else(|| err("missing `->`"))?;
            let lhs = tokens(lhs, line)?;
            let [a, b] = lhs[..] else { return Err(err("left side must have two letters")) };
            let rhs = match rhs.trim() {
                "empty" | "\u{2205}" => Rhs::Cap,
                s => match tokens(s, line)?[..] {
                    [x] => Rhs::Merge(x),
                    [x, y] => Rhs::Pair([x, y]),
                    _ => return Err(err("right side must have one or two letters")),
                },
            };
            let witness = match wit {
                None => None,
                Some(w) => {
                    let w = w.trim().strip_prefix("witness:").ok_or_else(|| err("expected `witness:`"))?;
                    let (want, skip) = w.split_once(';').unwrap_or((w, ""));
                    let want = want.trim();
                    let (side, rest) = if let Some(s) = want.strip_prefix("after") {
                        (Side::After, s)
                    } else if let Some(s) = want.strip_prefix("before") {
                        (Side::Before, s)
                    } else {
                        return Err(err("witness side must be `after` or `before`"));
                    };
                    let skip = skip.trim();
                    let skip = match skip.strip_prefix("skip") {
                        Some(s) => tokens(s, line)?,
                        None if skip.is_empty() => Vec::new(),
                        None => return Err(err("expected `skip` after `;`")),
                    };
                    let any_of = tokens(rest, line)?;
                    if any_of.is_empty() {
                        return Err(err("witness lists no letters"));
                    }
                    Some(Witness { side, any_of, skip })
                }
            };
            let rule = GrowthRule { lhs: [a, b], rhs, witness };
            check_rule(r, &rule).map_err(|m| err(&m))?;
            rules.push(rule);
        }
        Ok(RuleTable { r, rules })
    }

    pub fn rank(&self) -> Rank {
        self.r
    }

    pub fn rules(&self) -> &[GrowthRule] {
        &self.rules
    }

    /// First rule in file order applicable at position `i`.
    pub fn at(&self, row: &[StrandLabel], i: usize) -> Option<&GrowthRule> {
        self.rules.iter().find(|g| g.applies(row, i))
    }

    /// Positions with an applicable rule, left to right.
    pub fn applicable(&self, row: &[StrandLabel]) -> Vec<(usize, &GrowthRule)> {
        (0..row.len().saturating_sub(1)).filter_map(|i| self.at(row, i).map(|g| (i, g))).collect()
    }
}

impl fmt::Display for RuleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.rules {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Weight of a strand as counts per value: down `a` adds `e_a`, up `a`
/// adds every other unit vector.
pub(crate) fn weight(r: Rank, s: StrandLabel) -> Vec<i32> {
    (1..=r.get()).map(|v| i32::from((v == s.label) != s.up)).collect()
}

/// Static sanity: labels in range, and the two sides carry the same
/// weight modulo the all-ones vector.
fn check_rule(r: Rank, g: &GrowthRule) -> std::result::Result<(), String> {
    let rr = r.get();
    let mut all = g.lhs.to_vec();
    match g.rhs {
        Rhs::Cap => {}
        Rhs::Merge(x) => all.push(x),
        Rhs::Pair([x, y]) => all.extend([x, y]),
    }
    if let Some(w) = &g.witness {
        all.extend(&w.any_of);
        all.extend(&w.skip);
    }
    if let Some(x) = all.iter().find(|x| x.label > rr) {
        return Err(format!("label {x} out of range for rank {rr}"));
    }
    let sum = |xs: &[StrandLabel]| {
        let mut t = vec![0i32; rr as usize];
        for &x in xs {
            for (a, b) in t.iter_mut().zip(weight(r, x)) {
                *a += b;
            }
        }
        t
    };
    let left = sum(&g.lhs);
    let right = match g.rhs {
        Rhs::Cap => vec![0; rr as usize],
        Rhs::Merge(x) => sum(&[x]),
        Rhs::Pair(p) => sum(&p),
    };
    let d: Vec<i32> = left.iter().zip(&right).map(|(a, b)| a - b).collect();
    if d.iter().any(|&x| x != d[0]) {
        return Err("the two sides carry different weights".into());
    }
    Ok(())
}
