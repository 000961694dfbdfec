//! Boundary letters and words: lattice and balance predicates, component
//! words, descents, and enumeration of balanced lattice words.

use std::fmt;
use std::str::FromStr;

use crate::clasp::ClaspSequence;
use crate::error::{Error, Result};

/// The rank `r` of `SL_r`; only 2, 3 and 4 are supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rank(u8);

impl Rank {
    pub const TWO: Rank = Rank(2);
    pub const THREE: Rank = Rank(3);
    pub const FOUR: Rank = Rank(4);

    pub fn new(r: u8) -> Result<Rank> {
        match r {
            2..=4 => Ok(Rank(r)),
            _ => Err(Error::Rank(r)),
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn usize(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A boundary letter. Values are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Small(u8),
    Pair(u8, u8),
    Barred(u8),
}

impl Letter {
    pub fn pair(a: u8, b: u8) -> Letter {
        if a < b {
            Letter::Pair(a, b)
        } else {
            Letter::Pair(b, a)
        }
    }

    /// The fundamental weight index carried by the letter. Barred letters
    /// stand for the complement `(r-1)`-subset, so their size depends on `r`.
    pub fn size(self, r: Rank) -> u8 {
        match self {
            Letter::Small(_) => 1,
            Letter::Pair(..) => 2,
            Letter::Barred(_) => r.get() - 1,
        }
    }

    pub fn is_valid(self, r: Rank) -> bool {
        let ok = |a: u8| a >= 1 && a <= r.get();
        match self {
            Letter::Small(a) | Letter::Barred(a) => ok(a),
            Letter::Pair(a, b) => r.get() == 4 && ok(a) && ok(b) && a < b,
        }
    }

    /// Sorted subset of `[r]` the letter stands for (barred = complement).
    pub fn components(self, r: Rank) -> Vec<u8> {
        match self {
            Letter::Small(a) => vec![a],
            Letter::Pair(a, b) => vec![a, b],
            Letter::Barred(a) => (1..=r.get()).filter(|&x| x != a).collect(),
        }
    }

    /// Net contribution to the count of each value: `+1` per member for
    /// small and pair letters, `-1` on the letter for barred ones.
    fn add_counts(self, counts: &mut [i32]) {
        match self {
            Letter::Small(a) => counts[a as usize - 1] += 1,
            Letter::Pair(a, b) => {
                counts[a as usize - 1] += 1;
                counts[b as usize - 1] += 1;
            }
            Letter::Barred(a) => counts[a as usize - 1] -= 1,
        }
    }

    pub fn parse(token: &str, r: Rank) -> Result<Letter> {
        let bad = || Error::Letter { token: token.to_string(), r: r.get() };
        let digit = |c: char| c.to_digit(10).map(|d| d as u8).ok_or_else(bad);
        let chars: Vec<char> = token.chars().collect();
        let letter = match chars.as_slice() {
            ['-', c] => Letter::Barred(digit(*c)?),
            [c] => Letter::Small(digit(*c)?),
            [c, d] => {
                let (a, b) = (digit(*c)?, digit(*d)?);
                if a >= b {
                    return Err(bad());
                }
                Letter::Pair(a, b)
            }
            _ => return Err(bad()),
        };
        if !letter.is_valid(r) {
            return Err(bad());
        }
        Ok(letter)
    }

    /// All letters of a given size, in ascending order.
    pub fn all_of_size(size: u8, r: Rank) -> Vec<Letter> {
        let rr = r.get();
        let mut out = Vec::new();
        if size == 1 {
            out.extend((1..=rr).map(Letter::Small));
        }
        if size == 2 && rr == 4 {
            for a in 1..=4 {
                for b in a + 1..=4 {
                    out.push(Letter::Pair(a, b));
                }
            }
        }
        if rr >= 3 && size == rr - 1 {
            out.extend((1..=rr).map(Letter::Barred));
        }
        out
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Small(a) => write!(f, "{a}"),
            Letter::Pair(a, b) => write!(f, "{a}{b}"),
            Letter::Barred(a) => write!(f, "-{a}"),
        }
    }
}

/// A word of letters sharing one rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    r: Rank,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(r: Rank, letters: Vec<Letter>) -> Result<Word> {
        for &l in &letters {
            if !l.is_valid(r) {
                return Err(Error::Letter { token: l.to_string(), r: r.get() });
            }
        }
        Ok(Word { r, letters })
    }

    pub fn empty(r: Rank) -> Word {
        Word { r, letters: Vec::new() }
    }

    /// Whitespace-separated tokens. A digit string without whitespace is
    /// read as one small letter per digit, so `"1234"` is four letters.
    pub fn parse(s: &str, r: Rank) -> Result<Word> {
        let s = s.trim();
        let letters = if !s.contains(char::is_whitespace) && s.chars().all(|c| c.is_ascii_digit()) {
            s.chars().map(|c| Letter::parse(&c.to_string(), r)).collect::<Result<Vec<_>>>()?
        } else {
            s.split_whitespace().map(|t| Letter::parse(t, r)).collect::<Result<Vec<_>>>()?
        };
        Ok(Word { r, letters })
    }

    pub fn rank(&self) -> Rank {
        self.r
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn type_of(&self) -> Vec<u8> {
        self.letters.iter().map(|l| l.size(self.r)).collect()
    }

    pub fn is_sorted(&self) -> bool {
        self.type_of().windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_lattice(&self) -> bool {
        let mut counts = vec![0i32; self.r.usize()];
        for &l in &self.letters {
            l.add_counts(&mut counts);
            if counts.windows(2).any(|w| w[0] < w[1]) {
                return false;
            }
        }
        true
    }

    pub fn is_balanced(&self) -> bool {
        let mut counts = vec![0i32; self.r.usize()];
        for &l in &self.letters {
            l.add_counts(&mut counts);
        }
        counts.windows(2).all(|w| w[0] == w[1])
    }

    /// `L^(i)`: the `i`-th smallest component of every letter that has one.
    pub fn component_word(&self, i: usize) -> Vec<u8> {
        self.letters.iter().filter_map(|l| l.components(self.r).get(i.checked_sub(1)?).copied()).collect()
    }

    /// Descent at 1-based position `i` (between `w_i` and `w_{i+1}`).
    pub fn has_descent_at(&self, i: usize) -> Result<bool> {
        if i == 0 || i >= self.len() {
            return Err(Error::Position { pos: i, len: self.len() });
        }
        let (v, w) = (self.letters[i - 1], self.letters[i]);
        if v.size(self.r) > w.size(self.r) {
            return Err(Error::UnsortedPair(i));
        }
        Ok(is_descent(v, w, self.r))
    }

    pub fn has_c_descents(&self, c: &ClaspSequence) -> Result<bool> {
        if c.type_of() != self.type_of().as_slice() {
            return Err(Error::ClaspMismatch(format!(
                "clasp type {:?} vs word type {:?}",
                c.type_of(),
                self.type_of()
            )));
        }
        if !c.is_sorted() {
            return Err(Error::UnsortedClasp);
        }
        for range in c.intervals() {
            for i in range.start + 1..range.end {
                if self.has_descent_at(i)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    pub fn rotate_left(&self, k: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        Word { r: self.r, letters }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Rank {
    type Err = Error;
    fn from_str(s: &str) -> Result<Rank> {
        s.trim().parse::<u8>().map_err(|_| Error::Rank(0)).and_then(Rank::new)
    }
}

/// Descent by the case list: small `a<b`; barred `ā b̄` with `a>b`;
/// `1 1̄`; `a {b,c}` with `a<b`; `{a,b} c̄` with `c < min([4]∖{a,b})`;
/// `{a,b} {c,d}` with `a<c` or `b<d`. Requires `|v| <= |w|`.
pub fn is_descent(v: Letter, w: Letter, r: Rank) -> bool {
    use Letter::*;
    match (v, w) {
        (Small(a), Small(b)) => a < b,
        (Barred(a), Barred(b)) => a > b,
        (Small(a), Barred(b)) => a == 1 && b == 1,
        (Small(a), Pair(b, _)) => a < b,
        (Pair(a, b), Barred(c)) => {
            let m = (1..=r.get()).find(|&x| x != a && x != b).unwrap_or(u8::MAX);
            c < m
        }
        (Pair(a, b), Pair(c, d)) => a < c || b < d,
        _ => false,
    }
}

/// Gale-order form of the descent test: no descent iff `v^(k) >= w^(k)`
/// for every `k <= |v|`.
pub fn is_descent_gale(v: Letter, w: Letter, r: Rank) -> bool {
    let (cv, cw) = (v.components(r), w.components(r));
    cv.iter().zip(cw.iter()).any(|(x, y)| x < y)
}

/// All balanced lattice words of the given type, in lexicographic order.
pub fn enumerate_balanced_lattice(r: Rank, ty: &[u8]) -> Vec<Word> {
    let alphabets: Vec<Vec<Letter>> = ty.iter().map(|&s| Letter::all_of_size(s, r)).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(ty.len());
    let mut counts = vec![0i32; r.usize()];
    extend_lattice(r, &alphabets, &mut cur, &mut counts, &mut |w| out.push(w));
    out
}

fn extend_lattice(
    r: Rank,
    alphabets: &[Vec<Letter>],
    cur: &mut Vec<Letter>,
    counts: &mut Vec<i32>,
    emit: &mut dyn FnMut(Word),
) {
    let pos = cur.len();
    if pos == alphabets.len() {
        if counts.windows(2).all(|w| w[0] == w[1]) {
            emit(Word { r, letters: cur.clone() });
        }
        return;
    }
    // Remaining letters can raise the gap count1 - count_r by at most one each.
    let gap = counts[0] - counts[r.usize() - 1];
    if gap > (alphabets.len() - pos) as i32 {
        return;
    }
    for &l in &alphabets[pos] {
        let saved = counts.clone();
        l.add_counts(counts);
        if counts.windows(2).all(|w| w[0] >= w[1]) {
            cur.push(l);
            extend_lattice(r, alphabets, cur, counts, emit);
            cur.pop();
        }
        *counts = saved;
    }
}

/// `BL(C)`: balanced lattice words of `C`'s type with no `C`-descents.
pub fn enumerate_bl(r: Rank, c: &ClaspSequence) -> Result<Vec<Word>> {
    if !c.is_sorted() {
        return Err(Error::UnsortedClasp);
    }
    let mut out = Vec::new();
    for w in enumerate_balanced_lattice(r, c.type_of()) {
        if !w.has_c_descents(c)? {
            out.push(w);
        }
    }
    Ok(out)
}

/// Every type in `[r-1]^n`.
pub fn all_types(r: Rank, n: usize) -> Vec<Vec<u8>> {
    let k = r.get() - 1;
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=k).map(move |s| {
                    let mut t = t.clone();
                    t.push(s);
                    t
                })
            })
            .collect();
    }
    out
}
