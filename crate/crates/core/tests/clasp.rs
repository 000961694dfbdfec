use std::collections::HashSet;

use claspweb::clasp::{
    dominates, functionals, has_bad_config, has_returning_trip, is_nonconvex, min_cut_functionals, ClaspSequence,
    PatternSet,
};
use claspweb::growth::grow;
use claspweb::hpg::{Color, Faces, HourglassGraph};
use claspweb::words::{all_types, enumerate_balanced_lattice, Rank, Word};

fn corpus(r: Rank, max_n: usize) -> Vec<(Word, HourglassGraph)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for ty in all_types(r, n) {
            for w in enumerate_balanced_lattice(r, &ty) {
                let g = grow(&w).unwrap().web;
                out.push((w, g));
            }
        }
    }
    out
}

fn check_equivalences(r: Rank, max_n: usize) {
    let mut checked = 0;
    for (w, g) in corpus(r, max_n) {
        for c in ClaspSequence::all_on(&w.type_of()) {
            for i in 0..c.len() {
                assert!(min_cut_functionals(&g, &c, i).unwrap().congruent, "{w} {:?}", c.sizes());
            }
            let nc = is_nonconvex(&g, &c).unwrap();
            let rt = has_returning_trip(&g, &c).unwrap();
            assert_eq!(nc, !rt, "{w} clasps {:?}", c.sizes());
            if c.is_sorted() {
                assert_eq!(nc, !w.has_c_descents(&c).unwrap(), "{w} clasps {:?}", c.sizes());
            }
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn nonconvex_iff_no_returning_trip_rank4() {
    check_equivalences(Rank::FOUR, 6);
}

#[test]
fn nonconvex_iff_no_returning_trip_rank3() {
    check_equivalences(Rank::THREE, 6);
}

#[test]
fn nonconvex_iff_no_returning_trip_rank2() {
    check_equivalences(Rank::TWO, 8);
}

#[test]
fn singleton_cut_costs() {
    let g = grow(&Word::parse("1 2 3 4", Rank::FOUR).unwrap()).unwrap().web;
    let c = ClaspSequence::singletons(vec![1, 1, 1, 1]);
    let cert = min_cut_functionals(&g, &c, 0).unwrap();
    assert_eq!(cert.minima, vec![3, 2, 1]);
    assert_eq!(cert.target, vec![3, 2, 1]);
    let c = ClaspSequence::new(vec![1, 1, 1, 1], vec![2, 1, 1]).unwrap();
    let cert = min_cut_functionals(&g, &c, 0).unwrap();
    assert_eq!(cert.minima, vec![2, 4, 2]);
    assert!(!is_nonconvex(&g, &c).unwrap());
    let whole = ClaspSequence::new(vec![1, 1, 1, 1], vec![4]).unwrap();
    assert_eq!(min_cut_functionals(&g, &whole, 0).unwrap().minima, vec![0, 0, 0]);
}

fn check_bad_configs(r: Rank, max_n: usize) {
    for (w, g) in corpus(r, max_n) {
        for c in ClaspSequence::all_on(&w.type_of()).into_iter().filter(ClaspSequence::is_sorted) {
            assert_eq!(has_bad_config(&g, &c).unwrap(), w.has_c_descents(&c).unwrap(), "{w} clasps {:?}", c.sizes());
        }
    }
}

#[test]
fn bad_config_iff_descent_rank4() {
    check_bad_configs(Rank::FOUR, 6);
}

#[test]
fn bad_config_iff_descent_rank3() {
    check_bad_configs(Rank::THREE, 6);
}

#[test]
fn bad_config_iff_descent_rank2() {
    check_bad_configs(Rank::TWO, 8);
}

#[test]
fn bad_configs_on_larger_words() {
    for (r, n) in [(Rank::FOUR, 8), (Rank::THREE, 9), (Rank::TWO, 10)] {
        let ty = vec![1u8; n];
        let c = ClaspSequence::singletons(ty.clone());
        let pairs = ClaspSequence::new(ty.clone(), vec![2; n / 2]).ok();
        for w in enumerate_balanced_lattice(r, &ty) {
            let g = grow(&w).unwrap().web;
            for c in std::iter::once(&c).chain(pairs.as_ref()) {
                assert_eq!(has_bad_config(&g, c).unwrap(), w.has_c_descents(c).unwrap(), "{w} {:?}", c.sizes());
                assert_eq!(is_nonconvex(&g, c).unwrap(), !w.has_c_descents(c).unwrap(), "{w} {:?}", c.sizes());
            }
        }
    }
}

#[test]
fn builtin_patterns_parse_and_round_trip() {
    for r in [Rank::TWO, Rank::THREE, Rank::FOUR] {
        let set = PatternSet::builtin(r).unwrap();
        assert!(!set.patterns.is_empty());
        let again = PatternSet::parse(r, &set.to_string()).unwrap();
        assert_eq!(again, set);
    }
}

#[test]
fn unsorted_clasp_is_rejected_by_bad_config() {
    let g = grow(&Word::parse("12 3 4", Rank::FOUR).unwrap()).unwrap().web;
    let c = ClaspSequence::new(vec![2, 1, 1], vec![2, 1]).unwrap();
    assert!(has_bad_config(&g, &c).is_err());
    let c = ClaspSequence::new(vec![2, 1, 1], vec![1, 2]).unwrap();
    assert!(has_bad_config(&g, &c).is_ok());
}

/// Weight picked up when the clasp side endpoint of `e` is `v`.
fn oracle_weight(g: &HourglassGraph, e: usize, v: usize) -> usize {
    let r = g.rank().usize();
    if r == 2 {
        1
    } else if g.edge(e).m == 2 {
        2
    } else if g.vertex(v).color == Color::Black {
        1
    } else {
        r - 1
    }
}

/// Minimum of each functional over every simple dual path, finding the
/// clasp side of each crossed edge by flood fill.
fn brute_minima(g: &HourglassGraph, c: &ClaspSequence, i: usize) -> Vec<i64> {
    let r = g.rank().usize();
    let n = g.n();
    let faces = Faces::of(g);
    let range = c.intervals()[i].clone();
    let start = faces.boundary_face((range.start + n - 1) % n);
    let end = faces.boundary_face(range.end - 1);
    let seeds: Vec<usize> = range.clone().map(|j| g.boundary()[j]).collect();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); faces.count()];
    for e in 0..g.edges().len() {
        let (a, b) = (faces.right_of_edge(e), faces.left_of_edge(e));
        if a != b {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
    }
    let mut best = vec![i64::MAX; r - 1];
    let mut seen = vec![false; faces.count()];
    let mut cut = Vec::new();
    fn go(
        f: usize,
        end: usize,
        adj: &[Vec<(usize, usize)>],
        seen: &mut Vec<bool>,
        cut: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if f == end {
            visit(cut);
            return;
        }
        seen[f] = true;
        for &(to, e) in &adj[f] {
            if !seen[to] {
                cut.push(e);
                go(to, end, adj, seen, cut, visit);
                cut.pop();
            }
        }
        seen[f] = false;
    }
    let mut visit = |cut: &[usize]| {
        let removed: HashSet<usize> = cut.iter().copied().collect();
        let mut side: HashSet<usize> = seeds.iter().copied().collect();
        let mut stack = seeds.clone();
        while let Some(v) = stack.pop() {
            for e in g.incident_edges(v) {
                let u = g.edge(e).other(v);
                if !removed.contains(&e) && side.insert(u) {
                    stack.push(u);
                }
            }
        }
        let mut counts = vec![0u32; r - 1];
        for &e in cut {
            let ed = g.edge(e);
            let v = if side.contains(&ed.black) { ed.black } else { ed.white };
            counts[oracle_weight(g, e, v) - 1] += 1;
        }
        for (b, f) in best.iter_mut().zip(functionals(r as u8, &counts)) {
            *b = (*b).min(f);
        }
    };
    go(start, end, &adj, &mut seen, &mut cut, &mut visit);
    best
}

#[test]
fn cut_minima_match_exhaustive_search() {
    let mut checked = 0;
    for (r, max_n) in [(Rank::FOUR, 5), (Rank::THREE, 6), (Rank::TWO, 6)] {
        for (w, g) in corpus(r, max_n) {
            if Faces::of(&g).count() > 14 {
                continue;
            }
            for c in ClaspSequence::all_on(&w.type_of()) {
                for i in 0..c.len() {
                    let cert = min_cut_functionals(&g, &c, i).unwrap();
                    assert_eq!(cert.minima, brute_minima(&g, &c, i), "{w} {:?} clasp {i}", c.sizes());
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn convexity_survives_moves() {
    for (w, g) in corpus(Rank::FOUR, 6) {
        let clasps = ClaspSequence::all_on(&w.type_of());
        let base: Vec<bool> = clasps.iter().map(|c| is_nonconvex(&g, c).unwrap()).collect();
        for mv in g.applicable_moves() {
            let h = g.apply_move(mv).unwrap();
            let got: Vec<bool> = clasps.iter().map(|c| is_nonconvex(&h, c).unwrap()).collect();
            assert_eq!(got, base, "{w} {mv:?}");
        }
    }
}

#[test]
fn convexity_rotates_with_the_boundary() {
    for (w, g) in corpus(Rank::THREE, 6) {
        let ty = w.type_of();
        for c in ClaspSequence::all_on(&ty) {
            let k = c.sizes()[0];
            if k == ty.len() {
                continue;
            }
            let h = g.rotate_boundary(k);
            let d = c.rotate_left(k).unwrap();
            assert_eq!(is_nonconvex(&h, &d).unwrap(), is_nonconvex(&g, &c).unwrap(), "{w} {:?}", c.sizes());
        }
    }
}

#[test]
fn dominance_examples() {
    // omega_2 versus 2 omega_1 at rank 4.
    assert!(dominates(4, &[2, 0, 0], &[0, 1, 0]));
    assert!(!dominates(4, &[0, 1, 0], &[2, 0, 0]));
    assert!(!dominates(4, &[1, 0, 0], &[0, 0, 1]));
}
