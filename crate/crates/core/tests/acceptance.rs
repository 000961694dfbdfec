//! Acceptance suite: one PASS/FAIL line per criterion, exact equality
//! throughout. Runs without the libtest harness so the lines always show.

use std::collections::{HashMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use claspweb::clasp::{has_bad_config, has_returning_trip, is_nonconvex, min_cut_functionals, ClaspSequence};
use claspweb::growth::grow;
use claspweb::hpg::{Color, Faces, HourglassGraph, Move, MoveKind};
use claspweb::rep::{
    clasped_rank, evaluate_web, in_kernel_cached, is_invariant, rank_of, InvariantFunctional, IrrepCache,
};
use claspweb::sixvertex::{SixVertexConfig, SvMove};
use claspweb::swap::{sort_boundary, swap_adjacent, MoveClass, Special, SwapStep};
use claspweb::tableaux::{clasp_weights, dim_invariant_space, rectangular_tableaux, Partition};
use claspweb::words::{all_types, enumerate_balanced_lattice, enumerate_bl, Rank, Word};

const BUDGET: usize = 100_000;

type Check = std::result::Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Web {
    word: Word,
    graph: HourglassGraph,
    functional: InvariantFunctional,
}

/// Every basis web of every type up to `max_n`, grouped by type.
fn corpus(r: Rank, max_n: usize) -> Vec<(Vec<u8>, Vec<Web>)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for ty in all_types(r, n) {
            let webs: Vec<Web> = enumerate_balanced_lattice(r, &ty)
                .into_iter()
                .map(|word| {
                    let graph = grow(&word).unwrap().web;
                    let functional = evaluate_web(&graph);
                    Web { word, graph, functional }
                })
                .collect();
            out.push((ty, webs));
        }
    }
    out
}

fn fundamentals(ty: &[u8]) -> Vec<Partition> {
    ty.iter().map(|&a| Partition::fundamental(a)).collect()
}

/// Noncrossing perfect matchings of `2n` points, by first-partner recursion.
fn matchings(n: usize) -> u64 {
    let mut m = vec![1u64; n + 1];
    for k in 1..=n {
        m[k] = (0..k).map(|j| m[j] * m[k - 1 - j]).sum();
    }
    m[n]
}

fn catalan() -> Check {
    let mut counts = Vec::new();
    for n in 1..=5 {
        let keys: HashSet<String> = enumerate_balanced_lattice(Rank::TWO, &vec![1; 2 * n])
            .iter()
            .map(|w| grow(w).unwrap().web.canonical_key())
            .collect();
        ensure(keys.len() as u64 == matchings(n), || format!("n={n}: {} webs", keys.len()))?;
        counts.push(keys.len());
    }
    Ok(format!("{counts:?}"))
}

fn round_trip(r: Rank, max_n: usize, ones: usize) -> Check {
    let mut words: Vec<Word> =
        (1..=max_n).flat_map(|n| all_types(r, n)).flat_map(|t| enumerate_balanced_lattice(r, &t)).collect();
    let extra = enumerate_balanced_lattice(r, &vec![1; ones]);
    let extra_len = extra.len();
    words.extend(extra);
    for w in &words {
        let got = grow(w).map_err(|e| format!("{w}: {e}"))?.web.boundary_word().map_err(|e| e.to_string())?;
        ensure(got == *w, || format!("{w} came back as {got}"))?;
    }
    Ok(format!("{} words, {extra_len} of type 1^{ones}", words.len()))
}

fn counting(r: Rank, max_n: usize) -> Check {
    let mut checked = 0;
    for n in 1..=max_n {
        for ty in all_types(r, n) {
            for c in ClaspSequence::all_on(&ty).into_iter().filter(ClaspSequence::is_sorted) {
                let ws = clasp_weights(&c);
                let bl = enumerate_bl(r, &c).map_err(|e| e.to_string())?.len() as u64;
                let rt = rectangular_tableaux(&ws, r.usize()).len() as u64;
                let d = dim_invariant_space(&ws, r.usize());
                ensure(bl == rt && rt == d, || format!("{ty:?} {:?}: {bl} {rt} {d}", c.sizes()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} sorted clasp sequences"))
}

fn named_ranks() -> Check {
    for (ty, want) in [(vec![1, 1, 1, 1], 1), (vec![1, 2, 1], 1), (vec![2, 2], 1), (vec![1; 8], 14)] {
        let fs: Vec<_> =
            enumerate_balanced_lattice(Rank::FOUR, &ty).iter().map(|w| evaluate_web(&grow(w).unwrap().web)).collect();
        let got = rank_of(&fs).map_err(|e| e.to_string())?;
        ensure(got == want && dim_invariant_space(&fundamentals(&ty), 4) == want as u64, || {
            format!("{ty:?}: rank {got}, want {want}")
        })?;
    }
    Ok("ranks 1, 1, 1, 14".into())
}

/// Criteria 5 and 6 share the kernel computations.
struct ClaspedOutcome {
    quintuple: Check,
    basis: Check,
}

fn clasped(r: Rank, corpus: &[(Vec<u8>, Vec<Web>)]) -> ClaspedOutcome {
    let mut cache = IrrepCache::default();
    let (mut points, mut seqs) = (0usize, 0usize);
    let mut quintuple = Ok(());
    let mut basis = Ok(());
    for (ty, webs) in corpus {
        if webs.is_empty() {
            continue;
        }
        for c in ClaspSequence::all_on(ty) {
            let mut alive = Vec::new();
            for web in webs {
                let k = in_kernel_cached(&web.functional, &c, &mut cache).unwrap();
                let mut agree =
                    k != is_nonconvex(&web.graph, &c).unwrap() && k == has_returning_trip(&web.graph, &c).unwrap();
                if c.is_sorted() {
                    agree &= k == web.word.has_c_descents(&c).unwrap() && k == has_bad_config(&web.graph, &c).unwrap();
                }
                if !agree && quintuple.is_ok() {
                    quintuple = Err(format!("{} clasps {:?}", web.word, c.sizes()));
                }
                if !k {
                    alive.push(web.functional.clone());
                }
                points += 1;
            }
            let d = dim_invariant_space(&clasp_weights(&c), r.usize());
            let rank = clasped_rank(&alive, &c, &mut cache).unwrap() as u64;
            if (alive.len() as u64 != d || rank != d) && basis.is_ok() {
                basis = Err(format!("{ty:?} {:?}: {} alive, rank {rank}, dim {d}", c.sizes(), alive.len()));
            }
            seqs += 1;
        }
    }
    ClaspedOutcome {
        quintuple: quintuple.map(|_| format!("{points} (web, clasp) pairs")),
        basis: basis.map(|_| format!("{seqs} clasp sequences")),
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn swap_laws(r: Rank, max_n: usize) -> Check {
    let mut classes: HashMap<Vec<u8>, HashSet<MoveClass>> = HashMap::new();
    let mut of = |ty: &[u8]| -> HashSet<MoveClass> {
        classes
            .entry(ty.to_vec())
            .or_insert_with(|| {
                enumerate_balanced_lattice(r, ty)
                    .iter()
                    .map(|w| MoveClass::of(&grow(w).unwrap().web, BUDGET).unwrap())
                    .collect()
            })
            .clone()
    };
    let (mut swaps, mut sorts) = (0, 0);
    for n in 2..=max_n {
        for ty in all_types(r, n).into_iter().filter(|t| t.iter().all(|&a| a != 2)) {
            let mine = of(&ty);
            for i in 0..n {
                let j = (i + 1) % n;
                if ty[i] == ty[j] {
                    continue;
                }
                let mut t2 = ty.clone();
                t2.swap(i, j);
                let theirs = of(&t2);
                ensure(mine.len() == theirs.len(), || format!("{ty:?} vs {t2:?}: class counts differ"))?;
                let mut t: Vec<usize> = (0..n).collect();
                t.swap(i, j);
                for c in &mine {
                    let s = swap_adjacent(c.graph(), i, BUDGET).map_err(|e| e.to_string())?;
                    ensure(theirs.contains(&s.class), || format!("{ty:?} at {i}: image outside the basis"))?;
                    let back = swap_adjacent(s.class.graph(), i, BUDGET).map_err(|e| e.to_string())?;
                    ensure(back.class == *c, || format!("{ty:?} at {i}: not an involution"))?;
                    if r.get() == 4 {
                        let (b, a) = (c.graph().trips().unwrap(), s.class.graph().trips().unwrap());
                        let (p1, p2, p3) = (b.perm(1), b.perm(2), b.perm(3));
                        let [SwapStep::Oscillating(kind)] = s.steps[..] else {
                            return Err(format!("{ty:?} at {i}: expected one oscillating step"));
                        };
                        let want = match kind {
                            Special::Edge => [p1, p2, p3],
                            Special::CommonNeighbor | Special::OrientedLadder
                                if (kind == Special::CommonNeighbor) == (ty[i] == 1) =>
                            {
                                [compose(&p1, &t), compose(&t, &compose(&p2, &t)), compose(&t, &p3)]
                            }
                            Special::CommonNeighbor | Special::OrientedLadder => {
                                [compose(&t, &p1), compose(&t, &compose(&p2, &t)), compose(&p3, &t)]
                            }
                            Special::AlternatingPath => {
                                [compose(&t, &compose(&p1, &t)), p2, compose(&t, &compose(&p3, &t))]
                            }
                        };
                        ensure([a.perm(1), a.perm(2), a.perm(3)] == want, || {
                            format!("{ty:?} at {i}: trip law ({kind})")
                        })?;
                    }
                    swaps += 1;
                }
            }
            for c in &mine {
                for cs in ClaspSequence::all_on(&ty) {
                    let g = c.graph();
                    let (img, sorted, _) = sort_boundary(g, &cs, BUDGET).map_err(|e| e.to_string())?;
                    let h = img.graph();
                    ensure(
                        is_nonconvex(g, &cs).unwrap() == is_nonconvex(h, &sorted).unwrap()
                            && has_returning_trip(g, &cs).unwrap() == has_returning_trip(h, &sorted).unwrap(),
                        || format!("{ty:?} {:?}: sorting changed convexity", cs.sizes()),
                    )?;
                    sorts += 1;
                }
            }
        }
    }
    Ok(format!("{swaps} swaps, {sorts} sorts"))
}

fn invariance(corpus: &[(Vec<u8>, Vec<Web>)], extra: &[u8]) -> Check {
    let mut count = 0;
    let extra_webs: Vec<InvariantFunctional> =
        enumerate_balanced_lattice(Rank::FOUR, extra).iter().map(|w| evaluate_web(&grow(w).unwrap().web)).collect();
    for f in corpus.iter().flat_map(|(_, ws)| ws.iter().map(|w| &w.functional)).chain(&extra_webs) {
        ensure(!f.is_zero() && is_invariant(f), || format!("type {:?}: not a nonzero invariant", f.ty))?;
        count += 1;
    }
    Ok(format!("{count} webs"))
}

/// Checks one move at `g`: trips, convexity, well-orientedness and the
/// matching six-vertex move.
fn check_move(
    g: &HourglassGraph,
    mv: Move,
    clasps: &[ClaspSequence],
    osc: bool,
) -> std::result::Result<HourglassGraph, String> {
    let h = g.apply_move(mv).map_err(|e| e.to_string())?;
    ensure(h.trips().unwrap().fingerprint() == g.trips().unwrap().fingerprint(), || format!("{mv:?} moved trips"))?;
    for c in clasps {
        ensure(is_nonconvex(&h, c).unwrap() == is_nonconvex(g, c).unwrap(), || format!("{mv:?} changed convexity"))?;
    }
    // The six-vertex map needs contracted webs on both sides.
    if osc && g.is_contracted() && h.is_contracted() {
        let d = SixVertexConfig::from_web(g).unwrap();
        let e = SixVertexConfig::from_web(&h).unwrap();
        ensure(e.is_well_oriented(), || format!("{mv:?} lost well-orientedness"))?;
        let key = e.canonical_key();
        let images = |yb: bool| {
            d.moves()
                .iter()
                .filter(|m| matches!(m, SvMove::YangBaxter { .. }) == yb)
                .any(|m| d.apply(m).map(|x| x.canonical_key() == key).unwrap_or(false))
        };
        let ok = match mv.kind() {
            MoveKind::Contract | MoveKind::Uncontract => key == d.canonical_key(),
            MoveKind::Benzene => images(true),
            MoveKind::Square => images(false),
        };
        ensure(ok, || format!("{mv:?} is not intertwined"))?;
    }
    Ok(h)
}

fn move_invariance(corpus: &[(Vec<u8>, Vec<Web>)]) -> Check {
    let mut counts: HashMap<MoveKind, usize> = HashMap::new();
    for (ty, webs) in corpus {
        let osc = ty.iter().all(|&a| a != 2);
        let clasps = ClaspSequence::all_on(ty);
        for web in webs {
            let g = &web.graph;
            let at = |e: String| format!("{}: {e}", web.word);
            for mv in g.applicable_moves().into_iter().chain(g.uncontraction_sites()) {
                let h = check_move(g, mv, &clasps, osc).map_err(at)?;
                *counts.entry(mv.kind()).or_default() += 1;
                if mv.kind() == MoveKind::Uncontract {
                    for back in h.applicable_moves().into_iter().filter(|m| m.kind() == MoveKind::Contract) {
                        let k = check_move(&h, back, &clasps, osc).map_err(at)?;
                        if osc && k.is_contracted() {
                            let same = SixVertexConfig::from_web(&k).unwrap().canonical_key()
                                == SixVertexConfig::from_web(g).unwrap().canonical_key();
                            ensure(same, || at(format!("{back:?} after {mv:?} changed the configuration")))?;
                        }
                        *counts.entry(MoveKind::Contract).or_default() += 1;
                    }
                }
            }
        }
    }
    let mut kinds: Vec<String> = counts.iter().map(|(k, v)| format!("{k} {v}")).collect();
    kinds.sort();
    Ok(kinds.join(", "))
}

/// Weight of a crossing, restated from the definition.
fn oracle_weight(g: &HourglassGraph, e: usize, v: usize) -> u8 {
    let r = g.rank().get();
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

/// `r L_k` of a weight given as fundamental counts, from the inverse
/// Cartan matrix.
fn scaled_functionals(r: usize, counts: &[u32]) -> Vec<i64> {
    (1..r)
        .map(|k| {
            counts
                .iter()
                .enumerate()
                .map(|(j, &c)| {
                    let j = j + 1;
                    c as i64 * (k.min(j) * r - k * j) as i64
                })
                .sum()
        })
        .collect()
}

fn brute_minima(g: &HourglassGraph, c: &ClaspSequence, i: usize) -> Vec<i64> {
    let r = g.rank().usize();
    let n = g.n();
    let faces = Faces::of(g);
    let range = c.intervals()[i].clone();
    let start = faces.boundary_face((range.start + n - 1) % n);
    let end = faces.boundary_face(range.end - 1);
    let seeds: Vec<usize> = range.map(|j| g.boundary()[j]).collect();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); faces.count()];
    for e in 0..g.edges().len() {
        let (a, b) = (faces.right_of_edge(e), faces.left_of_edge(e));
        if a != b {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
    }
    let mut best = vec![i64::MAX; r - 1];
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
            counts[oracle_weight(g, e, v) as usize - 1] += 1;
        }
        for (b, f) in best.iter_mut().zip(scaled_functionals(r, &counts)) {
            *b = (*b).min(f);
        }
    };
    let mut seen = vec![false; faces.count()];
    let mut stack: Vec<(usize, usize, Option<usize>)> = vec![(start, 0, None)];
    let mut cut: Vec<usize> = Vec::new();
    // Iterative simple-path DFS: (face, next neighbour index, edge used to enter).
    while let Some(&mut (f, ref mut next, _)) = stack.last_mut() {
        if *next == 0 {
            if f == end {
                visit(&cut);
                let (_, _, via) = stack.pop().unwrap();
                if via.is_some() {
                    cut.pop();
                }
                continue;
            }
            seen[f] = true;
        }
        if let Some(&(to, e)) = adj[f].get(*next) {
            *next += 1;
            if !seen[to] {
                cut.push(e);
                stack.push((to, 0, Some(e)));
            }
        } else {
            seen[f] = false;
            let (_, _, via) = stack.pop().unwrap();
            if via.is_some() {
                cut.pop();
            }
        }
    }
    best
}

fn cut_oracle() -> Check {
    let mut checked = 0;
    for (r, max_n) in [(Rank::FOUR, 6), (Rank::THREE, 6), (Rank::TWO, 8)] {
        for n in 1..=max_n {
            for ty in all_types(r, n) {
                for w in enumerate_balanced_lattice(r, &ty) {
                    let g = grow(&w).unwrap().web;
                    if Faces::of(&g).count() > 12 {
                        continue;
                    }
                    for c in ClaspSequence::all_on(&ty) {
                        for i in 0..c.len() {
                            let got = min_cut_functionals(&g, &c, i).map_err(|e| e.to_string())?.minima;
                            let want = brute_minima(&g, &c, i);
                            ensure(got == want, || format!("{w} {:?} clasp {i}: {got:?} vs {want:?}", c.sizes()))?;
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{checked} (web, clasp) minima"))
}

fn rank3_suite() -> Check {
    let r = Rank::THREE;
    let d3 = dim_invariant_space(&fundamentals(&[1; 3]), 3);
    let d6 = dim_invariant_space(&fundamentals(&[1; 6]), 3);
    ensure(d3 == 1 && d6 == 5, || format!("dims {d3} and {d6}"))?;
    round_trip(r, 6, 6)?;
    counting(r, 8)?;
    let corpus = corpus(r, 6);
    for (ty, webs) in &corpus {
        let fs: Vec<_> = webs.iter().map(|w| w.functional.clone()).collect();
        let got = rank_of(&fs).unwrap() as u64;
        ensure(got == dim_invariant_space(&fundamentals(ty), 3), || format!("{ty:?}: rank {got}"))?;
    }
    let out = clasped(r, &corpus);
    out.quintuple?;
    out.basis?;
    invariance(&corpus, &[])?;
    Ok("dims 1 and 5; round trip, counting, ranks, quintuple, clasped basis".into())
}

fn run(id: usize, name: &str, f: impl FnOnce() -> Check) -> bool {
    let t = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default())
    });
    let secs = t.elapsed().as_secs_f64();
    match &res {
        Ok(msg) => println!("criterion {id:>2} PASS  {name}: {msg} ({secs:.1}s)"),
        Err(msg) => println!("criterion {id:>2} FAIL  {name}: {msg} ({secs:.1}s)"),
    }
    res.is_ok()
}

fn main() -> ExitCode {
    let r4 = Rank::FOUR;
    let mut ok = true;
    ok &= run(1, "Catalan counts at rank 2", catalan);
    ok &= run(2, "growth round trip at rank 4", || round_trip(r4, 6, 8));
    ok &= run(3, "|BL(C)| = |RT| = dim up to n = 8", || counting(r4, 8));
    ok &= run(4, "unclasped basis ranks", named_ranks);
    let t = Instant::now();
    let corpus = corpus(r4, 6);
    println!("             rank 4 corpus built in {:.1}s", t.elapsed().as_secs_f64());
    let mut outcome = None;
    ok &= run(5, "main theorem quintuple", || {
        let o = clasped(r4, &corpus);
        let q = o.quintuple.clone();
        outcome = Some(o);
        q
    });
    ok &= run(6, "clasped basis", || outcome.map(|o| o.basis).unwrap_or_else(|| Err("not computed".into())));
    ok &= run(7, "swap laws", || swap_laws(r4, 6));
    ok &= run(8, "invariance certification", || invariance(&corpus, &[1; 8]));
    ok &= run(9, "move invariance", || move_invariance(&corpus));
    ok &= run(10, "cut oracle", cut_oracle);
    ok &= run(11, "rank 3 suite", rank3_suite);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
