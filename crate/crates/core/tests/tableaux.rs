use std::collections::{HashMap, HashSet};

use claspweb::clasp::ClaspSequence;
use claspweb::tableaux::{
    clasp_weight, clasp_weights, dim_invariant_space, rectangular_tableaux, tableau_to_word, word_to_tableau, Partition,
};
use claspweb::words::{all_types, enumerate_balanced_lattice, enumerate_bl, Rank};
use proptest::prelude::*;

type Poly = HashMap<Vec<u32>, i64>;

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Schur polynomial in `r` variables as a sum over semistandard tableaux.
fn schur(shape: &[u32], r: usize) -> Poly {
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(i, &l)| (0..l as usize).map(move |j| (i, j))).collect();
    let mut out = Poly::new();
    let mut fill: HashMap<(usize, usize), usize> = HashMap::new();
    fn go(k: usize, cells: &[(usize, usize)], r: usize, fill: &mut HashMap<(usize, usize), usize>, out: &mut Poly) {
        if k == cells.len() {
            let mut e = vec![0u32; r];
            for v in fill.values() {
                e[*v] += 1;
            }
            *out.entry(e).or_insert(0) += 1;
            return;
        }
        let (i, j) = cells[k];
        let lo_row = if j > 0 { fill[&(i, j - 1)] } else { 0 };
        let lo_col = if i > 0 { fill[&(i - 1, j)] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..r {
            fill.insert((i, j), v);
            go(k + 1, cells, r, fill, out);
        }
        fill.remove(&(i, j));
    }
    go(0, &cells, r, &mut fill, &mut out);
    out
}

/// Multiplicity of the rectangles via the alternant: coefficient of
/// `x^(k^r + delta)` in `a_delta * product`.
fn dim_oracle(weights: &[Partition], r: usize) -> i64 {
    let mut prod: Poly = HashMap::from([(vec![0; r], 1)]);
    for w in weights {
        prod = mul(&prod, &schur(w.parts(), r));
    }
    let size: u32 = weights.iter().map(Partition::size).sum();
    if !size.is_multiple_of(r as u32) {
        return 0;
    }
    let k = size / r as u32;
    let mut total = 0;
    for perm in permutations(r) {
        // a_delta term sign(perm) * x^(delta permuted); delta = (r-1, ..., 0).
        let inv = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let sign = if inv % 2 == 0 { 1 } else { -1 };
        let target: Vec<i64> = (0..r).map(|i| k as i64 + (r - 1 - i) as i64 - (r - 1 - perm[i]) as i64).collect();
        if target.iter().all(|&t| t >= 0) {
            let t: Vec<u32> = target.iter().map(|&t| t as u32).collect();
            total += sign * prod.get(&t).copied().unwrap_or(0);
        }
    }
    total
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(r - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, r - 1);
            out.push(q);
        }
    }
    out
}

fn hook_count(shape: &[u32]) -> u64 {
    let n: u32 = shape.iter().sum();
    let num: u128 = (1..=n as u128).product();
    let hooks: u128 = shape
        .iter()
        .enumerate()
        .flat_map(|(i, &l)| {
            (0..l as usize).map(move |j| {
                let arm = l as usize - j - 1;
                let leg = shape.iter().skip(i + 1).filter(|&&x| x as usize > j).count();
                (arm + leg + 1) as u128
            })
        })
        .product();
    (num / hooks) as u64
}

#[test]
fn dims_match_the_alternant_oracle() {
    let w = |k| Partition::fundamental(k);
    let cases: Vec<(Vec<Partition>, usize)> = vec![
        (vec![w(1); 4], 4),
        (vec![w(1); 8], 4),
        (vec![clasp_weight(&[1, 1]), w(1), w(1)], 4),
        (vec![w(2), w(2)], 4),
        (vec![w(1), w(2), w(1)], 4),
        (vec![clasp_weight(&[1, 3]), clasp_weight(&[2, 2])], 4),
        (vec![w(1); 3], 3),
        (vec![w(1); 6], 3),
        (vec![w(1); 6], 2),
        (vec![clasp_weight(&[1, 1, 2]), w(2), w(1), w(2)], 3),
    ];
    for (ws, r) in cases {
        assert_eq!(dim_invariant_space(&ws, r) as i64, dim_oracle(&ws, r), "{ws:?} r={r}");
    }
}

#[test]
fn hook_length_counts() {
    for k in 1..=3u32 {
        let ws = vec![Partition::fundamental(1); 4 * k as usize];
        assert_eq!(dim_invariant_space(&ws, 4), hook_count(&[k, k, k, k]));
    }
    assert_eq!(hook_count(&[2, 2, 2, 2]), 14);
}

fn sorted_clasps(ty: &[u8]) -> Vec<ClaspSequence> {
    ClaspSequence::all_on(ty).into_iter().filter(ClaspSequence::is_sorted).collect()
}

fn check_bijection(r: Rank, max_n: usize) {
    let rr = r.usize();
    for n in 0..=max_n {
        for ty in all_types(r, n) {
            if enumerate_balanced_lattice(r, &ty).is_empty() {
                continue;
            }
            for c in sorted_clasps(&ty) {
                let bl = enumerate_bl(r, &c).unwrap();
                let weights = clasp_weights(&c);
                let rt: HashSet<_> = rectangular_tableaux(&weights, rr).into_iter().collect();
                assert_eq!(bl.len(), rt.len(), "{ty:?} {:?}", c.sizes());
                assert_eq!(bl.len() as u64, dim_invariant_space(&weights, rr), "{ty:?} {:?}", c.sizes());
                for l in &bl {
                    let t = word_to_tableau(l, &c).unwrap();
                    assert!(rt.contains(&t), "{l}");
                    assert_eq!(&tableau_to_word(&t, &c, r).unwrap(), l);
                }
            }
        }
    }
}

#[test]
fn bijection_rank4() {
    check_bijection(Rank::FOUR, 6);
}

#[test]
fn bijection_rank3() {
    check_bijection(Rank::THREE, 6);
}

#[test]
fn bijection_rank2() {
    check_bijection(Rank::TWO, 8);
}

#[test]
fn word_outside_bl_is_rejected() {
    let c = ClaspSequence::new(vec![1, 1, 1, 1], vec![4]).unwrap();
    let l = claspweb::words::Word::parse("1 2 3 4", Rank::FOUR).unwrap();
    assert!(word_to_tableau(&l, &c).is_err());
}

proptest! {
    #[test]
    fn dims_commute(ks in proptest::collection::vec(1u8..=3, 0..7), seed in any::<u64>()) {
        let ws: Vec<Partition> = ks.iter().map(|&k| Partition::fundamental(k)).collect();
        let mut shuffled = ws.clone();
        let n = shuffled.len();
        if n > 1 {
            shuffled.rotate_left((seed as usize) % n);
            shuffled.swap(0, (seed as usize / 7) % n);
        }
        prop_assert_eq!(dim_invariant_space(&ws, 4), dim_invariant_space(&shuffled, 4));
    }
}
