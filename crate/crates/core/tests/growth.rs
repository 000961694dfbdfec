use claspweb::growth::{grow, grow_class_invariance_check, grow_with, RuleTable, Schedule};
use claspweb::sixvertex::SixVertexConfig;
use claspweb::words::{all_types, enumerate_balanced_lattice, Rank, Word};

fn corpus(r: Rank, max_n: usize) -> Vec<Word> {
    (1..=max_n).flat_map(|n| all_types(r, n)).flat_map(|t| enumerate_balanced_lattice(r, &t)).collect()
}

#[test]
fn round_trip_rank4_small() {
    let mut searched = 0;
    let words = corpus(Rank::FOUR, 6);
    assert!(words.len() > 1000);
    for w in &words {
        let g = grow(w).unwrap();
        assert_eq!(g.web.boundary_word().unwrap(), *w);
        searched += usize::from(g.searched);
    }
    assert_eq!(searched, 0, "rule table needed the search");
}

#[test]
fn round_trip_rank4_ones() {
    let words = enumerate_balanced_lattice(Rank::FOUR, &[1; 8]);
    assert_eq!(words.len(), 14);
    for w in &words {
        let g = grow(w).unwrap();
        assert_eq!(g.web.boundary_word().unwrap(), *w);
        assert!(g.web.is_monotonic().unwrap());
        assert!(SixVertexConfig::from_web(&g.web).unwrap().is_well_oriented());
    }
}

#[test]
fn round_trip_rank3() {
    for w in corpus(Rank::THREE, 7) {
        let g = grow(&w).unwrap();
        assert_eq!(g.web.boundary_word().unwrap(), w);
    }
}

#[test]
fn round_trip_rank2() {
    for w in corpus(Rank::TWO, 10) {
        assert_eq!(grow(&w).unwrap().web.boundary_word().unwrap(), w);
    }
}

#[test]
fn rows_stay_lattice() {
    let t = RuleTable::builtin(Rank::FOUR).unwrap();
    for w in corpus(Rank::FOUR, 5) {
        let (_, steps) = grow_with(&w, &t, Schedule::Leftmost).unwrap();
        for s in steps {
            let word = Word::new(
                Rank::FOUR,
                s.row
                    .iter()
                    .map(|x| {
                        if x.up {
                            claspweb::words::Letter::Barred(x.label)
                        } else {
                            claspweb::words::Letter::Small(x.label)
                        }
                    })
                    .collect(),
            )
            .unwrap();
            assert!(word.is_lattice(), "{w}: row {word}");
        }
    }
}

#[test]
fn schedules_agree() {
    for w in corpus(Rank::FOUR, 5) {
        assert!(grow_class_invariance_check(&w, 4).unwrap(), "{w}");
    }
    for w in corpus(Rank::THREE, 6) {
        assert!(grow_class_invariance_check(&w, 4).unwrap(), "{w}");
    }
}
