use hornlab::horn::{HornTriple, IndexSet, TripleCache, Variant};
use hornlab::lr::lr_of_triple;
use hornlab::reduce::{
    corner_witnesses, inflate, irreducible_r3_family, is_irreducible, lr_minimal_irreducible, reduce,
    reduce_to_irreducible, reduction_witnesses, ReductionWitness,
};

fn diag(n: usize, e: &[usize]) -> HornTriple {
    HornTriple::diagonal(IndexSet::new(n, e.to_vec()).unwrap())
}

#[test]
fn reduction_keeps_membership_and_coefficient() {
    let cache = TripleCache::new();
    for n in 2..=7 {
        for r in 1..=n.min(4) {
            for t in cache.get(n, r, Variant::Tilde).unwrap().triples() {
                let c = lr_of_triple(t).unwrap();
                for wit in reduction_witnesses(t) {
                    let s = reduce(t, wit).unwrap();
                    assert!(cache.contains(&s, Variant::Tilde).unwrap(), "{t} {wit}");
                    assert_eq!(lr_of_triple(&s).unwrap(), c, "{t} {wit}");
                    assert_eq!(inflate(&s, wit).unwrap(), *t);
                }
            }
        }
    }
}

#[test]
fn irreducibles_end_at_n() {
    let cache = TripleCache::new();
    for n in 2..=8 {
        for r in 2..=n {
            for t in cache.get(n, r, Variant::Tilde).unwrap().triples() {
                if is_irreducible(t) {
                    assert!(t.sets().iter().all(|s| s.at(r) == n), "{t}");
                }
            }
        }
    }
}

#[test]
fn gap_conditions_are_automatic_at_the_corner() {
    let cache = TripleCache::new();
    for n in 2..=8 {
        for r in 1..=n {
            for t in cache.get(n, r, Variant::Tilde).unwrap().triples() {
                if t.sets().iter().all(|s| s.at(r) == n) {
                    assert_eq!(reduction_witnesses(t), corner_witnesses(t), "{t}");
                }
            }
        }
    }
}

#[test]
fn only_diagonal_irreducibles_for_one_and_two_rows() {
    let cache = TripleCache::new();
    for n in 1..=10 {
        for r in 1..=2.min(n) {
            let irr: Vec<HornTriple> = cache
                .get(n, r, Variant::Tilde)
                .unwrap()
                .triples()
                .iter()
                .filter(|t| is_irreducible(t))
                .cloned()
                .collect();
            if n == r {
                let all: Vec<usize> = (1..=r).collect();
                assert_eq!(irr, vec![diag(n, &all)]);
            } else {
                assert!(irr.is_empty(), "n={n} r={r}: {irr:?}");
            }
        }
    }
}

#[test]
fn chain_of_the_thin_triple() {
    let cache = TripleCache::new();
    for n in 1..=9 {
        let t = HornTriple::from_lists(n, &[1], &[n], &[n]).unwrap();
        let chain = reduce_to_irreducible(&t, &cache).unwrap();
        assert_eq!(chain.len(), n - 1);
        assert_eq!(*chain.end(), HornTriple::from_lists(1, &[1], &[1], &[1]).unwrap());
        assert_eq!(chain.to_records().to_chain().unwrap(), chain);
    }
}

#[test]
fn lr_minimal_three_row_chains_end_in_the_family() {
    let cache = TripleCache::new();
    for n in 3..=8 {
        for t in cache.get(n, 3, Variant::Tilde).unwrap().triples() {
            if lr_of_triple(t).unwrap() != 1 {
                continue;
            }
            let chain = reduce_to_irreducible(t, &cache).unwrap();
            let end = chain.end();
            let m = (end.n() - 1) / 2;
            assert_eq!(end.n(), 2 * m + 1, "{t} -> {end}");
            assert_eq!(*end, diag(end.n(), &[m, m + 1, 2 * m + 1]), "{t}");
            for (_, step) in &chain.steps {
                assert_eq!(lr_of_triple(step).unwrap(), 1);
            }
        }
    }
}

#[test]
fn family_coefficient_is_the_gap() {
    for n in 3..=25 {
        for t in irreducible_r3_family(n) {
            let (m, l) = (t.i.at(1), t.i.at(2) - t.i.at(1));
            assert_eq!(2 * m + l, n);
            assert_eq!(lr_of_triple(&t).unwrap(), l as u64, "{t}");
            assert!(is_irreducible(&t));
        }
    }
}

#[test]
fn family_is_every_three_row_irreducible() {
    let cache = TripleCache::new();
    for n in 3..=10 {
        let mut irr: Vec<HornTriple> = cache
            .get(n, 3, Variant::Tilde)
            .unwrap()
            .triples()
            .iter()
            .filter(|t| is_irreducible(t))
            .cloned()
            .collect();
        irr.sort();
        let mut family = irreducible_r3_family(n);
        family.sort();
        assert_eq!(irr, family, "n={n}");
    }
}

#[test]
fn minimal_three_row_irreducibles_need_odd_n() {
    let cache = TripleCache::new();
    for n in 3..=11 {
        let found = lr_minimal_irreducible(n, 3, &cache).unwrap();
        if n % 2 == 1 {
            let m = n / 2;
            assert_eq!(found, vec![diag(n, &[m, m + 1, n])]);
        } else {
            assert!(found.is_empty(), "n={n}");
        }
    }
}

#[test]
fn inflate_then_reduce_is_identity_when_gaps_appear() {
    let cache = TripleCache::new();
    for n in 2..=6 {
        for r in 1..=n.min(3) {
            for t in cache.get(n, r, Variant::Tilde).unwrap().triples() {
                for u in 0..=r {
                    for v in 0..=r - u {
                        let wit = ReductionWitness::new(u, v, r - u - v);
                        if let Ok(big) = inflate(t, wit) {
                            assert!(cache.contains(&big, Variant::Tilde).unwrap(), "{t} {wit}");
                            assert_eq!(reduce(&big, wit).unwrap(), *t);
                        }
                    }
                }
            }
        }
    }
}
