use std::collections::HashSet;

use hornlab::horn::{enumerate_u, member_t3_direct, subsets, HornTriple, IndexSet, TripleCache, Variant};
use hornlab::Execution;
use proptest::prelude::*;

fn t(n: usize, i: &[usize], j: &[usize], k: &[usize]) -> HornTriple {
    HornTriple::from_lists(n, i, j, k).unwrap()
}

#[test]
fn u_examples() {
    assert_eq!(enumerate_u(1, 1, Variant::Classic).unwrap(), vec![t(1, &[1], &[1], &[1])]);
    let u31 = enumerate_u(3, 1, Variant::Tilde).unwrap();
    assert_eq!(u31.len(), 6);
    assert!(u31.iter().all(|x| x.i.at(1) + x.j.at(1) + x.k.at(1) == 7));
    for n in 1..=6 {
        let all: Vec<usize> = (1..=n).collect();
        assert_eq!(enumerate_u(n, n, Variant::Tilde).unwrap(), vec![t(n, &all, &all, &all)]);
    }
}

#[test]
fn explicit_small_tilde_sets() {
    let cache = TripleCache::new();
    let expected = |list: &[HornTriple]| -> HashSet<HornTriple> { list.iter().flat_map(|x| x.permutations()).collect() };
    let t31: HashSet<_> = cache.get(3, 1, Variant::Tilde).unwrap().triples().iter().cloned().collect();
    assert_eq!(t31, expected(&[t(3, &[1], &[3], &[3]), t(3, &[2], &[2], &[3])]));
    let t32: HashSet<_> = cache.get(3, 2, Variant::Tilde).unwrap().triples().iter().cloned().collect();
    assert_eq!(t32, expected(&[t(3, &[1, 2], &[2, 3], &[2, 3]), t(3, &[1, 3], &[1, 3], &[2, 3])]));
    assert_eq!(t31.len(), 6);
    assert_eq!(t32.len(), 6);
    assert_eq!(
        cache.get(2, 2, Variant::Tilde).unwrap().triples(),
        &[t(2, &[1, 2], &[1, 2], &[1, 2])]
    );
}

#[test]
fn permutation_invariance_and_convention_bridge() {
    let cache = TripleCache::new();
    for n in 1..=8 {
        for r in 1..=n {
            let tilde = cache.get(n, r, Variant::Tilde).unwrap();
            for x in tilde.triples() {
                for y in x.permutations() {
                    assert!(tilde.contains(&y), "{x} -> {y}");
                }
            }
            let classic = cache.get(n, r, Variant::Classic).unwrap();
            let bridged: HashSet<HornTriple> = classic.triples().iter().map(HornTriple::convert).collect();
            let direct: HashSet<HornTriple> = tilde.triples().iter().cloned().collect();
            assert_eq!(bridged, direct, "n={n} r={r}");
        }
    }
}

#[test]
fn direct_r3_conditions_match_recursion() {
    let cache = TripleCache::new();
    for n in 3..=10 {
        let set = cache.get(n, 3, Variant::Tilde).unwrap();
        let subs = subsets(n, 3);
        for i in &subs {
            for j in &subs {
                for k in &subs {
                    let x = HornTriple::new(i.clone(), j.clone(), k.clone()).unwrap();
                    assert_eq!(member_t3_direct(&x).unwrap(), set.contains(&x), "{x}");
                }
            }
        }
    }
    assert!(member_t3_direct(&t(3, &[1, 2, 3], &[1, 2, 3], &[1, 2, 3])).unwrap());
    assert!(member_t3_direct(&t(4, &[1], &[1], &[1])).is_err());
}

#[test]
fn top_sets_are_the_sum_sets() {
    let cache = TripleCache::new();
    for n in 1..=7 {
        let u = enumerate_u(n, n, Variant::Classic).unwrap();
        assert_eq!(cache.get(n, n, Variant::Classic).unwrap().triples(), u.as_slice());
    }
}

#[test]
fn strategies_agree() {
    let seq = TripleCache::new().with_execution(Execution::Sequential);
    let par = TripleCache::new().with_execution(Execution::Parallel);
    for (n, r) in [(6, 3), (7, 2), (8, 4)] {
        for v in [Variant::Classic, Variant::Tilde] {
            assert_eq!(seq.get(n, r, v).unwrap().triples(), par.get(n, r, v).unwrap().triples());
        }
    }
}

fn index_set() -> impl Strategy<Value = IndexSet> {
    (1usize..=12).prop_flat_map(|n| {
        prop::sample::subsequence((1..=n).collect::<Vec<_>>(), 1..=n)
            .prop_map(move |e| IndexSet::new(n, e).unwrap())
    })
}

proptest! {
    #[test]
    fn flip_is_an_involution(s in index_set()) {
        prop_assert_eq!(s.flip().flip(), s.clone());
        prop_assert_eq!(s.flip().len(), s.len());
    }

    #[test]
    fn to_partition_is_injective(a in index_set(), b in index_set()) {
        if a.n() == b.n() && a.len() == b.len() && a != b {
            prop_assert_ne!(a.to_partition(a.len()).unwrap(), b.to_partition(b.len()).unwrap());
        }
    }
}
