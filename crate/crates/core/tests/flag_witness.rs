use hornlab::flag::{
    lift_witness, min_dimension, random_wheel_configuration, verify_pn, verify_wheel, wheel_construction, witness_pn,
    FlagError, FlagTriple, Subspace, Trace,
};
use hornlab::horn::{HornTriple, IndexSet, TripleCache, Variant};
use hornlab::lr::lr_of_triple;
use hornlab::reduce::{inflate, reduction_witnesses, ReductionWitness};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn diag(n: usize, e: &[usize]) -> HornTriple {
    HornTriple::diagonal(IndexSet::new(n, e.to_vec()).unwrap())
}

fn zero() -> Trace {
    Trace::from_integer(0)
}

fn assert_witness(t: &HornTriple, big_n: usize, rng: &mut ChaCha8Rng) {
    let flags = FlagTriple::random(big_n, rng);
    let p = witness_pn(t, &flags).unwrap_or_else(|e| panic!("{t}: {e}"));
    assert_eq!(p.trace(), Trace::new(t.r() as i64, t.n() as i64));
    let report = verify_pn(&p, t, &flags, zero()).unwrap();
    assert!(report.holds(), "{t}: {report:?}");
}

#[test]
fn consecutive_family() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 1..=4 {
        let t = diag(2 * m + 1, &[m, m + 1, 2 * m + 1]);
        assert_eq!(min_dimension(&t), t.n());
        for _ in 0..2 {
            assert_witness(&t, min_dimension(&t), &mut rng);
        }
    }
}

#[test]
fn larger_multiples_of_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    assert_witness(&diag(5, &[2, 3, 5]), 10, &mut rng);
    assert_witness(&HornTriple::from_lists(3, &[1], &[3], &[3]).unwrap(), 9, &mut rng);
}

#[test]
fn every_small_triple_with_few_rows() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let cache = TripleCache::new();
    for n in 1..=5 {
        for r in 1..=2.min(n) {
            for t in cache.get(n, r, Variant::Tilde).unwrap().triples() {
                assert_witness(t, n, &mut rng);
            }
        }
    }
}

#[test]
fn inflated_minimal_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let cache = TripleCache::new();
    let mut done = 0;
    for base in [diag(3, &[1, 2, 3]), diag(5, &[2, 3, 5])] {
        for u in 0..=3 {
            for v in 0..=3 - u {
                let Ok(t) = inflate(&base, ReductionWitness::new(u, v, 3 - u - v)) else {
                    continue;
                };
                assert!(cache.contains(&t, Variant::Tilde).unwrap());
                assert_eq!(lr_of_triple(&t).unwrap(), 1);
                assert!(!reduction_witnesses(&t).is_empty());
                assert_witness(&t, min_dimension(&t), &mut rng);
                done += 1;
            }
        }
    }
    assert!(done >= 5, "{done}");
}

#[test]
fn unsupported_irreducibles_are_refused() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let t = diag(6, &[2, 4, 6]);
    let flags = FlagTriple::random(6, &mut rng);
    assert!(matches!(witness_pn(&t, &flags), Err(FlagError::Unsupported(_))));
    let flags = FlagTriple::random(7, &mut rng);
    assert!(matches!(witness_pn(&t, &flags), Err(FlagError::Quantization(_))));
}

#[test]
fn lifting_the_full_space() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let t = HornTriple::from_lists(2, &[1], &[2], &[2]).unwrap();
    let flags = FlagTriple::random(4, &mut rng);
    let wit = reduction_witnesses(&t)[0];
    let p = lift_witness(&t, &flags, wit, |_, inner| Ok(Subspace::full(inner.ambient()))).unwrap();
    assert_eq!(p.dim(), 2);
    assert!(verify_pn(&p, &t, &flags, zero()).unwrap().holds());
    let bad = lift_witness(&t, &flags, ReductionWitness::new(0, 1, 0), |_, inner| {
        Ok(Subspace::full(inner.ambient()))
    });
    assert!(matches!(bad, Err(FlagError::InvalidWitness(..))));
}

#[test]
fn wheel_configurations() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for big_n in [6, 12, 18] {
        for _ in 0..3 {
            let (e, f) = random_wheel_configuration(big_n, &mut rng);
            let e = [&e[0], &e[1], &e[2]];
            let f = [&f[0], &f[1], &f[2]];
            let eps = Trace::new(1, big_n as i64);
            let out = wheel_construction(e, f, eps).unwrap();
            for (q, ei) in out.q.iter().zip(e) {
                assert!(q.is_subspace_of(ei));
            }
            let report = verify_wheel(&out.p, e, f, eps).unwrap();
            assert!(report.holds(), "{report:?}");
        }
    }
}
