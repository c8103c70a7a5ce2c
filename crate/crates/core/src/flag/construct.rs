//! Finite-dimensional versions of the projection constructions: almost
//! invariant subspaces and a small projection meeting three large ones.

use super::map::{complementary_idempotents, LinearMap};
use super::subspace::{Subspace, Trace};
use super::FlagError;

/// `t · N` as a whole dimension.
pub(crate) fn dims(t: Trace, ambient: usize) -> Result<usize, FlagError> {
    let d = t * Trace::from_integer(ambient as i64);
    if !d.is_integer() || *d.numer() < 0 {
        return Err(FlagError::Quantization(format!(
            "trace {t} is not a multiple of 1/{ambient}"
        )));
    }
    Ok(*d.numer() as usize)
}

/// `(p, q)` with `p, q ≤ dom X`, `τ(p) = t`, `τ(q) ≤ eps` and
/// `X^♯(p) ≤ p ∨ q`. Requires `ran X ≤ dom X`.
pub fn almost_invariant(x: &LinearMap, t: Trace, eps: Trace) -> Result<(Subspace, Subspace), FlagError> {
    let n = x.dim();
    let target = dims(t, n)?;
    let step = dims(eps, n)?;
    if step == 0 {
        return Err(FlagError::Quantization("eps must be at least 1/N".into()));
    }
    let domain = x.domain();
    if target > domain.dim() {
        return Err(FlagError::Precondition(format!(
            "trace {t} exceeds the domain trace {}",
            domain.trace()
        )));
    }
    if !x.range().is_subspace_of(&domain) {
        return Err(FlagError::Precondition("range is not inside the domain".into()));
    }
    if target == 0 {
        return Ok((Subspace::zero(n), Subspace::zero(n)));
    }
    let rounds = target.div_ceil(step);
    let mut p = domain.first(target - (rounds - 1) * step)?;
    let mut q = x.sharp(&p)?;
    for _ in 1..rounds {
        q = q.minus(&p.meet(&q)?)?;
        let room = domain.minus(&p.join(&q)?)?;
        q = q.join(&room.first(step - q.dim())?)?;
        p = p.join(&q)?;
        q = x.sharp(&q)?;
    }
    Ok((p, q))
}

/// Which branch of [`construct_three`] produced the projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstructCase {
    /// `e1 ∧ e2 ∧ e3` is already large enough.
    CommonPart,
    /// The pairwise meets carry the required trace.
    PairwiseParts,
    /// A piece of `e3` is transported into `e1` and `e2` by the
    /// complementary idempotents.
    Transported,
}

/// `p` with `τ(p) ≤ 3β/2` and `τ(p ∧ e_i) ≥ β` for `i = 1, 2, 3`, given
/// `0 < β ≤ 2/5` and `τ(e_i) ≥ 1/2 + β/4`.
///
/// Every piece has a whole dimension except the halved budget of the
/// pairwise branch, which is rounded down; that rounding keeps the bounds
/// whenever `β N` is even, and the result is checked before returning.
pub fn construct_three(e: [&Subspace; 3], beta: Trace) -> Result<(Subspace, ConstructCase), FlagError> {
    let n = e[0].ambient();
    if e.iter().any(|s| s.ambient() != n) {
        return Err(FlagError::AmbientMismatch(n, e.iter().map(|s| s.ambient()).max().unwrap_or(n)));
    }
    if beta <= Trace::from_integer(0) || beta > Trace::new(2, 5) {
        return Err(FlagError::Precondition(format!("beta = {beta} is outside (0, 2/5]")));
    }
    let b = dims(beta, n)?;
    if let Some(i) = (0..3).find(|&i| 4 * e[i].dim() < 2 * n + b) {
        return Err(FlagError::Precondition(format!(
            "e{} has trace {}, below 1/2 + beta/4",
            i + 1,
            e[i].trace()
        )));
    }

    let q0 = e[0].meet(e[1])?.meet(e[2])?;
    let z = q0.dim();
    let (p, case) = if z >= b {
        (q0.first(b)?, ConstructCase::CommonPart)
    } else {
        let pair = |i: usize, j: usize| -> Result<Subspace, FlagError> { e[i].meet(e[j])?.minus(&q0) };
        let mut parts = [(pair(1, 2)?, 0), (pair(0, 2)?, 1), (pair(0, 1)?, 2)];
        // relabel so that dim q1 ≥ dim q2 ≥ dim q3, with e_i opposite q_i
        parts.sort_by_key(|(s, _)| std::cmp::Reverse(s.dim()));
        let [(q1, i1), (q2, i2), (q3, i3)] = parts;
        let (e1, e2, e3) = (e[i1], e[i2], e[i3]);
        let budget = b - z;
        if q1.dim() + q2.dim() >= budget {
            let half = budget / 2;
            let q2p = q2.first(q2.dim().min(half))?;
            let q3p = q3.first(q3.dim().min(half))?;
            let q1p = q1.first(budget - q2p.dim())?;
            let q4 = e1
                .minus(&q0.join(&q2p)?.join(&q3p)?)?
                .first(budget - q2p.dim() - q3p.dim())?;
            let q5 = e2
                .minus(&q0.join(&q1p)?.join(&q3p)?)?
                .first(budget - q1p.dim() - q3p.dim())?;
            let p = [&q1p, &q2p, &q3p, &q4, &q5]
                .into_iter()
                .try_fold(q0.clone(), |acc, s| acc.join(s))?;
            (p, ConstructCase::PairwiseParts)
        } else {
            let e1r = e1.minus(&q0)?;
            let e2r = e2.minus(&q0)?;
            let source = e3
                .minus(&q0.join(&q1)?.join(&q2)?)?
                .meet(&e1r.join(&e2r)?)?;
            let f = source.first(budget - q1.dim() - q2.dim())?;
            let (big_e1, big_e2) = complementary_idempotents(&e1r, &e2r)?;
            let r1 = big_e1.sharp(&f)?;
            let r2 = big_e2.sharp(&f)?;
            let around1 = r1.join(&q2)?.join(&q3)?;
            let around2 = r2.join(&q1)?.join(&q3)?;
            let s1 = e1.minus(&q0.join(&around1)?)?.first(
                budget
                    .checked_sub(around1.dim())
                    .ok_or_else(|| FlagError::Quantization("no room beside r1".into()))?,
            )?;
            let s2 = e2.minus(&q0.join(&around2)?)?.first(
                budget
                    .checked_sub(around2.dim())
                    .ok_or_else(|| FlagError::Quantization("no room beside r2".into()))?,
            )?;
            let p = [&q1, &q2, &q3, &r1, &r2, &s1, &s2]
                .into_iter()
                .try_fold(q0.clone(), |acc, s| acc.join(s))?;
            (p, ConstructCase::Transported)
        }
    };

    if 2 * p.dim() > 3 * b {
        return Err(FlagError::Quantization(format!(
            "{case:?} produced trace {}, above 3/2 beta",
            p.trace()
        )));
    }
    for (i, ei) in e.iter().enumerate() {
        if p.meet_dim(ei)? < b {
            return Err(FlagError::Quantization(format!("{case:?} left p ∧ e{} below beta", i + 1)));
        }
    }
    Ok((p, case))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_map_is_invariant() {
        let x = LinearMap::identity(6);
        let (p, q) = almost_invariant(&x, Trace::new(1, 2), Trace::new(1, 6)).unwrap();
        assert_eq!(p.dim(), 3);
        assert!(q.dim() <= 1);
        assert!(x.sharp(&p).unwrap().is_subspace_of(&p.join(&q).unwrap()));
    }

    #[test]
    fn full_spaces_take_the_common_part() {
        let full = Subspace::full(10);
        let (p, case) = construct_three([&full, &full, &full], Trace::new(2, 10)).unwrap();
        assert_eq!(case, ConstructCase::CommonPart);
        assert_eq!(p.dim(), 2);
    }

    #[test]
    fn random_instances_meet_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let e: Vec<Subspace> = (0..3).map(|_| Subspace::random(5, 3, &mut rng)).collect();
            let (p, _) = construct_three([&e[0], &e[1], &e[2]], Trace::new(2, 5)).unwrap();
            assert!(p.dim() <= 3);
            for ei in &e {
                assert!(p.meet(ei).unwrap().dim() >= 2);
            }
        }
    }

    #[test]
    fn rejects_small_inputs() {
        let small = Subspace::full(10).first(5).unwrap();
        assert!(matches!(
            construct_three([&small, &small, &small], Trace::new(2, 10)),
            Err(FlagError::Precondition(_))
        ));
    }
}
