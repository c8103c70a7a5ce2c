//! Reduction of tilde-convention triples: lowering `n` by one while
//! keeping membership and the LR coefficient, irreducibility, and the
//! closed-form irreducible families.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::horn::{HornError, HornTriple, IndexSet, TripleCache, TripleRecord, Variant};
use crate::lr::{lr_of_triple, LrError};

#[derive(Debug, Error)]
pub enum ReduceError {
    #[error("({u},{v},{w}) is not a reduction witness for {triple}")]
    InvalidWitness { u: usize, v: usize, w: usize, triple: Box<HornTriple> },
    #[error("({u},{v},{w}) cannot inflate {triple}: i_u + j_v + k_w exceeds n")]
    CannotInflate { u: usize, v: usize, w: usize, triple: Box<HornTriple> },
    #[error("reduced triple {reduced} (from {from}) is not in the tilde Horn set")]
    MembershipLost { from: Box<HornTriple>, reduced: Box<HornTriple> },
    #[error("{0} is not in the tilde Horn set")]
    NotMember(Box<HornTriple>),
    #[error(transparent)]
    Horn(#[from] HornError),
    #[error(transparent)]
    Lr(#[from] LrError),
}

/// Split `(u, v, w)` of the rows; `u + v + w = r` for the reduction proper.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReductionWitness {
    pub u: usize,
    pub v: usize,
    pub w: usize,
}

impl ReductionWitness {
    pub fn new(u: usize, v: usize, w: usize) -> Self {
        ReductionWitness { u, v, w }
    }
}

impl std::fmt::Display for ReductionWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.u, self.v, self.w)
    }
}

/// `s_{p+1} - s_p ≥ 2`, vacuous at `p = r`, with `s_0 = 0`.
fn gap_ok(s: &IndexSet, p: usize) -> bool {
    p == s.len() || s.at(p + 1) - s.at(p) >= 2
}

fn corner(t: &HornTriple, wit: ReductionWitness) -> usize {
    t.i.at(wit.u) + t.j.at(wit.v) + t.k.at(wit.w)
}

fn admissible(t: &HornTriple, wit: ReductionWitness, check_gaps: bool) -> bool {
    let r = t.r();
    wit.u + wit.v + wit.w == r
        && corner(t, wit) < t.n()
        && (!check_gaps || (gap_ok(&t.i, wit.u) && gap_ok(&t.j, wit.v) && gap_ok(&t.k, wit.w)))
}

fn all_splits(r: usize) -> impl Iterator<Item = ReductionWitness> {
    (0..=r).flat_map(move |u| (0..=r - u).map(move |v| ReductionWitness::new(u, v, r - u - v)))
}

/// Every witness `(u, v, w)` with `u + v + w = r`, the three gap conditions
/// and `i_u + j_v + k_w ≤ n - 1`, in lexicographic order.
pub fn reduction_witnesses(t: &HornTriple) -> Vec<ReductionWitness> {
    all_splits(t.r()).filter(|&w| admissible(t, w, true)).collect()
}

/// Same search with the gap conditions dropped.
pub fn corner_witnesses(t: &HornTriple) -> Vec<ReductionWitness> {
    all_splits(t.r()).filter(|&w| admissible(t, w, false)).collect()
}

fn shift(s: &IndexSet, after: usize, n: usize, down: bool) -> Result<IndexSet, HornError> {
    let elements = s
        .elements()
        .iter()
        .enumerate()
        .map(|(idx, &x)| match (idx >= after, down) {
            (true, true) => x - 1,
            (true, false) => x + 1,
            (false, _) => x,
        })
        .collect();
    IndexSet::new(n, elements)
}

/// Lowers every entry past position `u` of `I` (likewise `v`, `w`) by one and
/// `n` by one.
pub fn reduce(t: &HornTriple, wit: ReductionWitness) -> Result<HornTriple, ReduceError> {
    if !admissible(t, wit, true) {
        return Err(ReduceError::InvalidWitness {
            u: wit.u,
            v: wit.v,
            w: wit.w,
            triple: Box::new(t.clone()),
        });
    }
    let n = t.n() - 1;
    Ok(HornTriple::new(
        shift(&t.i, wit.u, n, true)?,
        shift(&t.j, wit.v, n, true)?,
        shift(&t.k, wit.w, n, true)?,
    )?)
}

/// Raises every entry past position `u` of `I` (likewise `v`, `w`) by one and
/// `n` by one; requires `i_u + j_v + k_w ≤ n`.
pub fn inflate(t: &HornTriple, wit: ReductionWitness) -> Result<HornTriple, ReduceError> {
    let r = t.r();
    if wit.u > r || wit.v > r || wit.w > r || corner(t, wit) > t.n() {
        return Err(ReduceError::CannotInflate {
            u: wit.u,
            v: wit.v,
            w: wit.w,
            triple: Box::new(t.clone()),
        });
    }
    let n = t.n() + 1;
    Ok(HornTriple::new(
        shift(&t.i, wit.u, n, false)?,
        shift(&t.j, wit.v, n, false)?,
        shift(&t.k, wit.w, n, false)?,
    )?)
}

pub fn is_irreducible(t: &HornTriple) -> bool {
    reduction_witnesses(t).is_empty()
}

/// Repeated reduction down to an irreducible triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionChain {
    pub start: HornTriple,
    pub steps: Vec<(ReductionWitness, HornTriple)>,
}

impl ReductionChain {
    pub fn end(&self) -> &HornTriple {
        self.steps.last().map_or(&self.start, |(_, t)| t)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn to_records(&self) -> ChainRecord {
        ChainRecord {
            start: self.start.to_record(Variant::Tilde),
            steps: self
                .steps
                .iter()
                .map(|(wit, t)| StepRecord {
                    witness: *wit,
                    triple: t.to_record(Variant::Tilde),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub witness: ReductionWitness,
    pub triple: TripleRecord,
}

/// Serialized chain; triples use the common triple schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub start: TripleRecord,
    pub steps: Vec<StepRecord>,
}

impl ChainRecord {
    pub fn to_chain(&self) -> Result<ReductionChain, HornError> {
        Ok(ReductionChain {
            start: self.start.to_triple()?,
            steps: self
                .steps
                .iter()
                .map(|s| Ok((s.witness, s.triple.to_triple()?)))
                .collect::<Result<_, HornError>>()?,
        })
    }
}

/// Reduces with the lexicographically smallest witness until none is left,
/// checking tilde membership of the input and every intermediate triple.
pub fn reduce_to_irreducible(t: &HornTriple, cache: &TripleCache) -> Result<ReductionChain, ReduceError> {
    if !cache.contains(t, Variant::Tilde)? {
        return Err(ReduceError::NotMember(Box::new(t.clone())));
    }
    let mut chain = ReductionChain {
        start: t.clone(),
        steps: Vec::new(),
    };
    let mut current = t.clone();
    while let Some(&wit) = reduction_witnesses(&current).first() {
        let next = reduce(&current, wit)?;
        if !cache.contains(&next, Variant::Tilde)? {
            return Err(ReduceError::MembershipLost {
                from: Box::new(current),
                reduced: Box::new(next),
            });
        }
        chain.steps.push((wit, next.clone()));
        current = next;
    }
    Ok(chain)
}

/// `({m, m+ℓ, n})³` for `1 ≤ ℓ ≤ m`, `2m + ℓ = n`, ordered by `m`.
pub fn irreducible_r3_family(n: usize) -> Vec<HornTriple> {
    (1..=n / 2)
        .filter_map(|m| {
            let l = n.checked_sub(2 * m)?;
            (1..=m).contains(&l).then(|| {
                HornTriple::diagonal(IndexSet::new(n, vec![m, m + l, n]).expect("increasing"))
            })
        })
        .collect()
}

/// Irreducible triples of `T̃^n_r` with LR coefficient one, one per
/// permutation orbit (three sets sorted lexicographically), sorted.
pub fn lr_minimal_irreducible(n: usize, r: usize, cache: &TripleCache) -> Result<Vec<HornTriple>, ReduceError> {
    let set = cache.get(n, r, Variant::Tilde)?;
    let candidates: Vec<HornTriple> = set
        .triples()
        .iter()
        .filter(|t| is_irreducible(t))
        .cloned()
        .collect();
    let coefficients = cache.execution().try_map(&candidates, lr_of_triple)?;
    let orbits: BTreeSet<HornTriple> = candidates
        .iter()
        .zip(coefficients)
        .filter(|(_, c)| *c == 1)
        .map(|(t, _)| t.normalized())
        .collect();
    Ok(orbits.into_iter().collect())
}
