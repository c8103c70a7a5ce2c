//! Index sets, Horn triples and the recursive enumeration of Horn's sets.
//!
//! Two conventions are supported. The classic sets `T^n_r` index the
//! inequality `Σ_I α_i + Σ_J β_j ≥ Σ_K γ_k` directly. The tilde sets are the
//! image of the classic ones under `i ↦ n+1-i` applied to `I` and `J`; their
//! defining conditions are symmetric in the three index sets.
//!
//! All index values are 1-based, matching the usual indexing of eigenvalues.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, RwLock};

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HornError {
    #[error("index set {elements:?} is not a strictly increasing nonempty subset of 1..={n}")]
    InvalidIndexSet { n: usize, elements: Vec<usize> },
    #[error("index sets have sizes {sizes:?}; a triple needs three sets of equal size")]
    SizeMismatch { sizes: [usize; 3] },
    #[error("index set has {actual} elements, expected {expected}")]
    WrongCardinality { expected: usize, actual: usize },
    #[error("need 1 <= r <= n, got n = {n}, r = {r}")]
    InvalidRange { n: usize, r: usize },
    #[error("parts {0:?} are not weakly decreasing")]
    NotAPartition(Vec<usize>),
    #[error("partition lengths differ: {0}, {1}, {2}")]
    PartitionLengths(usize, usize, usize),
    #[error("direct membership test is only defined for r = 3, got r = {0}")]
    NotSizeThree(usize),
}

/// A strictly increasing subset of `{1, …, n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    elements: Vec<usize>,
    n: usize,
}

impl IndexSet {
    pub fn new(n: usize, elements: Vec<usize>) -> Result<Self, HornError> {
        let ok = !elements.is_empty()
            && elements[0] >= 1
            && elements.iter().tuple_windows().all(|(a, b)| a < b)
            && *elements.last().unwrap() <= n;
        if ok {
            Ok(IndexSet { elements, n })
        } else {
            Err(HornError::InvalidIndexSet { n, elements })
        }
    }

    /// `{1, …, r}` inside `{1, …, n}`.
    pub fn initial(n: usize, r: usize) -> Self {
        assert!(1 <= r && r <= n);
        IndexSet {
            elements: (1..=r).collect(),
            n,
        }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The `l`-th smallest element, with the convention that position 0 holds 0.
    pub fn at(&self, l: usize) -> usize {
        if l == 0 {
            0
        } else {
            self.elements[l - 1]
        }
    }

    pub fn sum(&self) -> usize {
        self.elements.iter().sum()
    }

    /// Image under `i ↦ n+1-i`, re-sorted increasing. An involution.
    pub fn flip(&self) -> IndexSet {
        IndexSet {
            elements: self.elements.iter().rev().map(|&i| self.n + 1 - i).collect(),
            n: self.n,
        }
    }

    /// `(i_r - r, i_{r-1} - (r-1), …, i_1 - 1)`.
    pub fn to_partition(&self, r: usize) -> Result<Partition, HornError> {
        if self.len() != r {
            return Err(HornError::WrongCardinality {
                expected: r,
                actual: self.len(),
            });
        }
        let parts = (1..=r).rev().map(|p| self.at(p) - p).collect();
        Ok(Partition(parts))
    }

    /// Same elements viewed inside a different ambient size.
    pub fn with_n(&self, n: usize) -> Result<IndexSet, HornError> {
        IndexSet::new(n, self.elements.clone())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.elements.iter().join(","))
    }
}

/// A weakly decreasing tuple of nonnegative integers (trailing zeros kept).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, HornError> {
        if parts.iter().tuple_windows().all(|(a, b)| a >= b) {
            Ok(Partition(parts))
        } else {
            Err(HornError::NotAPartition(parts))
        }
    }

    pub fn zero(r: usize) -> Self {
        Partition(vec![0; r])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// 1-based part access.
    pub fn part(&self, p: usize) -> usize {
        self.0[p - 1]
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// `(λ, μ, ν)` of a common length, the input of a Littlewood–Richardson count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionTriple {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
}

impl PartitionTriple {
    pub fn new(lambda: Partition, mu: Partition, nu: Partition) -> Result<Self, HornError> {
        if lambda.len() != mu.len() || mu.len() != nu.len() {
            return Err(HornError::PartitionLengths(lambda.len(), mu.len(), nu.len()));
        }
        Ok(PartitionTriple { lambda, mu, nu })
    }

    /// Convenience constructor from raw part lists.
    pub fn from_parts(
        lambda: Vec<usize>,
        mu: Vec<usize>,
        nu: Vec<usize>,
    ) -> Result<Self, HornError> {
        Self::new(Partition::new(lambda)?, Partition::new(mu)?, Partition::new(nu)?)
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    pub fn swap_lambda_mu(&self) -> Self {
        PartitionTriple {
            lambda: self.mu.clone(),
            mu: self.lambda.clone(),
            nu: self.nu.clone(),
        }
    }
}

impl fmt::Display for PartitionTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ={} μ={} ν={}", self.lambda, self.mu, self.nu)
    }
}

/// Which of the two conventions a triple set is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Classic,
    Tilde,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Classic => "classic",
            Variant::Tilde => "tilde",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "classic" => Ok(Variant::Classic),
            "tilde" => Ok(Variant::Tilde),
            other => Err(format!("unknown variant `{other}` (expected classic|tilde)")),
        }
    }
}

/// Three `r`-subsets of `{1, …, n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HornTriple {
    pub i: IndexSet,
    pub j: IndexSet,
    pub k: IndexSet,
}

impl HornTriple {
    pub fn new(i: IndexSet, j: IndexSet, k: IndexSet) -> Result<Self, HornError> {
        if i.len() != j.len() || j.len() != k.len() {
            return Err(HornError::SizeMismatch {
                sizes: [i.len(), j.len(), k.len()],
            });
        }
        if i.n() != j.n() || j.n() != k.n() {
            return Err(HornError::InvalidRange {
                n: i.n().max(j.n()).max(k.n()),
                r: i.len(),
            });
        }
        Ok(HornTriple { i, j, k })
    }

    /// Builds a triple from raw element lists.
    pub fn from_lists(
        n: usize,
        i: &[usize],
        j: &[usize],
        k: &[usize],
    ) -> Result<Self, HornError> {
        Self::new(
            IndexSet::new(n, i.to_vec())?,
            IndexSet::new(n, j.to_vec())?,
            IndexSet::new(n, k.to_vec())?,
        )
    }

    /// `(I, I, I)`.
    pub fn diagonal(set: IndexSet) -> Self {
        HornTriple {
            i: set.clone(),
            j: set.clone(),
            k: set,
        }
    }

    pub fn n(&self) -> usize {
        self.i.n()
    }

    pub fn r(&self) -> usize {
        self.i.len()
    }

    pub fn sets(&self) -> [&IndexSet; 3] {
        [&self.i, &self.j, &self.k]
    }

    /// All six orderings of `(I, J, K)`, identity first.
    pub fn permutations(&self) -> [HornTriple; 6] {
        let (i, j, k) = (&self.i, &self.j, &self.k);
        let t = |a: &IndexSet, b: &IndexSet, c: &IndexSet| HornTriple {
            i: a.clone(),
            j: b.clone(),
            k: c.clone(),
        };
        [t(i, j, k), t(i, k, j), t(j, i, k), t(j, k, i), t(k, i, j), t(k, j, i)]
    }

    /// Orbit representative under permutations: the three sets sorted
    /// lexicographically by their elements.
    pub fn normalized(&self) -> HornTriple {
        let mut sets = [self.i.clone(), self.j.clone(), self.k.clone()];
        sets.sort_by(|a, b| a.elements().cmp(b.elements()));
        let [i, j, k] = sets;
        HornTriple { i, j, k }
    }

    /// Converts between the classic and tilde conventions (flip `I` and `J`).
    /// The map is its own inverse.
    pub fn convert(&self) -> HornTriple {
        HornTriple {
            i: self.i.flip(),
            j: self.j.flip(),
            k: self.k.clone(),
        }
    }

    /// `(ρ(σ(I)), ρ(σ(J)), ρ(K))` for a triple in the tilde convention.
    pub fn phi(&self) -> PartitionTriple {
        let r = self.r();
        PartitionTriple {
            lambda: self.i.flip().to_partition(r).expect("size checked"),
            mu: self.j.flip().to_partition(r).expect("size checked"),
            nu: self.k.to_partition(r).expect("size checked"),
        }
    }

    pub fn to_record(&self, variant: Variant) -> TripleRecord {
        TripleRecord {
            n: self.n(),
            r: self.r(),
            i: self.i.elements().to_vec(),
            j: self.j.elements().to_vec(),
            k: self.k.elements().to_vec(),
            variant,
        }
    }
}

impl fmt::Display for HornTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

/// Serialized form of a triple: `{"n","r","I","J","K","variant"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleRecord {
    pub n: usize,
    pub r: usize,
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
    pub variant: Variant,
}

impl TripleRecord {
    pub fn to_triple(&self) -> Result<HornTriple, HornError> {
        let t = HornTriple::from_lists(self.n, &self.i, &self.j, &self.k)?;
        if t.r() != self.r {
            return Err(HornError::WrongCardinality {
                expected: self.r,
                actual: t.r(),
            });
        }
        Ok(t)
    }
}

/// Right-hand side of the sum condition defining the `U` sets, as a function
/// of `ΣI + ΣJ` (classic: `ΣK` must equal this) or as the required total.
fn tilde_total(n: usize, r: usize) -> usize {
    // r(4n - r + 3)/2 is always an integer.
    r * (4 * n + 3 - r) / 2
}

/// True when the triple satisfies the sum condition of `U^n_r`.
pub fn in_u(t: &HornTriple, variant: Variant) -> bool {
    let (n, r) = (t.n(), t.r());
    match variant {
        Variant::Classic => t.i.sum() + t.j.sum() == t.k.sum() + r * (r + 1) / 2,
        Variant::Tilde => t.i.sum() + t.j.sum() + t.k.sum() == tilde_total(n, r),
    }
}

fn check_range(n: usize, r: usize) -> Result<(), HornError> {
    if r >= 1 && r <= n {
        Ok(())
    } else {
        Err(HornError::InvalidRange { n, r })
    }
}

/// All `r`-subsets of `{1..n}` in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<IndexSet> {
    (1..=n)
        .combinations(r)
        .map(|elements| IndexSet { elements, n })
        .collect()
}

/// Walks the candidates of `U^n_r` (lexicographic in `(I, J, K)`), keeping
/// those accepted by `keep`.
fn filter_u<F>(n: usize, r: usize, variant: Variant, exec: Execution, keep: F) -> Vec<HornTriple>
where
    F: Fn(&HornTriple) -> bool + Sync + Send,
{
    let sets = subsets(n, r);
    let max_sum = r * n;
    let mut by_sum: Vec<Vec<usize>> = vec![Vec::new(); max_sum + 1];
    for (idx, s) in sets.iter().enumerate() {
        by_sum[s.sum()].push(idx);
    }
    let offset = r * (r + 1) / 2;
    let total = tilde_total(n, r);
    exec.flat_map(&sets, |i| {
        let mut out = Vec::new();
        for j in &sets {
            let ij = i.sum() + j.sum();
            let k_sum = match variant {
                Variant::Classic => ij.checked_sub(offset),
                Variant::Tilde => total.checked_sub(ij),
            };
            let Some(k_sum) = k_sum.filter(|&s| s <= max_sum) else {
                continue;
            };
            for &kidx in &by_sum[k_sum] {
                let t = HornTriple {
                    i: i.clone(),
                    j: j.clone(),
                    k: sets[kidx].clone(),
                };
                if keep(&t) {
                    out.push(t);
                }
            }
        }
        out
    })
}

/// The sum-condition set `U^n_r` (or its tilde counterpart).
pub fn enumerate_u(n: usize, r: usize, variant: Variant) -> Result<Vec<HornTriple>, HornError> {
    check_range(n, r)?;
    Ok(filter_u(n, r, variant, Execution::default(), |_| true))
}

/// One recursive condition: positions `(F, G, H)` inside `{1..r}` and the
/// bound attached to level `p = |F|`.
#[derive(Debug, Clone)]
struct Condition {
    f: Vec<usize>,
    g: Vec<usize>,
    h: Vec<usize>,
    bound: usize,
}

impl Condition {
    fn holds(&self, t: &HornTriple, variant: Variant) -> bool {
        let pick = |set: &IndexSet, pos: &[usize]| pos.iter().map(|&q| set.at(q)).sum::<usize>();
        let (a, b, c) = (pick(&t.i, &self.f), pick(&t.j, &self.g), pick(&t.k, &self.h));
        match variant {
            Variant::Classic => a + b <= c + self.bound,
            Variant::Tilde => a + b + c >= self.bound,
        }
    }
}

/// Key of one memoized set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetKey {
    pub n: usize,
    pub r: usize,
    pub variant: Variant,
}

/// An enumerated Horn set with a membership index.
#[derive(Debug)]
pub struct TripleSet {
    key: SetKey,
    triples: Vec<HornTriple>,
    index: HashSet<HornTriple>,
}

impl TripleSet {
    pub fn new(key: SetKey, triples: Vec<HornTriple>) -> Self {
        let index = triples.iter().cloned().collect();
        TripleSet {
            key,
            triples,
            index,
        }
    }

    pub fn key(&self) -> SetKey {
        self.key
    }

    pub fn triples(&self) -> &[HornTriple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, t: &HornTriple) -> bool {
        self.index.contains(t)
    }
}

/// Persistent backing for [`TripleCache`]; the CLI provides an on-disk store.
pub trait TripleStore: Send + Sync {
    fn load(&self, key: SetKey) -> Option<Vec<HornTriple>>;
    fn save(&self, key: SetKey, triples: &[HornTriple]);
}

/// Memo of enumerated Horn sets keyed by `(n, r, variant)`.
///
/// Reads share the lock; a miss computes outside the lock and then inserts,
/// so the recursion into smaller sets never deadlocks.
pub struct TripleCache {
    memo: RwLock<HashMap<SetKey, Arc<TripleSet>>>,
    store: Option<Box<dyn TripleStore>>,
    exec: Execution,
}

impl Default for TripleCache {
    fn default() -> Self {
        Self::new()
    }
}

impl TripleCache {
    pub fn new() -> Self {
        TripleCache {
            memo: RwLock::new(HashMap::new()),
            store: None,
            exec: Execution::default(),
        }
    }

    pub fn with_store(store: Box<dyn TripleStore>) -> Self {
        TripleCache {
            store: Some(store),
            ..Self::new()
        }
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn execution(&self) -> Execution {
        self.exec
    }

    /// `T^n_r` (classic) or its tilde counterpart, memoized.
    pub fn get(&self, n: usize, r: usize, variant: Variant) -> Result<Arc<TripleSet>, HornError> {
        check_range(n, r)?;
        let key = SetKey { n, r, variant };
        if let Some(hit) = self.memo.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let triples = match self.store.as_ref().and_then(|s| s.load(key)) {
            Some(loaded) if plausible(key, &loaded) => loaded,
            _ => {
                let computed = self.compute(key)?;
                if let Some(store) = &self.store {
                    store.save(key, &computed);
                }
                computed
            }
        };
        let set = Arc::new(TripleSet::new(key, triples));
        let mut memo = self.memo.write().unwrap();
        Ok(memo.entry(key).or_insert(set).clone())
    }

    /// Membership in the memoized set.
    pub fn contains(&self, t: &HornTriple, variant: Variant) -> Result<bool, HornError> {
        Ok(self.get(t.n(), t.r(), variant)?.contains(t))
    }

    fn compute(&self, key: SetKey) -> Result<Vec<HornTriple>, HornError> {
        let SetKey { n, r, variant } = key;
        let mut conditions = Vec::new();
        for p in 1..r {
            let bound = match variant {
                Variant::Classic => p * (p + 1) / 2,
                Variant::Tilde => tilde_total(n, p),
            };
            for c in self.get(r, p, variant)?.triples() {
                conditions.push(Condition {
                    f: c.i.elements().to_vec(),
                    g: c.j.elements().to_vec(),
                    h: c.k.elements().to_vec(),
                    bound,
                });
            }
        }
        Ok(filter_u(n, r, variant, self.exec, |t| {
            conditions.iter().all(|c| c.holds(t, variant))
        }))
    }
}

/// Structural sanity check for a set loaded from a persistent store.
fn plausible(key: SetKey, triples: &[HornTriple]) -> bool {
    triples
        .iter()
        .all(|t| t.n() == key.n && t.r() == key.r && in_u(t, key.variant))
        && triples.iter().tuple_windows().all(|(a, b)| a < b)
}

/// Enumerates Horn's set for `(n, r, variant)` through `cache`.
pub fn enumerate_t(
    n: usize,
    r: usize,
    variant: Variant,
    cache: &TripleCache,
) -> Result<Arc<TripleSet>, HornError> {
    cache.get(n, r, variant)
}

/// Direct membership test for tilde triples with `r = 3`, from the explicit
/// list of thirteen conditions that the small sets of size one and two
/// produce.
pub fn member_t3_direct(t: &HornTriple) -> Result<bool, HornError> {
    if t.r() != 3 {
        return Err(HornError::NotSizeThree(t.r()));
    }
    let n = t.n();
    let (i, j, k) = (|p| t.i.at(p), |p| t.j.at(p), |p| t.k.at(p));
    let big = 4 * n + 1;
    let small = 2 * n + 1;
    let total: usize = (1..=3).map(|p| i(p) + j(p) + k(p)).sum();
    Ok(total == 6 * n
        && i(1) + i(2) + j(2) + j(3) + k(2) + k(3) >= big
        && i(2) + i(3) + j(1) + j(2) + k(2) + k(3) >= big
        && i(2) + i(3) + j(2) + j(3) + k(1) + k(2) >= big
        && i(1) + i(3) + j(1) + j(3) + k(2) + k(3) >= big
        && i(1) + i(3) + j(2) + j(3) + k(1) + k(3) >= big
        && i(2) + i(3) + j(1) + j(3) + k(1) + k(3) >= big
        && i(1) + j(3) + k(3) >= small
        && i(3) + j(1) + k(3) >= small
        && i(3) + j(3) + k(1) >= small
        && i(2) + j(2) + k(3) >= small
        && i(2) + j(3) + k(2) >= small
        && i(3) + j(2) + k(2) >= small)
}
