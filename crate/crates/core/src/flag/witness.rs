//! Witness projections for the flag property of a triple: for flags
//! `e, f, g` of `Q^N`, a subspace `p` with `τ(p) = r/n` and
//! `τ(e_{i_y/n} ∧ p) ≥ y/n` (likewise `f` with `J`, `g` with `K`).

use crate::horn::HornTriple;
use crate::reduce::{is_irreducible, reduce, reduction_witnesses, ReductionWitness};

use super::chain::{refine_superflag, Flag};
use super::construct::{almost_invariant, construct_three, ConstructCase};
use super::map::{complementary_idempotents, LinearMap};
use super::subspace::{Subspace, Trace};
use super::FlagError;

/// The three flags a witness is built against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagTriple {
    pub e: Flag,
    pub f: Flag,
    pub g: Flag,
}

impl FlagTriple {
    pub fn new(e: Flag, f: Flag, g: Flag) -> Result<Self, FlagError> {
        if e.ambient() != f.ambient() || f.ambient() != g.ambient() {
            return Err(FlagError::AmbientMismatch(e.ambient(), f.ambient().max(g.ambient())));
        }
        Ok(FlagTriple { e, f, g })
    }

    pub fn random<R: rand::Rng>(ambient: usize, rng: &mut R) -> Self {
        FlagTriple {
            e: Flag::random(ambient, rng),
            f: Flag::random(ambient, rng),
            g: Flag::random(ambient, rng),
        }
    }

    pub fn ambient(&self) -> usize {
        self.e.ambient()
    }

    pub fn flags(&self) -> [&Flag; 3] {
        [&self.e, &self.f, &self.g]
    }
}

/// One checked inequality of the flag property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub value: Trace,
    pub bound: Trace,
    /// `value ≤ bound` when true, `value ≥ bound` otherwise.
    pub upper: bool,
}

impl Check {
    pub fn holds(&self) -> bool {
        if self.upper {
            self.value <= self.bound
        } else {
            self.value >= self.bound
        }
    }
}

/// Every inequality of the flag property, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PnReport {
    pub checks: Vec<Check>,
}

impl PnReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(Check::holds)
    }
}

/// Evaluates `τ(p) ≤ r/n + eps` and the `3r` meet bounds.
pub fn verify_pn(p: &Subspace, t: &HornTriple, flags: &FlagTriple, eps: Trace) -> Result<PnReport, FlagError> {
    let (n, r) = (t.n(), t.r());
    let ambient = flags.ambient();
    if p.ambient() != ambient {
        return Err(FlagError::AmbientMismatch(ambient, p.ambient()));
    }
    let mut checks = vec![Check {
        label: "tau(p)".into(),
        value: p.trace(),
        bound: Trace::new(r as i64, n as i64) + eps,
        upper: true,
    }];
    for (name, flag, set) in [("e", &flags.e, &t.i), ("f", &flags.f, &t.j), ("g", &flags.g, &t.k)] {
        for y in 1..=r {
            let level = set.at(y);
            checks.push(Check {
                label: format!("tau({name}_{{{level}/{n}}} ∧ p)"),
                value: Trace::new(flag.at(level, n)?.meet_dim(p)? as i64, ambient as i64),
                bound: Trace::new(y as i64, n as i64),
                upper: false,
            });
        }
    }
    Ok(PnReport { checks })
}

/// Diagonal triple `({1..n})³`: the whole space.
pub fn base_witness(t: &HornTriple, flags: &FlagTriple) -> Result<Subspace, FlagError> {
    if t.r() != t.n() {
        return Err(FlagError::Unsupported(t.clone()));
    }
    Ok(Subspace::full(flags.ambient()))
}

/// `m` when `t = ({m, m+1, 2m+1})³`.
fn consecutive_middle(t: &HornTriple) -> Option<usize> {
    let e = t.i.elements();
    let n = t.n();
    (t.r() == 3 && t.i == t.j && t.j == t.k && n % 2 == 1 && e == [(n - 1) / 2, n.div_ceil(2), n])
        .then_some((n - 1) / 2)
}

/// `({m, m+1, 2m+1})³` with `m ≥ 2`: a projection of trace at most `3/n`
/// meeting each `(m+1)/n` level in trace `2/n`.
fn consecutive_witness(t: &HornTriple, m: usize, flags: &FlagTriple) -> Result<(Subspace, ConstructCase), FlagError> {
    let n = t.n();
    let levels = flags
        .flags()
        .map(|fl| fl.at(m + 1, n))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    construct_three([&levels[0], &levels[1], &levels[2]], Trace::new(2, n as i64))
}

/// Witness for an irreducible triple with a known construction.
fn irreducible_witness(t: &HornTriple, flags: &FlagTriple) -> Result<Subspace, FlagError> {
    match consecutive_middle(t) {
        Some(m) if m >= 2 => Ok(consecutive_witness(t, m, flags)?.0),
        _ => base_witness(t, flags),
    }
}

/// Builds a witness for `t` (at level `n + 1`) from a witness for the
/// reduced triple, found by `solve` inside a subspace `q` of trace
/// `n/(n+1)` containing the levels cut out by the witness `(u, v, w)`.
pub fn lift_witness<S>(
    t: &HornTriple,
    flags: &FlagTriple,
    wit: ReductionWitness,
    solve: S,
) -> Result<Subspace, FlagError>
where
    S: FnOnce(&HornTriple, &FlagTriple) -> Result<Subspace, FlagError>,
{
    let big_n = flags.ambient();
    let n_top = t.n();
    if !big_n.is_multiple_of(n_top) {
        return Err(FlagError::Quantization(format!(
            "dimension {big_n} is not a multiple of {n_top}"
        )));
    }
    let d = big_n / n_top;
    let reduced = reduce(t, wit).map_err(|_| FlagError::InvalidWitness(wit, t.clone()))?;
    let corners = [t.i.at(wit.u) * d, t.j.at(wit.v) * d, t.k.at(wit.w) * d];
    let base = flags.e.level(corners[0]).join(&flags.f.level(corners[1]))?.join(&flags.g.level(corners[2]))?;
    let q = base.extend_within(&Subspace::full(big_n), big_n - d)?;
    let cut = |flag: &Flag, corner: usize| -> Result<Flag, FlagError> {
        let chain = (0..=big_n - d)
            .map(|level| {
                let s = if level <= corner {
                    flag.level(level)
                } else {
                    flag.level(level + d).meet(&q)?
                };
                q.coordinates_of(&s)
            })
            .collect::<Result<Vec<_>, _>>()?;
        refine_superflag(&chain)
    };
    let inner = FlagTriple {
        e: cut(&flags.e, corners[0])?,
        f: cut(&flags.f, corners[1])?,
        g: cut(&flags.g, corners[2])?,
    };
    let p = solve(&reduced, &inner)?;
    q.from_coordinates(&p)
}

fn witness_unpadded(t: &HornTriple, flags: &FlagTriple) -> Result<Subspace, FlagError> {
    if is_irreducible(t) {
        if t.r() == t.n() || consecutive_middle(t).is_some() {
            return irreducible_witness(t, flags);
        }
        return Err(FlagError::Unsupported(t.clone()));
    }
    let wit = reduction_witnesses(t)[0];
    lift_witness(t, flags, wit, witness_unpadded)
}

/// A subspace with the flag property for `t`, of trace exactly `r/n`.
///
/// Reduces `t` step by step to an irreducible triple, solves that one
/// directly, and lifts the solution back. Supported when the irreducible end
/// is a diagonal triple with `r = n` or `({m, m+1, 2m+1})³`, which covers all
/// of `r ≤ 2` and the LR-minimal triples with `r = 3`.
pub fn witness_pn(t: &HornTriple, flags: &FlagTriple) -> Result<Subspace, FlagError> {
    let big_n = flags.ambient();
    if !big_n.is_multiple_of(t.n()) {
        return Err(FlagError::Quantization(format!(
            "dimension {big_n} is not a multiple of {}",
            t.n()
        )));
    }
    let p = witness_unpadded(t, flags)?;
    let target = t.r() * (big_n / t.n());
    if p.dim() > target {
        return Err(FlagError::Quantization(format!(
            "construction produced trace {} above {}/{}",
            p.trace(),
            t.r(),
            t.n()
        )));
    }
    p.extend_within(&Subspace::full(big_n), target)
}

/// Smallest `N = n·d` at which [`witness_pn`] runs for `t`.
///
/// The cut-downs keep `d` fixed, so only the irreducible end matters: the
/// diagonal case needs nothing and the consecutive case works with `β N`
/// even, and `β = 2/n` gives `β N = 2d`. Hence `d = 1`.
pub fn min_dimension(t: &HornTriple) -> usize {
    t.n()
}

/// Result of the wheel construction together with its intermediate pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WheelOutput {
    pub p: Subspace,
    /// `q1, q2, q3` with `q_i ≤ e_i`.
    pub q: [Subspace; 3],
    /// `r1, r2, r3` with `r_k ≤ f_k ∧ (e_i ∨ e_j)`.
    pub r: [Subspace; 3],
    pub x_sharp_q1: Subspace,
}

/// Verifies `τ(e_i) = 1/3`, `τ(f_i) = 2/3`, `e_i ≤ f_i`, `e_i ∧ f_j = 0`
/// and `e_k ∧ (e_i ∨ e_j) = 0`.
pub fn check_general_position(e: [&Subspace; 3], f: [&Subspace; 3]) -> Result<(), FlagError> {
    let big_n = e[0].ambient();
    let fail = |msg: String| Err(FlagError::GeneralPosition(msg));
    if !big_n.is_multiple_of(6) {
        return Err(FlagError::Quantization(format!("dimension {big_n} is not a multiple of 6")));
    }
    for i in 0..3 {
        if e[i].ambient() != big_n || f[i].ambient() != big_n {
            return Err(FlagError::AmbientMismatch(big_n, e[i].ambient().max(f[i].ambient())));
        }
        if 3 * e[i].dim() != big_n {
            return fail(format!("tau(e{}) is not 1/3", i + 1));
        }
        if 3 * f[i].dim() != 2 * big_n {
            return fail(format!("tau(f{}) is not 2/3", i + 1));
        }
        if !e[i].is_subspace_of(f[i]) {
            return fail(format!("e{0} is not inside f{0}", i + 1));
        }
    }
    for i in 0..3 {
        for (j, fj) in f.iter().enumerate() {
            if i != j && e[i].meet_dim(fj)? != 0 {
                return fail(format!("e{} ∧ f{} is not zero", i + 1, j + 1));
            }
        }
        let (a, b) = ((i + 1) % 3, (i + 2) % 3);
        if e[i].meet_dim(&e[a].join(e[b])?)? != 0 {
            return fail(format!("e{} ∧ (e{} ∨ e{}) is not zero", i + 1, a + 1, b + 1));
        }
    }
    Ok(())
}

/// `p` with `τ(p) ≤ 1/2 + eps`, `τ(p ∧ e_i) ≥ 1/6`, `τ(p ∧ f_i) ≥ 1/3`,
/// obtained by carrying an almost invariant piece of `e1` once around the
/// six maps `S_i^j = E(e_i, e_j) · P_{f_k ∧ (e_i ∨ e_j)}` and their partial
/// inverses `T_i^j`.
pub fn wheel_construction(e: [&Subspace; 3], f: [&Subspace; 3], eps: Trace) -> Result<WheelOutput, FlagError> {
    check_general_position(e, f)?;
    let big_n = e[0].ambient();
    let s = |i: usize, j: usize| -> Result<LinearMap, FlagError> {
        let k = 3 - i - j;
        let (idem, _) = complementary_idempotents(e[i], e[j])?;
        let spoke = f[k].meet(&e[i].join(e[j])?)?;
        Ok(idem.compose(&LinearMap::projection(&spoke)))
    };
    let t = |i: usize, j: usize| -> Result<LinearMap, FlagError> { Ok(s(i, j)?.partial_inverse()) };
    // indices are 0-based: S(0, 2) is S_1^3
    let (s13, t31, s32, t23, s21, t12) = (s(0, 2)?, t(2, 0)?, s(2, 1)?, t(1, 2)?, s(1, 0)?, t(0, 1)?);
    let x = s13.compose(&t31).compose(&s32).compose(&t23).compose(&s21).compose(&t12);
    let (q1, _) = almost_invariant(&x, Trace::new(1, 6), eps)?;
    let r3 = t12.sharp(&q1)?;
    let q2 = s21.sharp(&r3)?;
    let r1 = t23.sharp(&q2)?;
    let q3 = s32.sharp(&r1)?;
    let r2 = t31.sharp(&q3)?;
    let x_sharp_q1 = x.sharp(&q1)?;
    let p = q1.join(&q2)?.join(&q3)?.join(&x_sharp_q1)?;
    debug_assert_eq!(p.ambient(), big_n);
    Ok(WheelOutput {
        p,
        q: [q1, q2, q3],
        r: [r1, r2, r3],
        x_sharp_q1,
    })
}

/// The nine inequalities the wheel construction promises.
pub fn verify_wheel(p: &Subspace, e: [&Subspace; 3], f: [&Subspace; 3], eps: Trace) -> Result<PnReport, FlagError> {
    let mut checks = vec![Check {
        label: "tau(p)".into(),
        value: p.trace(),
        bound: Trace::new(1, 2) + eps,
        upper: true,
    }];
    for (i, ei) in e.iter().enumerate() {
        checks.push(Check {
            label: format!("tau(p ∧ e{})", i + 1),
            value: Trace::new(p.meet_dim(ei)? as i64, p.ambient() as i64),
            bound: Trace::new(1, 6),
            upper: false,
        });
    }
    for (i, fi) in f.iter().enumerate() {
        checks.push(Check {
            label: format!("tau(p ∧ f{})", i + 1),
            value: Trace::new(p.meet_dim(fi)? as i64, p.ambient() as i64),
            bound: Trace::new(1, 3),
            upper: false,
        });
    }
    Ok(PnReport { checks })
}

/// Random `e_i` of trace `1/3` and `f_i = e_i ∨ (random of trace 1/3)`;
/// redraws until the general-position hypotheses hold.
pub fn random_wheel_configuration<R: rand::Rng>(big_n: usize, rng: &mut R) -> ([Subspace; 3], [Subspace; 3]) {
    assert!(big_n.is_multiple_of(6) && big_n > 0);
    loop {
        let e: [Subspace; 3] = std::array::from_fn(|_| Subspace::random(big_n, big_n / 3, rng));
        let f: [Subspace; 3] = std::array::from_fn(|i| {
            e[i].join(&Subspace::random(big_n, big_n / 3, rng)).expect("same ambient")
        });
        if check_general_position([&e[0], &e[1], &e[2]], [&f[0], &f[1], &f[2]]).is_ok() {
            return (e, f);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn diag(n: usize, e: &[usize]) -> HornTriple {
        HornTriple::diagonal(crate::horn::IndexSet::new(n, e.to_vec()).unwrap())
    }

    #[test]
    fn diagonal_base_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=3 {
            let all: Vec<usize> = (1..=n).collect();
            let t = diag(n, &all);
            let flags = FlagTriple::random(n, &mut rng);
            let p = witness_pn(&t, &flags).unwrap();
            assert_eq!(p, Subspace::full(n));
            assert!(verify_pn(&p, &t, &flags, Trace::from_integer(0)).unwrap().holds());
        }
    }

    #[test]
    fn consecutive_triple_at_minimal_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let t = diag(5, &[2, 3, 5]);
        for _ in 0..3 {
            let flags = FlagTriple::random(min_dimension(&t), &mut rng);
            let p = witness_pn(&t, &flags).unwrap();
            assert!(verify_pn(&p, &t, &flags, Trace::from_integer(0)).unwrap().holds());
        }
    }

    #[test]
    fn zero_subspace_fails() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = diag(5, &[2, 3, 5]);
        let flags = FlagTriple::random(5, &mut rng);
        assert!(!verify_pn(&Subspace::zero(5), &t, &flags, Trace::from_integer(0)).unwrap().holds());
    }

    #[test]
    fn wheel_on_random_configuration() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (e, f) = random_wheel_configuration(12, &mut rng);
        let e = [&e[0], &e[1], &e[2]];
        let f = [&f[0], &f[1], &f[2]];
        let eps = Trace::new(1, 12);
        let out = wheel_construction(e, f, eps).unwrap();
        assert!(verify_wheel(&out.p, e, f, eps).unwrap().holds());
    }

    #[test]
    fn wheel_rejects_repeated_projection() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (e, f) = random_wheel_configuration(6, &mut rng);
        let err = wheel_construction([&e[0], &e[0], &e[2]], [&f[0], &f[1], &f[2]], Trace::new(1, 6));
        assert!(matches!(err, Err(FlagError::GeneralPosition(_))));
    }
}
