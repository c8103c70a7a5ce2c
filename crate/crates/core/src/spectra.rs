//! Numerical check of Horn inequalities on eigenvalues of `A`, `B` and
//! `A + B` for sampled complex Hermitian matrices.

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;
use crate::horn::{HornError, HornTriple, IndexSet, TripleCache, TripleRecord, Variant};

const JACOBI_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),
    #[error("t = {0} is outside [0, 1)")]
    OutOfRange(f64),
    #[error("spectrum values must be finite and weakly decreasing")]
    NotSorted,
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error(transparent)]
    Horn(#[from] HornError),
}

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_real_diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn mul(&self, other: &CMatrix) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                for j in 0..n {
                    m.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        m
    }

    pub fn add(&self, other: &CMatrix) -> Self {
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |m_ij - conj(m_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..=i {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Eigenvalues in weakly decreasing order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    pub fn new(values: Vec<f64>) -> Result<Self, SpectraError> {
        if values.iter().all(|v| v.is_finite()) && values.windows(2).all(|w| w[0] >= w[1]) {
            Ok(Spectrum(values))
        } else {
            Err(SpectraError::NotSorted)
        }
    }

    /// Sorts descending.
    pub fn from_unsorted(mut values: Vec<f64>) -> Result<Self, SpectraError> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(SpectraError::NotSorted);
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Spectrum(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `α_i`, 1-based.
    pub fn at(&self, i: usize) -> f64 {
        self.0[i - 1]
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

/// Cyclic Jacobi rotations on a Hermitian matrix until the off-diagonal
/// Frobenius mass is below `1e-12 · ‖M‖`.
pub fn jacobi_eigenvalues(m: &CMatrix) -> Result<Spectrum, SpectraError> {
    let n = m.n();
    let norm = m.frobenius_norm();
    let defect = m.hermitian_defect();
    if defect > 1e-12 * (1.0 + norm) {
        return Err(SpectraError::NotHermitian(defect));
    }
    let mut a = m.clone();
    let target = JACOBI_TOL * norm;
    let mut sweeps = 0;
    while a.off_diagonal_norm() > target {
        if sweeps == MAX_SWEEPS {
            return Err(SpectraError::NoConvergence {
                sweeps,
                residual: a.off_diagonal_norm(),
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
        sweeps += 1;
    }
    Spectrum::from_unsorted((0..n).map(|i| a[(i, i)].re).collect())
}

/// Zeroes `a[p][q]` by `A ← G* A G` with `G = diag(1, e^{-iφ}) · R(c, s)`
/// on the `(p, q)` plane, where `a_pq = |b| e^{iφ}`.
fn rotate(a: &mut CMatrix, p: usize, q: usize) {
    let b = a[(p, q)];
    let abs_b = b.norm();
    if abs_b == 0.0 {
        return;
    }
    let phase = (b / abs_b).conj();
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * abs_b);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let (gpp, gpq) = (Complex64::new(c, 0.0), Complex64::new(s, 0.0));
    let (gqp, gqq) = (-phase * s, phase * c);
    let n = a.n();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * gpp + akq * gqp;
        a[(k, q)] = akp * gpq + akq * gqq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
        a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
}

fn complex_normal<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// `(G + G*)/2` for a complex Gaussian `G`.
pub fn gaussian_hermitian<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let mut g = CMatrix::zeros(n);
    for z in g.data.iter_mut() {
        *z = complex_normal(rng);
    }
    let mut h = g.add(&g.adjoint());
    for z in h.data.iter_mut() {
        *z *= 0.5;
    }
    h
}

/// Gram–Schmidt orthonormalization of the columns of a complex Gaussian matrix.
pub fn pseudo_haar_unitary<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n).map(|_| complex_normal(rng)).collect();
        // two passes keep the columns orthonormal to working precision
        for _ in 0..2 {
            for u in &cols {
                let dot: Complex64 = u.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= dot * ui;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    let mut u = CMatrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    u
}

/// `U diag(α) U*`, made exactly Hermitian.
pub fn with_spectrum(u: &CMatrix, alpha: &Spectrum) -> CMatrix {
    let m = u.mul(&CMatrix::from_real_diagonal(alpha.values())).mul(&u.adjoint());
    let mut h = m.add(&m.adjoint());
    for z in h.data.iter_mut() {
        *z *= 0.5;
    }
    h
}

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianPair {
    pub a: CMatrix,
    pub b: CMatrix,
    pub seed: u64,
}

impl HermitianPair {
    /// `1 + ‖A‖ + ‖B‖` (Frobenius).
    pub fn scale(&self) -> f64 {
        1.0 + self.a.frobenius_norm() + self.b.frobenius_norm()
    }
}

/// Deterministic in `seed`: Gaussian Hermitian entries, or the given spectra
/// conjugated by independent pseudo-Haar unitaries.
pub fn sample_pair(n: usize, seed: u64, spectra: Option<(&Spectrum, &Spectrum)>) -> HermitianPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b) = match spectra {
        None => (gaussian_hermitian(n, &mut rng), gaussian_hermitian(n, &mut rng)),
        Some((alpha, beta)) => {
            let u = pseudo_haar_unitary(n, &mut rng);
            let v = pseudo_haar_unitary(n, &mut rng);
            (with_spectrum(&u, alpha), with_spectrum(&v, beta))
        }
    };
    HermitianPair { a, b, seed }
}

/// Seed of sample `index` in a sweep started from `seed`; independent of
/// evaluation order.
pub fn sample_seed(seed: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng.next_u64()
}

/// `λ(t) = α_j` for `(j-1)/n ≤ t < j/n`.
pub fn eigenvalue_function(s: &Spectrum, t: f64) -> Result<f64, SpectraError> {
    if !(0.0..1.0).contains(&t) || s.is_empty() {
        return Err(SpectraError::OutOfRange(t));
    }
    let n = s.len();
    let j = ((t * n as f64).floor() as usize).min(n - 1);
    Ok(s.values()[j])
}

/// `∫_{ω_I} λ(t) dt = (1/n) Σ_{i∈I} α_i`.
pub fn omega_integral(s: &Spectrum, set: &IndexSet) -> f64 {
    set.elements().iter().map(|&i| s.at(i)).sum::<f64>() / s.len() as f64
}

/// `lhs - rhs` of the Horn inequality for `t`; classic reads `α_i, β_j`,
/// tilde reads `α_{n+1-i}, β_{n+1-j}`.
pub fn check_horn(
    alpha: &Spectrum,
    beta: &Spectrum,
    gamma: &Spectrum,
    t: &HornTriple,
    form: Variant,
) -> Result<f64, SpectraError> {
    let n = t.n();
    for s in [alpha, beta, gamma] {
        if s.len() != n {
            return Err(SpectraError::DimensionMismatch {
                expected: n,
                actual: s.len(),
            });
        }
    }
    let pick = |x: usize| match form {
        Variant::Classic => x,
        Variant::Tilde => n + 1 - x,
    };
    let lhs: f64 = t.i.elements().iter().map(|&i| alpha.at(pick(i))).sum::<f64>()
        + t.j.elements().iter().map(|&j| beta.at(pick(j))).sum::<f64>();
    let rhs: f64 = t.k.elements().iter().map(|&k| gamma.at(k)).sum();
    Ok(lhs - rhs)
}

/// Minimum slack of one triple over all samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripleSlack {
    pub n: usize,
    pub r: usize,
    pub triple: TripleRecord,
    /// `min (lhs - rhs) / (1 + ‖A‖ + ‖B‖)`.
    pub min_slack: f64,
    pub argmin_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    /// Slack failure threshold, relative to `1 + ‖A‖ + ‖B‖`.
    pub tol: f64,
    /// Trace identity threshold, same scale.
    pub trace_tol: f64,
    pub variant: Variant,
}

impl SweepConfig {
    pub fn new(n: usize, samples: usize, seed: u64) -> Self {
        SweepConfig {
            n,
            samples,
            seed,
            tol: 1e-9,
            trace_tol: 1e-10,
            variant: Variant::Classic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlackReport {
    pub config: SweepConfig,
    pub triples: Vec<TripleSlack>,
    pub global_min_slack: f64,
    /// `max |Σα + Σβ - Σγ| / (1 + ‖A‖ + ‖B‖)`.
    pub max_trace_defect: f64,
    pub slack_failures: usize,
    pub trace_failures: usize,
}

impl SlackReport {
    pub fn passed(&self) -> bool {
        self.slack_failures == 0 && self.trace_failures == 0
    }
}

struct SampleOutcome {
    seed: u64,
    slacks: Vec<f64>,
    trace_defect: f64,
}

/// Evaluates every Horn inequality for `r = 1..n-1` on `samples` pairs.
/// Even-numbered samples have Gaussian entries; odd-numbered ones have
/// small integer spectra with repeats, which sit on the boundary of many
/// inequalities.
pub fn sweep(config: &SweepConfig, cache: &TripleCache, exec: Execution) -> Result<SlackReport, SpectraError> {
    let n = config.n;
    let mut triples = Vec::new();
    for r in 1..n {
        triples.extend(cache.get(n, r, config.variant)?.triples().iter().cloned());
    }
    let outcomes = exec.map_range(config.samples, |idx| -> Result<SampleOutcome, SpectraError> {
        let seed = sample_seed(config.seed, idx as u64);
        let pair = if idx % 2 == 0 {
            sample_pair(n, seed, None)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5bd1_e995);
            let alpha = Spectrum::from_unsorted((0..n).map(|_| rng.random_range(-3..=3) as f64).collect())?;
            let beta = Spectrum::from_unsorted((0..n).map(|_| rng.random_range(-3..=3) as f64).collect())?;
            sample_pair(n, seed, Some((&alpha, &beta)))
        };
        let alpha = jacobi_eigenvalues(&pair.a)?;
        let beta = jacobi_eigenvalues(&pair.b)?;
        let gamma = jacobi_eigenvalues(&pair.a.add(&pair.b))?;
        let scale = pair.scale();
        let slacks = triples
            .iter()
            .map(|t| Ok(check_horn(&alpha, &beta, &gamma, t, config.variant)? / scale))
            .collect::<Result<Vec<_>, SpectraError>>()?;
        Ok(SampleOutcome {
            seed,
            slacks,
            trace_defect: (alpha.sum() + beta.sum() - gamma.sum()).abs() / scale,
        })
    });
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>, _>>()?;

    let mut report = SlackReport {
        config: config.clone(),
        triples: triples
            .iter()
            .map(|t| TripleSlack {
                n,
                r: t.r(),
                triple: t.to_record(config.variant),
                min_slack: f64::INFINITY,
                argmin_seed: 0,
            })
            .collect(),
        global_min_slack: f64::INFINITY,
        max_trace_defect: 0.0,
        slack_failures: 0,
        trace_failures: 0,
    };
    for o in &outcomes {
        report.max_trace_defect = report.max_trace_defect.max(o.trace_defect);
        if o.trace_defect > config.trace_tol {
            report.trace_failures += 1;
        }
        for (entry, &s) in report.triples.iter_mut().zip(&o.slacks) {
            if s < entry.min_slack {
                entry.min_slack = s;
                entry.argmin_seed = o.seed;
            }
            if s < -config.tol {
                report.slack_failures += 1;
            }
        }
    }
    report.global_min_slack = report
        .triples
        .iter()
        .map(|t| t.min_slack)
        .fold(f64::INFINITY, f64::min);
    Ok(report)
}
