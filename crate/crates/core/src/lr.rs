//! Littlewood–Richardson coefficients by exhaustive enumeration of fillings.
//!
//! A filling of `ν \ λ` according to `μ` is recorded by the counts `f[ℓ][k]`
//! of the letter `k` in row `ℓ` (`1 ≤ k ≤ ℓ ≤ r`). The admissible count
//! matrices are exactly the nonnegative integer solutions of
//!
//! * (e1) `λ_ℓ + Σ_{k≤ℓ} f[ℓ][k] = ν_ℓ`, row lengths;
//! * (e2) `Σ_{ℓ≥k} f[ℓ][k] = μ_k`, content;
//! * (e3) `λ_{ℓ+1} + Σ_{k≤p+1} f[ℓ+1][k] ≤ λ_ℓ + Σ_{k≤p} f[ℓ][k]` for `0 ≤ p < ℓ < r`, columns strictly increase;
//! * (e4) `Σ_{ℓ=k+1}^{p+1} f[ℓ][k+1] ≤ Σ_{ℓ=k}^{p} f[ℓ][k]` for `1 ≤ k ≤ p < r`, lattice word.

use std::fmt;

use thiserror::Error;

use crate::horn::{HornTriple, Partition, PartitionTriple};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LrError {
    #[error("filling count exceeds u64")]
    Overflow,
    #[error("filling has {actual} rows, expected {expected}")]
    ShapeMismatch { expected: usize, actual: usize },
    #[error("shift a = {a}, b = {b} does not fit in {r} rows")]
    ShiftOutOfRange { a: usize, b: usize, r: usize },
    #[error("reduction by a = {a}, b = {b} does not produce partitions from {pt}")]
    NotReducible { a: usize, b: usize, pt: PartitionTriple },
}

/// Lower-triangular table of letter counts, `f[ℓ][k]` for `1 ≤ k ≤ ℓ ≤ r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FillingMatrix {
    rows: Vec<Vec<usize>>,
}

impl FillingMatrix {
    pub fn zero(r: usize) -> Self {
        FillingMatrix {
            rows: (1..=r).map(|l| vec![0; l]).collect(),
        }
    }

    /// Builds from explicit rows; row `ℓ` (1-based) must have `ℓ` entries.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Option<Self> {
        rows.iter()
            .enumerate()
            .all(|(idx, row)| row.len() == idx + 1)
            .then_some(FillingMatrix { rows })
    }

    pub fn r(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// `f[ℓ][k]`, 1-based.
    pub fn get(&self, l: usize, k: usize) -> usize {
        self.rows[l - 1][k - 1]
    }

    fn get_mut(&mut self, l: usize, k: usize) -> &mut usize {
        &mut self.rows[l - 1][k - 1]
    }

    /// Checks (e1)–(e4) directly, independently of the enumeration.
    pub fn is_valid_for(&self, pt: &PartitionTriple) -> bool {
        let r = pt.len();
        if self.r() != r {
            return false;
        }
        let (lam, mu, nu) = (&pt.lambda, &pt.mu, &pt.nu);
        let row_prefix = |l: usize, p: usize| (1..=p).map(|k| self.get(l, k)).sum::<usize>();
        let e1 = (1..=r).all(|l| lam.part(l) + row_prefix(l, l) == nu.part(l));
        let e2 = (1..=r).all(|k| (k..=r).map(|l| self.get(l, k)).sum::<usize>() == mu.part(k));
        let e3 = (1..r).all(|l| {
            (0..l).all(|p| lam.part(l + 1) + row_prefix(l + 1, p + 1) <= lam.part(l) + row_prefix(l, p))
        });
        let e4 = (1..r).all(|p| {
            (1..=p).all(|k| {
                let upper: usize = (k + 1..=p + 1).map(|l| self.get(l, k + 1)).sum();
                let lower: usize = (k..=p).map(|l| self.get(l, k)).sum();
                upper <= lower
            })
        });
        e1 && e2 && e3 && e4
    }
}

impl fmt::Display for FillingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join(" | "))
    }
}

/// Depth-first assignment of the counts, row by row and letter by letter,
/// every variable tried in increasing order. All of (e3), (e4) and the
/// content budget are upper bounds on the variable being assigned, so they
/// prune before descending; the last letter of each row is forced by (e1).
struct Search<'a> {
    lam: &'a [usize],
    mu: &'a [usize],
    nu: &'a [usize],
    r: usize,
    f: FillingMatrix,
    used: Vec<usize>,
    snapshot: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(pt: &'a PartitionTriple) -> Self {
        let r = pt.len();
        Search {
            lam: pt.lambda.parts(),
            mu: pt.mu.parts(),
            nu: pt.nu.parts(),
            r,
            f: FillingMatrix::zero(r),
            used: vec![0; r + 1],
            snapshot: vec![0; r + 1],
        }
    }

    fn feasible_shape(&self) -> bool {
        let total_lam: usize = self.lam.iter().sum();
        let total_mu: usize = self.mu.iter().sum();
        let total_nu: usize = self.nu.iter().sum();
        total_lam + total_mu == total_nu && self.lam.iter().zip(self.nu).all(|(l, n)| l <= n)
    }

    /// Upper bound on `f[l][k]` given everything assigned before it.
    /// `partial` is `Σ_{k' < k} f[l][k']`.
    fn bound(&self, l: usize, k: usize, partial: usize) -> Option<usize> {
        let row_room = self.nu[l - 1] - self.lam[l - 1] - partial;
        let mut ub = row_room.min(self.mu[k - 1].checked_sub(self.used[k])?);
        if k >= 2 {
            // lattice condition through row l for letter k against letter k-1 through row l-1
            ub = ub.min(self.snapshot[k - 1].checked_sub(self.snapshot[k])?);
        }
        if l >= 2 && k < l {
            // column strictness against row l-1, with p = k-1
            let above: usize = self.lam[l - 2] + (1..k).map(|kk| self.f.get(l - 1, kk)).sum::<usize>();
            ub = ub.min(above.checked_sub(self.lam[l - 1] + partial)?);
        }
        Some(ub)
    }

    fn run<V: FnMut(&FillingMatrix) -> bool>(&mut self, visit: &mut V) {
        if self.r == 0 {
            visit(&self.f);
            return;
        }
        if self.feasible_shape() {
            self.snapshot.copy_from_slice(&self.used);
            self.step(1, 1, 0, visit);
        }
    }

    /// Returns false to stop the search.
    fn step<V: FnMut(&FillingMatrix) -> bool>(
        &mut self,
        l: usize,
        k: usize,
        partial: usize,
        visit: &mut V,
    ) -> bool {
        let Some(ub) = self.bound(l, k, partial) else {
            return true;
        };
        let room = self.nu[l - 1] - self.lam[l - 1] - partial;
        let range = if k == l {
            // forced by the row length
            if room > ub {
                return true;
            }
            room..=room
        } else {
            0..=ub
        };
        for value in range {
            *self.f.get_mut(l, k) = value;
            self.used[k] += value;
            let keep_going = if k < l {
                self.step(l, k + 1, partial + value, visit)
            } else if l < self.r {
                let saved = self.snapshot.clone();
                self.snapshot.copy_from_slice(&self.used);
                let go = self.step(l + 1, 1, 0, visit);
                self.snapshot = saved;
                go
            } else if self.used[1..] == *self.mu {
                visit(&self.f)
            } else {
                true
            };
            self.used[k] -= value;
            *self.f.get_mut(l, k) = 0;
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// Every filling of `ν \ λ` according to `μ`, in row-major lexicographic order.
pub fn enumerate_fillings(pt: &PartitionTriple) -> Vec<FillingMatrix> {
    let mut out = Vec::new();
    Search::new(pt).run(&mut |f| {
        out.push(f.clone());
        true
    });
    out
}

/// `c_{λ,μ}^ν`, the number of fillings.
pub fn lr_coefficient(pt: &PartitionTriple) -> Result<u64, LrError> {
    let mut count: u64 = 0;
    let mut overflow = false;
    Search::new(pt).run(&mut |_| match count.checked_add(1) {
        Some(c) => {
            count = c;
            true
        }
        None => {
            overflow = true;
            false
        }
    });
    if overflow {
        Err(LrError::Overflow)
    } else {
        Ok(count)
    }
}

/// True iff `c_{λ,μ}^ν > 0`; stops at the first filling.
pub fn lr_positive(pt: &PartitionTriple) -> bool {
    let mut found = false;
    Search::new(pt).run(&mut |_| {
        found = true;
        false
    });
    found
}

/// The coefficient `c^{(n)}(I, J, K)` of a tilde-convention triple.
pub fn lr_of_triple(t: &HornTriple) -> Result<u64, LrError> {
    lr_coefficient(&t.phi())
}

/// Membership in `Λ^n_r`: the size condition, `ν_1 ≤ n - r` and a nonzero
/// coefficient.
pub fn lambda_membership(pt: &PartitionTriple, n: usize) -> bool {
    let r = pt.len();
    if r > n {
        return false;
    }
    let sizes = pt.lambda.size() + pt.mu.size() == pt.nu.size();
    let width = pt.nu.parts().first().is_none_or(|&nu1| nu1 <= n - r);
    sizes && width && lr_positive(pt)
}

/// `(λ̃, μ̃, ν̃)`: remove one box from each of the first `a` rows of `λ`, the
/// first `b` rows of `μ` and the first `a + b` rows of `ν`.
pub fn reduce_partitions(pt: &PartitionTriple, a: usize, b: usize) -> Result<PartitionTriple, LrError> {
    let r = pt.len();
    let c = a + b;
    let fail = || LrError::NotReducible {
        a,
        b,
        pt: pt.clone(),
    };
    if c > r {
        return Err(fail());
    }
    let shrink = |p: &Partition, rows: usize| -> Result<Partition, LrError> {
        let parts = p
            .parts()
            .iter()
            .enumerate()
            .map(|(idx, &x)| if idx < rows { x.checked_sub(1) } else { Some(x) })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(fail)?;
        Partition::new(parts).map_err(|_| fail())
    };
    Ok(PartitionTriple {
        lambda: shrink(&pt.lambda, a)?,
        mu: shrink(&pt.mu, b)?,
        nu: shrink(&pt.nu, c)?,
    })
}

/// Sends a filling of the reduced shape to one of the unreduced shape by
/// adding one letter `k` to row `k + a`, for `1 ≤ k ≤ b`.
pub fn filling_map(ft: &FillingMatrix, a: usize, b: usize) -> Result<FillingMatrix, LrError> {
    let r = ft.r();
    if a + b > r {
        return Err(LrError::ShiftOutOfRange { a, b, r });
    }
    let mut f = ft.clone();
    for k in 1..=b {
        *f.get_mut(k + a, k) += 1;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::horn::{HornTriple, IndexSet};

    fn pt(l: &[usize], m: &[usize], n: &[usize]) -> PartitionTriple {
        PartitionTriple::from_parts(l.to_vec(), m.to_vec(), n.to_vec()).unwrap()
    }

    #[test]
    fn single_box_filling() {
        let fs = enumerate_fillings(&pt(&[1, 0], &[1, 0], &[1, 1]));
        assert_eq!(fs, vec![FillingMatrix::from_rows(vec![vec![0], vec![1, 0]]).unwrap()]);
    }

    #[test]
    fn empty_mu_gives_one_zero_filling() {
        for lam in [vec![0, 0, 0], vec![3, 1, 0], vec![5, 5, 2]] {
            let p = PartitionTriple::from_parts(lam.clone(), vec![0; 3], lam).unwrap();
            assert_eq!(enumerate_fillings(&p), vec![FillingMatrix::zero(3)]);
        }
    }

    #[test]
    fn r3_family_fillings_parametrized_by_f21() {
        for m in 1..=6 {
            for l in 1..=m {
                let p = pt(&[m + l - 2, m - 1, 0], &[m + l - 2, m - 1, 0], &[2 * m + l - 3, m + l - 2, m - 1]);
                let fs = enumerate_fillings(&p);
                assert_eq!(fs.len(), l);
                for (f21, f) in fs.iter().enumerate() {
                    assert_eq!(f.get(1, 1), m - 1);
                    assert_eq!(f.get(2, 1), f21);
                    assert_eq!(f.get(2, 2), l - 1 - f21);
                    assert_eq!(f.get(3, 1), l - 1 - f21);
                    assert_eq!(f.get(3, 2), m - l + f21);
                    assert_eq!(f.get(3, 3), 0);
                    assert!(f.is_valid_for(&p));
                }
            }
        }
    }

    #[test]
    fn classic_values() {
        // c_{21,21}^{321} = 2
        assert_eq!(lr_coefficient(&pt(&[2, 1, 0], &[2, 1, 0], &[3, 2, 1])).unwrap(), 2);
        assert_eq!(lr_of_triple(&HornTriple::diagonal(IndexSet::new(6, vec![2, 4, 6]).unwrap())).unwrap(), 2);
        assert_eq!(lr_of_triple(&HornTriple::diagonal(IndexSet::initial(4, 4))).unwrap(), 1);
        assert_eq!(
            lr_of_triple(&HornTriple::from_lists(3, &[2], &[2], &[3]).unwrap()).unwrap(),
            1
        );
        // λ ⊄ ν
        assert_eq!(lr_coefficient(&pt(&[2, 1], &[0, 0], &[3, 0])).unwrap(), 0);
        assert_eq!(lr_coefficient(&pt(&[2, 0], &[1, 0], &[2, 1])).unwrap(), 1);
    }

    #[test]
    fn membership_examples() {
        assert!(lambda_membership(&pt(&[0, 0], &[0, 0], &[0, 0]), 2));
        assert!(lambda_membership(&pt(&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]), 7));
        assert!(!lambda_membership(&pt(&[0], &[0], &[1]), 4));
        // ν_1 too wide for n
        assert!(!lambda_membership(&pt(&[1], &[1], &[2]), 2));
        assert!(lambda_membership(&pt(&[1], &[1], &[2]), 3));
    }

    #[test]
    fn filling_map_basics() {
        let f = FillingMatrix::from_rows(vec![vec![2], vec![1, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(filling_map(&f, 1, 0).unwrap(), f);
        let g = filling_map(&f, 0, 1).unwrap();
        assert_eq!(g.get(1, 1), 3);
        let h = filling_map(&f, 1, 2).unwrap();
        assert_eq!(h.get(2, 1), 2);
        assert_eq!(h.get(3, 2), 2);
        assert!(matches!(filling_map(&f, 2, 2), Err(LrError::ShiftOutOfRange { .. })));
    }

    #[test]
    fn reduce_partitions_rejects_negative_parts() {
        let p = pt(&[1, 0], &[0, 0], &[1, 0]);
        assert!(reduce_partitions(&p, 2, 0).is_err());
        let q = reduce_partitions(&p, 1, 0).unwrap();
        assert_eq!(q, pt(&[0, 0], &[0, 0], &[0, 0]));
    }
}
