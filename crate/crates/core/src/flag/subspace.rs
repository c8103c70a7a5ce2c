//! Subspaces of `Q^N` in canonical form, standing in for projections of
//! `M_N` with the normalized trace `dim / N`.

use num_rational::Ratio;
use num_traits::Zero;
use rand::Rng;

use super::linalg::{Matrix, Q};
use super::FlagError;

/// Normalized trace `dim / N`.
pub type Trace = Ratio<i64>;

/// A subspace of `Q^N`, stored as the nonzero rows of its reduced row
/// echelon basis; equal subspaces have equal bases.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, Matrix::identity(ambient).row_vecs())
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<Q>>) -> Self {
        Subspace {
            ambient,
            basis: Matrix::from_rows(vectors, ambient).row_basis(),
        }
    }

    /// Span of the columns of `m`.
    pub fn column_space(m: &Matrix) -> Self {
        Subspace {
            ambient: m.rows(),
            basis: m.transpose().row_basis(),
        }
    }

    /// A random subspace of dimension `dim` with small integer spanning
    /// vectors; redraws until the vectors are independent.
    pub fn random<R: Rng>(ambient: usize, dim: usize, rng: &mut R) -> Self {
        assert!(dim <= ambient);
        loop {
            let s = Self::span(ambient, Matrix::random(dim, ambient, 3, rng).row_vecs());
            if s.dim() == dim {
                return s;
            }
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.basis.clone(), self.ambient)
    }

    pub fn trace(&self) -> Trace {
        Trace::new(self.dim() as i64, self.ambient as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn check(&self, other: &Subspace) -> Result<(), FlagError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(FlagError::AmbientMismatch(self.ambient, other.ambient))
        }
    }

    pub fn contains_vector(&self, v: &[Q]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows, self.ambient).rank() == self.dim()
    }

    /// `self ≤ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains_vector(v))
    }

    /// Sum of subspaces.
    pub fn join(&self, other: &Subspace) -> Result<Subspace, FlagError> {
        self.check(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(Self::span(self.ambient, rows))
    }

    /// Intersection, from the kernel of `[P; -Q]^T`: `Σ c_i p_i = Σ d_j q_j`.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace, FlagError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let a = self.dim();
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().map(|v| v.iter().map(|x| -x).collect()));
        let stacked = Matrix::from_rows(rows, self.ambient);
        let p = self.basis_matrix();
        let vectors = stacked
            .transpose()
            .nullspace()
            .into_iter()
            .map(|c| p.transpose().apply(&c[..a]))
            .collect();
        Ok(Self::span(self.ambient, vectors))
    }

    /// `dim(self ∧ other)` from `dim(self ∨ other)`, without a basis.
    pub fn meet_dim(&self, other: &Subspace) -> Result<usize, FlagError> {
        self.check(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(self.dim() + other.dim() - Matrix::from_rows(rows, self.ambient).rank())
    }

    /// Orthogonal complement for the standard inner product.
    pub fn orthocomplement(&self) -> Subspace {
        if self.is_zero() {
            return Self::full(self.ambient);
        }
        Self::span(self.ambient, self.basis_matrix().nullspace())
    }

    /// `self ⊖ other = self ∧ other^⊥`, the orthogonal complement of `other`
    /// inside `self`; `self - other` when `other ≤ self`.
    pub fn minus(&self, other: &Subspace) -> Result<Subspace, FlagError> {
        self.check(other)?;
        self.meet(&other.orthocomplement())
    }

    /// Span of the first `k` canonical basis rows.
    pub fn first(&self, k: usize) -> Result<Subspace, FlagError> {
        if k > self.dim() {
            return Err(FlagError::Quantization(format!(
                "need a {k}-dimensional piece of a {}-dimensional subspace",
                self.dim()
            )));
        }
        Ok(Subspace {
            ambient: self.ambient,
            basis: Matrix::from_rows(self.basis[..k].to_vec(), self.ambient).row_basis(),
        })
    }

    /// Enlarges `self` to dimension `dim` inside `within`, adding the
    /// canonical rows of `within` in order.
    pub fn extend_within(&self, within: &Subspace, dim: usize) -> Result<Subspace, FlagError> {
        self.check(within)?;
        if !self.is_subspace_of(within) || dim > within.dim() || dim < self.dim() {
            return Err(FlagError::Quantization(format!(
                "cannot extend a {}-dimensional subspace to {dim} inside {} dimensions",
                self.dim(),
                within.dim()
            )));
        }
        let mut current = self.clone();
        for v in &within.basis {
            if current.dim() == dim {
                break;
            }
            if !current.contains_vector(v) {
                let mut rows = current.basis.clone();
                rows.push(v.clone());
                current = Self::span(self.ambient, rows);
            }
        }
        Ok(current)
    }

    /// `B^T (B B^T)^{-1} B` for a basis matrix `B`.
    pub fn projection_matrix(&self) -> Matrix {
        if self.is_zero() {
            return Matrix::zeros(self.ambient, self.ambient);
        }
        let b = self.basis_matrix();
        let gram_inv = b.mul(&b.transpose()).inverse().expect("basis rows are independent");
        b.transpose().mul(&gram_inv).mul(&b)
    }

    /// Coordinates of the vectors of `sub ≤ self` in the canonical basis of `self`.
    pub fn coordinates_of(&self, sub: &Subspace) -> Result<Subspace, FlagError> {
        self.check(sub)?;
        let b = self.basis_matrix();
        let pivots = pivot_columns(&self.basis);
        let mut coords = Vec::with_capacity(sub.dim());
        for v in &sub.basis {
            // reduced echelon rows make the pivot entries the coordinates
            let c: Vec<Q> = pivots.iter().map(|&p| v[p].clone()).collect();
            if b.transpose().apply(&c) != *v {
                return Err(FlagError::NotContained);
            }
            coords.push(c);
        }
        Ok(Subspace::span(self.dim(), coords))
    }

    /// Inverse of [`Subspace::coordinates_of`]: the vectors `Σ c_i b_i`.
    pub fn from_coordinates(&self, coords: &Subspace) -> Result<Subspace, FlagError> {
        if coords.ambient != self.dim() {
            return Err(FlagError::AmbientMismatch(self.dim(), coords.ambient));
        }
        let bt = self.basis_matrix().transpose();
        Ok(Subspace::span(
            self.ambient,
            coords.basis.iter().map(|c| bt.apply(c)).collect(),
        ))
    }
}

fn pivot_columns(rows: &[Vec<Q>]) -> Vec<usize> {
    rows.iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::linalg::q;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s(ambient: usize, rows: &[&[i64]]) -> Subspace {
        Subspace::span(ambient, rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn meet_and_join_small() {
        let a = s(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = s(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.meet(&b).unwrap(), s(3, &[&[0, 1, 0]]));
        assert_eq!(a.join(&b).unwrap(), Subspace::full(3));
        assert_eq!(a.meet(&a).unwrap(), a);
        assert!(a.meet(&a.orthocomplement()).unwrap().is_zero());
        assert_eq!(a.meet_dim(&b).unwrap(), 1);
        assert_eq!(a.join(&Subspace::zero(3)).unwrap(), a);
    }

    #[test]
    fn generic_meet_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (n, k) in [(6, 4), (7, 3), (8, 5)] {
            let a = Subspace::random(n, k, &mut rng);
            let b = Subspace::random(n, k, &mut rng);
            assert_eq!(a.meet(&b).unwrap().dim(), (2 * k).saturating_sub(n));
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let big = Subspace::random(7, 5, &mut rng);
        let small = big.first(2).unwrap();
        let c = big.coordinates_of(&small).unwrap();
        assert_eq!(c.ambient(), 5);
        assert_eq!(big.from_coordinates(&c).unwrap(), small);
        assert!(matches!(
            small.coordinates_of(&big),
            Err(FlagError::NotContained)
        ));
    }

    #[test]
    fn projection_matrix_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = Subspace::random(5, 2, &mut rng);
        let p = a.projection_matrix();
        assert_eq!(p.mul(&p), p);
        assert_eq!(p.transpose(), p);
        assert_eq!(Subspace::column_space(&p), a);
    }
}
