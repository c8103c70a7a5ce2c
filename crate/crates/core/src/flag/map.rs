//! Linear maps of `Q^N` acting on subspaces.

use super::linalg::{Matrix, Q};
use super::subspace::Subspace;
use super::FlagError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap(pub Matrix);

impl LinearMap {
    pub fn identity(n: usize) -> Self {
        LinearMap(Matrix::identity(n))
    }

    pub fn zero(n: usize) -> Self {
        LinearMap(Matrix::zeros(n, n))
    }

    /// Orthogonal projection onto `s`.
    pub fn projection(s: &Subspace) -> Self {
        LinearMap(s.projection_matrix())
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap(self.0.mul(&other.0))
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::span(self.dim(), self.0.nullspace())
    }

    /// Support projection, `(ker X)^⊥`: the row space.
    pub fn domain(&self) -> Subspace {
        Subspace::span(self.dim(), self.0.row_vecs())
    }

    pub fn range(&self) -> Subspace {
        Subspace::column_space(&self.0)
    }

    /// `X^♯(p)`: the span of `X b` over a basis of `p`.
    pub fn sharp(&self, p: &Subspace) -> Result<Subspace, FlagError> {
        if p.ambient() != self.dim() {
            return Err(FlagError::AmbientMismatch(self.dim(), p.ambient()));
        }
        Ok(Subspace::span(
            self.dim(),
            p.basis().iter().map(|v| self.0.apply(v)).collect(),
        ))
    }

    pub fn is_idempotent(&self) -> bool {
        self.0.mul(&self.0) == self.0
    }

    /// Moore–Penrose inverse from the factorization `X = C R`, with `R` the
    /// nonzero rows of the reduced echelon form and `C` the pivot columns:
    /// `X⁺ = R^T (R R^T)^{-1} (C^T C)^{-1} C^T`.
    pub fn partial_inverse(&self) -> LinearMap {
        let n = self.dim();
        let mut reduced = self.0.clone();
        let pivots = reduced.rref();
        if pivots.is_empty() {
            return LinearMap::zero(n);
        }
        let r = Matrix::from_rows(reduced.row_vecs()[..pivots.len()].to_vec(), self.0.cols());
        let c = Matrix::from_columns(
            &pivots.iter().map(|&p| self.0.column(p)).collect::<Vec<_>>(),
            n,
        );
        let rrt_inv = r.mul(&r.transpose()).inverse().expect("full row rank");
        let ctc_inv = c.transpose().mul(&c).inverse().expect("full column rank");
        LinearMap(r.transpose().mul(&rrt_inv).mul(&ctc_inv).mul(&c.transpose()))
    }
}

/// `ran(P Q)` for orthogonal projections onto `p` and `q`.
pub fn range_of_product(p: &Subspace, q: &Subspace) -> Result<Subspace, FlagError> {
    if p.ambient() != q.ambient() {
        return Err(FlagError::AmbientMismatch(p.ambient(), q.ambient()));
    }
    LinearMap::projection(p).sharp(q)
}

/// The pair `E(e1, e2)`, `E(e2, e1)`: on `η + ξ1 + ξ2 + ζ` with
/// `η ∈ (e1 ∨ e2)^⊥`, `ξ_j ∈ e_j ⊖ (e1 ∧ e2)` and `ζ ∈ e1 ∧ e2`,
/// `E_i` returns `ξ_i + ζ`.
pub fn complementary_idempotents(e1: &Subspace, e2: &Subspace) -> Result<(LinearMap, LinearMap), FlagError> {
    let n = e1.ambient();
    let m = e1.meet(e2)?;
    let j = e1.join(e2)?;
    let eta = j.orthocomplement();
    let xi1 = e1.minus(&m)?;
    let xi2 = e2.minus(&m)?;
    let blocks = [&eta, &xi1, &xi2, &m];
    let columns: Vec<Vec<Q>> = blocks.iter().flat_map(|b| b.basis().iter().cloned()).collect();
    let basis = Matrix::from_columns(&columns, n);
    let inv = basis.inverse().ok_or(FlagError::Degenerate("decomposition basis is singular"))?;
    let diagonal = |keep: [bool; 4]| {
        let mut d = Matrix::zeros(n, n);
        let mut at = 0;
        for (block, k) in blocks.iter().zip(keep) {
            for _ in 0..block.dim() {
                if k {
                    d[(at, at)] = num_traits::One::one();
                }
                at += 1;
            }
        }
        LinearMap(basis.mul(&d).mul(&inv))
    };
    Ok((diagonal([false, true, false, true]), diagonal([false, false, true, true])))
}
