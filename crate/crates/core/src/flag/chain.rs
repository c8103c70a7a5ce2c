//! Full flags of `Q^N` and refinement of superflags.

use rand::Rng;

use super::linalg::{Matrix, Q};
use super::subspace::Subspace;
use super::FlagError;

/// Complete flag `V_0 ⊂ V_1 ⊂ … ⊂ V_N`, stored as an ordered basis; `V_d`
/// is the span of the first `d` vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    ambient: usize,
    vectors: Vec<Vec<Q>>,
}

impl Flag {
    /// The vectors must form a basis of `Q^N`.
    pub fn from_basis(ambient: usize, vectors: Vec<Vec<Q>>) -> Result<Self, FlagError> {
        if vectors.len() != ambient || Matrix::from_rows(vectors.clone(), ambient).rank() != ambient {
            return Err(FlagError::NotAFlag("vectors do not form a basis".into()));
        }
        Ok(Flag { ambient, vectors })
    }

    pub fn standard(ambient: usize) -> Self {
        Flag {
            ambient,
            vectors: Matrix::identity(ambient).row_vecs(),
        }
    }

    /// Flag of a random invertible integer matrix.
    pub fn random<R: Rng>(ambient: usize, rng: &mut R) -> Self {
        loop {
            let m = Matrix::random(ambient, ambient, 3, rng);
            if m.rank() == ambient {
                return Flag {
                    ambient,
                    vectors: m.row_vecs(),
                };
            }
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn vectors(&self) -> &[Vec<Q>] {
        &self.vectors
    }

    /// `V_d`, of trace `d / N`.
    pub fn level(&self, d: usize) -> Subspace {
        Subspace::span(self.ambient, self.vectors[..d].to_vec())
    }

    /// `e_t` for `t = num / den`; `den` must divide `N`.
    pub fn at(&self, num: usize, den: usize) -> Result<Subspace, FlagError> {
        if den == 0 || !self.ambient.is_multiple_of(den) || num > den {
            return Err(FlagError::Quantization(format!(
                "level {num}/{den} is not representable in dimension {}",
                self.ambient
            )));
        }
        Ok(self.level(num * (self.ambient / den)))
    }
}

/// Greedy basis completion: given nested `chain[d]` with `dim chain[d] ≥ d`
/// for `d = 0..=N`, returns a flag with `V_d ≤ chain[d]`.
pub fn refine_superflag(chain: &[Subspace]) -> Result<Flag, FlagError> {
    let Some(top) = chain.last() else {
        return Err(FlagError::NotAFlag("empty chain".into()));
    };
    let ambient = top.ambient();
    if chain.len() != ambient + 1 {
        return Err(FlagError::NotAFlag(format!(
            "chain has {} levels, expected {}",
            chain.len(),
            ambient + 1
        )));
    }
    for (d, level) in chain.iter().enumerate() {
        if level.ambient() != ambient || level.dim() < d {
            return Err(FlagError::NotAFlag(format!("level {d} has dimension {}", level.dim())));
        }
        if d > 0 && !chain[d - 1].is_subspace_of(level) {
            return Err(FlagError::NotAFlag(format!("level {} is not inside level {d}", d - 1)));
        }
    }
    let mut vectors: Vec<Vec<Q>> = Vec::with_capacity(ambient);
    let mut current = Subspace::zero(ambient);
    for level in &chain[1..] {
        let v = level
            .basis()
            .iter()
            .find(|v| !current.contains_vector(v))
            .expect("dimension bound leaves a new vector")
            .clone();
        vectors.push(v);
        current = Subspace::span(ambient, vectors.clone());
    }
    Ok(Flag { ambient, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn refining_a_flag_returns_it() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = Flag::random(5, &mut rng);
        let levels: Vec<Subspace> = (0..=5).map(|d| f.level(d)).collect();
        let g = refine_superflag(&levels).unwrap();
        for d in 0..=5 {
            assert_eq!(g.level(d), f.level(d));
        }
    }

    #[test]
    fn constant_chain() {
        let mut chain = vec![Subspace::zero(4)];
        chain.extend((1..=4).map(|_| Subspace::full(4)));
        assert_eq!(refine_superflag(&chain).unwrap(), Flag::standard(4));
    }

    #[test]
    fn rejects_deficient_chain() {
        let chain = vec![Subspace::zero(2), Subspace::zero(2), Subspace::full(2)];
        assert!(refine_superflag(&chain).is_err());
    }
}
