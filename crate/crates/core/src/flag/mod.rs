//! Exact model of projections and flags in `M_N` over the rationals.
//!
//! A projection is its range, a [`Subspace`] of `Q^N`; its trace is
//! `dim / N`. Meets and joins are intersections and sums, orthogonal
//! complements use the standard inner product.

pub mod chain;
pub mod construct;
pub mod dump;
pub mod linalg;
pub mod map;
pub mod subspace;
pub mod witness;

use thiserror::Error;

use crate::horn::HornTriple;
use crate::reduce::ReductionWitness;

pub use chain::{refine_superflag, Flag};
pub use construct::{almost_invariant, construct_three, ConstructCase};
pub use dump::WitnessDump;
pub use linalg::{Matrix, Q};
pub use map::{complementary_idempotents, range_of_product, LinearMap};
pub use subspace::{Subspace, Trace};
pub use witness::{
    base_witness, check_general_position, lift_witness, min_dimension, random_wheel_configuration,
    verify_pn, verify_wheel, wheel_construction, witness_pn, Check, FlagTriple, PnReport, WheelOutput,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlagError {
    #[error("ambient dimensions differ: {0} and {1}")]
    AmbientMismatch(usize, usize),
    #[error("not representable at this dimension: {0}")]
    Quantization(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("subspace is not contained in the cut-down space")]
    NotContained,
    #[error("degenerate configuration: {0}")]
    Degenerate(&'static str),
    #[error("not a flag: {0}")]
    NotAFlag(String),
    #[error("no witness construction for {0}")]
    Unsupported(HornTriple),
    #[error("{0} is not a reduction witness for {1}")]
    InvalidWitness(ReductionWitness, HornTriple),
    #[error("general position fails: {0}")]
    GeneralPosition(String),
}
