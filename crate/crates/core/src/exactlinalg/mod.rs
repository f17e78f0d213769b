//! Exact linear algebra over ℚ and prime fields.

pub mod field;
pub mod map;
pub mod rank;
pub mod space;
pub mod sparse;
pub mod tensor;

pub use field::{FieldElement, FieldSpec};
pub use map::{flip, koszul_extend, tensor_map, FlipKind, LinearMap, Side};
pub use rank::{inverse, rank_decomposition, solve, Echelon, Insertion, RankDecomposition};
pub use space::BasedSpace;
pub use sparse::SparseVec;
pub use tensor::{shape, GradedVec, LegOp, MapFamily, Shape, SingleMap};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("denominator of {value} vanishes modulo {p}")]
    DenominatorVanishes { value: String, p: u64 },
    #[error("unrecognised field `{0}`")]
    BadFieldSpec(String),
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("scalars from different fields")]
    FieldMismatch,
    #[error("arity {0} is not available")]
    ArityUnavailable(u32),
}
