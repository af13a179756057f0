//! Mod-2 motivic cohomology of the supported base schemes.
//!
//! Explicit field models carry monomial bases `τ^k · m` where `m` runs over
//! a Milnor K-theory basis built from the degree-one symbols ρ = {−1}, u
//! and π. Rings of S-integers are represented only by dimension data.

mod model;
mod monomial;
pub mod numberring;
mod ops;
mod uct;

pub use model::{BaseModel, Class4, NumberRingParams};
pub use monomial::{basis, milnor_basis, multiply, F2Sum, GradedPiece, Monomial, PieceData};
pub use numberring::DimRange;
pub use ops::{apply_op, steenrod_apply, steenrod_relation_failures, Op, Prim};
pub use uct::{coeff_map, CoeffMap, generator_level, op_matrix, piece_levels, uct_kind, MapClass, UctKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MotivicError {
    #[error("cannot parse base model `{0}`: {1}")]
    Parse(String, String),
    #[error("invalid number ring parameters: {0}")]
    InvalidParams(String),
    #[error("negative τ-power requested on a dimension-only model")]
    NegativeTauOnNumberRing,
    #[error("{model} has no element bases; only dimension data is available")]
    DimensionOnly { model: String },
    #[error("the 2-rank of ker ρ^{i} on h^{{{p},{q}}} is not determined (range {lo}..={hi})")]
    UnknownKernel { i: u32, p: i64, q: i64, lo: u32, hi: u32 },
    #[error("operation {op} expects coefficient level {expected}, got {got}")]
    LevelMismatch { op: String, expected: u32, got: u32 },
    #[error("operation {0} is not homogeneous")]
    Inhomogeneous(String),
}
