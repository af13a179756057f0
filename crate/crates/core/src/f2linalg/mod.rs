//! Exact linear algebra over F₂ and over Z/2^n.

mod bits;
mod modular;
pub mod naive;

pub use bits::{BitMatrix, BitVec};
pub use modular::{composite_is_zero, homology_group_2n, Abelian2Group, IntMatrix2n};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("composite of consecutive differentials is nonzero")]
    CompositeNonzero,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("entry ({row},{col}) does not define a homomorphism between its cyclic summands")]
    IllDefined { row: usize, col: usize },
}

pub fn rank(m: &BitMatrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &BitMatrix) -> Vec<BitVec> {
    m.kernel_basis()
}

/// dim ker(d_out) − rank(d_in) for `· --d_in--> V --d_out--> ·`.
pub fn homology_dim(d_in: &BitMatrix, d_out: &BitMatrix) -> Result<usize, LinalgError> {
    if d_in.rows() != d_out.cols() {
        return Err(LinalgError::Shape(format!(
            "d_in is {}x{}, d_out is {}x{}",
            d_in.rows(),
            d_in.cols(),
            d_out.rows(),
            d_out.cols()
        )));
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(LinalgError::CompositeNonzero);
    }
    Ok(d_out.cols() - d_out.rank() - d_in.rank())
}
