use thiserror::Error;

use crate::linalg::Field;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("functional is not convolution invertible")]
    NotConvolutionInvertible,
    #[error("associator has no convolution inverse")]
    MissingPhiInverse,
    #[error("no antipode attached to the algebra")]
    MissingAntipode,
    #[error("chi^S formula disagrees with the defining equations at {0}")]
    ChiSFormulaMismatch(String),
    #[error("explicit dual action formula disagrees with the composite at {0}")]
    FourierFormulaMismatch(String),
    #[error("expected a one dimensional space, got dimension {0}")]
    DimensionNotOne(usize),
    #[error("element is not group-like: {0}")]
    NotGroupLike(String),
    #[error("map is not bijective: {0}")]
    NotBijective(String),
    #[error("zeta does not factor as mu (x) id: {0}")]
    ZetaNotOfProductForm(String),
    #[error("linear system has no solution: {0}")]
    EmptySolutionSpace(String),
    #[error("not an ordinary Hopf algebra: {0}")]
    NotAHopfAlgebra(String),
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("field has characteristic two")]
    CharTwo,
    #[error("bad root of unity: {0}")]
    BadRoot(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("dimension {0} exceeds COQUASI_MAX_DIM={1}")]
    TooLarge(usize, usize),
    #[error("io error: {0}")]
    Io(String),
}
