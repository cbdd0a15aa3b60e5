use thiserror::Error;

/// Errors raised by the polynomial substrate and the covariant constructions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("polynomial is not bihomogeneous of bidegree ({edeg}, {xdeg}): {poly}")]
    NotBihomogeneous { edeg: u32, xdeg: u32, poly: String },

    #[error("polynomial is not a binary form of degree {degree}: {poly}")]
    NotBinaryForm { degree: u32, poly: String },

    #[error("form is not annihilated by the trace operator: {0}")]
    NotHarmonic(String),

    #[error("contraction order {i} out of range 0..={max}")]
    OrderOutOfRange { i: u32, max: u32 },

    #[error("matrix determinant is {0}, expected 1")]
    NotUnimodular(String),

    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeExceeds { degree: u32, cap: u32 },

    #[error("the linear form h must be nonzero")]
    ZeroLinearForm,

    #[error("variable block {0} is reserved for internal polarization")]
    ReservedBlock(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A step that theory guarantees failed; indicates a bug rather than bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
