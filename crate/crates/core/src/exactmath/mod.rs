//! Exact rational arithmetic: polynomials, root-location certificates,
//! matrices and the Jordan–Chevalley split.

mod factor;
mod jordan;
mod matrix;
mod poly;
mod rational;
mod roots;

pub use factor::{factor_over_q, MAX_FACTOR_DEGREE};
pub use jordan::jordan_chevalley;
pub use matrix::RationalMatrix;
pub use poly::Polynomial;
pub use rational::{dot, fmt_rational, ser_q, fmt_vector, is_zero_vec, one, parse_rational, q, qr, to_f64, zero, Q};
pub use roots::{
    all_roots_purely_imaginary, count_distinct_real_roots, root_location_certificate, sturm_sequence,
    Bound, RootLocationCertificate,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("matrix is not square ({rows}×{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("the zero polynomial has no root certificate")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
}

/// Characteristic polynomial of a square matrix.
pub fn charpoly(m: &RationalMatrix) -> Result<Polynomial, MathError> {
    m.charpoly()
}
