//! Exact scalars, dense polynomials and truncated power series.

mod poly;
mod quad;
mod scalar;
mod series;

pub use poly::{DynPoly, Poly, PolyDisplay, PolyOp};
pub use quad::QuadScalar;
pub use scalar::{int, rat, rational_from_json, rational_to_json, Rational, Scalar, ScalarField, ToFloat};
pub use series::Series;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("series has zero constant term and is not invertible")]
    NotInvertible,
    #[error("inner series of a composition must have zero constant term")]
    CompositionUndefined,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("cannot mix scalar fields {0} and {1} without promotion")]
    MixedFields(ScalarField, ScalarField),
    #[error("malformed JSON: {0}")]
    Json(String),
}
