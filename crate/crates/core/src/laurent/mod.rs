//! Exact Laurent polynomials over `Q`, matrices over them, ranks at
//! characters, minors, and Smith form in one variable.
//!
//! Every matrix produced by Fox calculus has integer entries, so ranks and
//! dimensions over `Q` coincide with those over `C`. Nothing here touches
//! floating point.

mod character;
pub mod linalg;
mod matrix;
mod poly;
mod smith;
mod text;

pub use character::Character;
pub use matrix::{LaurentMatrix, DEFAULT_MINOR_CEILING};
pub use poly::{Exponents, LaurentPolynomial};
pub(crate) use poly::rat;
pub use smith::{smith_univariate, SmithFormUnivariate};
pub use text::parse_polynomial;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("character coordinate {0} is zero")]
    ZeroCoordinate(usize),
    #[error("cannot substitute the generic point; use a generic rank instead")]
    GenericNotEvaluable,
    #[error("{count} minors exceed the ceiling of {ceiling}")]
    TooManyMinors { count: u128, ceiling: u128 },
    #[error("expected a univariate matrix, got {0} variables")]
    NotUnivariate(usize),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

impl LaurentError {
    pub fn code(&self) -> &'static str {
        match self {
            LaurentError::VariableCountMismatch { .. } => "VariableCountMismatch",
            LaurentError::ZeroCoordinate(_) => "ZeroCoordinate",
            LaurentError::GenericNotEvaluable => "GenericNotEvaluable",
            LaurentError::TooManyMinors { .. } => "TooManyMinors",
            LaurentError::NotUnivariate(_) => "NotUnivariate",
            LaurentError::Shape(_) => "Shape",
            LaurentError::Parse { .. } => "Parse",
        }
    }
}

/// Evaluates at a character, rejecting the generic point.
pub fn evaluate(p: &LaurentPolynomial, rho: &Character) -> Result<num_rational::BigRational, LaurentError> {
    match rho {
        Character::Rational(c) => p.evaluate(c),
        Character::Generic => Err(LaurentError::GenericNotEvaluable),
    }
}
