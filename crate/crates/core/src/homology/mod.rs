//! Free chain complexes over `Q[Z^m]`, twisted Betti numbers, and homology of
//! the cover associated with a map onto `Z`.

mod betti;
mod complex;
mod cover;
mod kernel;

pub use betti::{generic_ranks, kunneth_convolution, twisted_betti, BettiProfile};
pub use complex::{circle_complex, presentation_complex, tensor_all, tensor_complex, TwistedComplex};
pub use cover::{finite_cover_oracle, first_betti, reidemeister_schreier, CoverReport};
pub use kernel::{
    kernel_homology_univariate, window_homology, window_memory_estimate, window_slope, HomologyKind, KernelDegree,
    KernelHomologyReport, WindowRow, DEFAULT_WINDOW_MEMORY,
};

use thiserror::Error;

use crate::fox::FoxError;
use crate::laurent::LaurentError;
use crate::presentation::PresentationError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("d_{degree} d_{} is not zero", degree + 1)]
    NotAComplex { degree: usize },
    #[error("character has {got} coordinates, complex has {expected} variables")]
    CharacterDimension { expected: usize, got: usize },
    #[error("expected a univariate complex, got {0} variables")]
    NotUnivariate(usize),
    #[error("window truncation supports 1 or 2 variables, got {0}")]
    UnsupportedWindowRank(usize),
    #[error("window radius must be at least 1")]
    BadRadius,
    #[error("window of radius {radius} needs about {estimate} bytes, ceiling is {ceiling}")]
    WindowTooLarge { radius: usize, estimate: u64, ceiling: u64 },
    #[error("no generator image is a unit mod {index}")]
    NoTransversal { index: usize },
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Fox(#[from] FoxError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

impl HomologyError {
    pub fn code(&self) -> &'static str {
        match self {
            HomologyError::Shape(_) => "Shape",
            HomologyError::NotAComplex { .. } => "NotAComplex",
            HomologyError::CharacterDimension { .. } => "CharacterDimension",
            HomologyError::NotUnivariate(_) => "NotUnivariate",
            HomologyError::UnsupportedWindowRank(_) => "UnsupportedWindowRank",
            HomologyError::BadRadius => "BadRadius",
            HomologyError::WindowTooLarge { .. } => "WindowTooLarge",
            HomologyError::NoTransversal { .. } => "NoTransversal",
            HomologyError::Laurent(e) => e.code(),
            HomologyError::Fox(e) => e.code(),
            HomologyError::Presentation(e) => e.code(),
        }
    }
}
