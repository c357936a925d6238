use thiserror::Error;

use crate::certify::CertifyError;
use crate::constructions::ConstructionError;
use crate::fox::FoxError;
use crate::homology::HomologyError;
use crate::jump_loci::JumpLociError;
use crate::laurent::LaurentError;
use crate::presentation::PresentationError;

/// Any error from this crate, with a stable machine-readable code.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Fox(#[from] FoxError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    JumpLoci(#[from] JumpLociError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Presentation(e) => e.code(),
            Error::Laurent(e) => e.code(),
            Error::Fox(e) => e.code(),
            Error::Homology(e) => e.code(),
            Error::JumpLoci(e) => e.code(),
            Error::Certify(e) => e.code(),
            Error::Construction(e) => e.code(),
        }
    }
}
